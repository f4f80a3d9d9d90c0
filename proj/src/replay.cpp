#include "focustree/replay.hpp"

#include "focustree/error.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <sstream>

namespace focustree {

namespace {

constexpr std::array<std::pair<std::string_view, OpKind>, 5> kOps{{
    {"request", OpKind::Request},
    {"resolve", OpKind::Resolve},
    {"compare", OpKind::Compare},
    {"resolve_comparison", OpKind::ResolveComparison},
    {"set_global_level", OpKind::SetGlobalLevel},
}};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string line_prefix(int line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

std::optional<OpKind> parse_op_kind(std::string_view name) {
    for (const auto& [n, k] : kOps)
        if (n == name) return k;
    return std::nullopt;
}

std::string_view to_string(OpKind kind) {
    for (const auto& [n, k] : kOps)
        if (k == kind) return n;
    return "request";
}

bool op_takes_argument(OpKind kind) {
    return kind == OpKind::Request || kind == OpKind::Compare || kind == OpKind::SetGlobalLevel;
}

std::vector<FocusOp> parse_script(std::string_view text) {
    std::vector<FocusOp> ops;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto space = line.find_first_of(" \t");
        const std::string_view name = line.substr(0, space);
        const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
        const auto kind = parse_op_kind(name);
        if (!kind) throw Error(ErrorCode::ParseError, line_prefix(line_no) + "unknown op '" + std::string(name) + "'");
        FocusOp op{*kind, 0, line_no};
        if (op_takes_argument(*kind)) {
            if (rest.empty())
                throw Error(ErrorCode::ParseError, line_prefix(line_no) + std::string(name) + " needs an argument");
            const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), op.arg);
            if (ec != std::errc{} || end != rest.data() + rest.size() || op.arg < 0)
                throw Error(ErrorCode::ParseError,
                            line_prefix(line_no) + "expected a non-negative integer, got '" + std::string(rest) + "'");
        } else if (!rest.empty()) {
            throw Error(ErrorCode::ParseError, line_prefix(line_no) + std::string(name) + " takes no argument");
        }
        ops.push_back(op);
    }
    return ops;
}

ExplorationState apply_op(const FocusLayout& layout, const ExplorationState& state, const FocusOp& op) {
    auto node = [&]() -> NodeId {
        if (op.arg < 0 || static_cast<std::uint64_t>(op.arg) >= layout.tree().nodes.size())
            throw Error(ErrorCode::UnknownNode, "no node " + std::to_string(op.arg));
        return static_cast<NodeId>(op.arg);
    };
    switch (op.kind) {
    case OpKind::Request: return layout.request_focus(state, node());
    case OpKind::Resolve: return layout.resolve_focus(state);
    case OpKind::Compare: return layout.compare_focus(state, node());
    case OpKind::ResolveComparison: return layout.resolve_comparison(state);
    case OpKind::SetGlobalLevel:
        if (op.arg > std::numeric_limits<int>::max())
            throw Error(ErrorCode::InvalidLevel, "level " + std::to_string(op.arg) + " is out of range");
        return layout.set_global_level(state, static_cast<int>(op.arg));
    }
    throw Error(ErrorCode::BadRequest, "unsupported op");
}

std::vector<FramePtr> replay(const FocusLayout& layout, const std::vector<FocusOp>& ops) {
    std::vector<FramePtr> frames;
    ExplorationState state = layout.start();
    for (const auto& op : ops) {
        try {
            state = apply_op(layout, state, op);
        } catch (const Error& e) {
            throw Error(e.code(), (op.line > 0 ? line_prefix(op.line) : std::string()) + e.what());
        }
        frames.push_back(state.frame);
    }
    return frames;
}

}  // namespace focustree
