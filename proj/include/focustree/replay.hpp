#pragma once

#include "focustree/focus_layout.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace focustree {

enum class OpKind { Request, Resolve, Compare, ResolveComparison, SetGlobalLevel };

struct FocusOp {
    OpKind kind = OpKind::Request;
    std::int64_t arg = 0;  // node id, or level for SetGlobalLevel
    int line = 0;          // 1-based script line, 0 when not from a script

    bool operator==(const FocusOp&) const = default;
};

std::optional<OpKind> parse_op_kind(std::string_view name);
std::string_view to_string(OpKind kind);
bool op_takes_argument(OpKind kind);

// One op per line: "request N", "resolve", "compare N", "resolve_comparison",
// "set_global_level L". Blank lines and '#' comments are skipped.
// Throws Error{ParseError} naming the line.
std::vector<FocusOp> parse_script(std::string_view text);

// Throws the layout's errors, or Error{UnknownNode, InvalidLevel} for out-of-range arguments.
ExplorationState apply_op(const FocusLayout& layout, const ExplorationState& state, const FocusOp& op);

// Runs `ops` from layout.start() and returns the frame after each op.
// Errors keep their code and gain a "line N: " prefix.
std::vector<FramePtr> replay(const FocusLayout& layout, const std::vector<FocusOp>& ops);

}  // namespace focustree
