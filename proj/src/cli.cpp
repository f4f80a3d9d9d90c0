#include "focustree/cli.hpp"

#include "focustree/embedding_io.hpp"
#include "focustree/error.hpp"
#include "focustree/hierarchy.hpp"
#include "focustree/http_server.hpp"
#include "focustree/json_codec.hpp"
#include "focustree/metrics.hpp"
#include "focustree/replay.hpp"
#include "focustree/synth.hpp"
#include "focustree/tree_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace focustree {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input, output, tree, script, output_dir, format, viewport = "800x800";
    std::string samplers = "sadire,reservoir";
    std::string host = "127.0.0.1";
    double k = 0.0, k_px = 0.0, radius = 0.0, threshold = 0.0;
    int alpha = 1;
    std::size_t pi = 200;
    std::size_t n = 1000, blobs = 4, features = 0;
    std::uint64_t seed = 0;
    bool thumbnails = false;
    int port = 8080;
};

Viewport parse_viewport(const std::string& text) {
    Viewport v;
    char x = 0;
    std::istringstream in(text);
    if (!(in >> v.width_px >> x >> v.height_px) || x != 'x' || !(v.width_px > 0) || !(v.height_px > 0))
        throw Error(ErrorCode::InvalidArgs, "viewport must look like 800x800");
    return v;
}

DataFormat input_format(const Options& o, const std::string& path) {
    if (o.format.empty()) return format_from_path(path);
    const auto f = parse_format(o.format);
    if (!f) throw Error(ErrorCode::InvalidArgs, "unknown format '" + o.format + "' (expected csv or jsonl)");
    return *f;
}

double cell_size(const Options& o, const Dataset& ds) {
    if (o.k_px > 0.0) return o.k_px * parse_viewport(o.viewport).layout_per_pixel(ds.bounds());
    return o.k;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text)) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

int cmd_build(const Options& o, std::ostream& out) {
    const Dataset ds = load_dataset(o.input, input_format(o, o.input));
    BuildConfig config;
    config.grid.cell_size = cell_size(o, ds);
    config.grid.window = o.alpha;
    config.min_cluster_size = o.pi;
    const Tree tree = build_tree(ds, config);
    save_tree(tree, o.output);
    out << "built " << tree.nodes.size() << " nodes, depth " << tree.depth() << ", "
        << tree.root().children.size() << " top-level clusters (k=" << format_double(config.grid.cell_size)
        << ") -> " << o.output << "\n";
    return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const Dataset ds = load_dataset(o.input, input_format(o, o.input));
    const Tree tree = load_tree(o.tree, ds);
    const auto report = validate_tree(tree, ds, tree.config.min_cluster_size);
    for (const auto& v : report.violations) out << "violation node " << v.node << " [" << v.kind << "] " << v.message << "\n";
    out << (report.ok() ? "ok" : "invalid") << ": " << tree.nodes.size() << " nodes, " << report.violations.size()
        << " violations, " << report.collapsed_leaves.size() << " collapsed leaves\n";
    return report.ok() ? kExitOk : kExitData;
}

int cmd_synth(const Options& o, std::ostream& out) {
    SynthConfig c;
    c.n = o.n;
    c.blobs = o.blobs;
    c.seed = o.seed;
    c.feature_dim = o.features;
    c.thumbnails = o.thumbnails;
    const Dataset ds = synthesize(c);
    save_dataset(ds, o.output, input_format(o, o.output));
    out << "wrote " << ds.size() << " points in " << c.blobs << " blobs -> " << o.output << "\n";
    return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
    auto ds = std::make_shared<const Dataset>(load_dataset(o.input, input_format(o, o.input)));
    auto tree = std::make_shared<const Tree>(load_tree(o.tree, *ds));
    const FocusLayout layout(ds, tree, LayoutParams::for_dataset(*ds, parse_viewport(o.viewport)));
    const auto ops = parse_script(read_text(o.script));
    const auto frames = replay(layout, ops);
    fs::create_directories(o.output_dir);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%03zu.json", i + 1);
        write_text(fs::path(o.output_dir) / name, frame_document(*frames[i]));
    }
    out << "replayed " << ops.size() << " ops -> " << o.output_dir << "\n";
    return kExitOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    const Dataset ds = load_dataset(o.input, input_format(o, o.input));
    MetricsConfig c;
    c.grid.cell_size = cell_size(o, ds);
    c.grid.window = o.alpha;
    c.seed = o.seed;
    c.radius = o.radius;
    c.threshold = o.threshold;
    std::vector<std::string> samplers;
    std::stringstream list(o.samplers);
    for (std::string s; std::getline(list, s, ',');)
        if (!s.empty()) samplers.push_back(s);
    const auto reports = evaluate_samplers(ds, samplers, c);
    std::ostringstream csv;
    write_metrics_csv(csv, reports);
    if (o.output.empty() || o.output == "-")
        out << csv.str();
    else
        write_text(o.output, csv.str());
    return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
    ExplorerService service(parse_viewport(o.viewport));
    HttpServer server(service);
    const int port = server.bind(o.host, o.port);
    if (port < 0) throw Error(ErrorCode::IoFailure, "cannot bind " + o.host + ":" + std::to_string(o.port));
    out << "listening on http://" << o.host << ":" << port << "\n" << std::flush;
    return server.run() ? kExitOk : kExitInternal;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgs:
    case ErrorCode::InvalidConfig: return kExitUsage;
    case ErrorCode::BuildFailure: return kExitInternal;
    default: return kExitData;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Hierarchical focus+context exploration of 2D embeddings"};
    app.require_subcommand(1);

    auto add_k = [&](CLI::App* cmd) {
        auto* k = cmd->add_option("--k", o.k, "grid cell size in layout units");
        auto* kpx = cmd->add_option("--k-px", o.k_px, "grid cell size in viewport pixels");
        k->excludes(kpx);
        cmd->add_option("--viewport", o.viewport, "viewport for pixel units, WxH")->capture_default_str();
        cmd->add_option("--alpha", o.alpha, "redundancy window in cells")->capture_default_str();
    };

    auto* build = app.add_subcommand("build", "build a tree file from a dataset");
    build->add_option("--input", o.input)->required();
    build->add_option("--format", o.format, "csv or jsonl (default: from extension)");
    add_k(build);
    build->add_option("--pi", o.pi, "minimum cluster size")->capture_default_str();
    build->add_option("--output", o.output)->required();

    auto* validate = app.add_subcommand("validate", "check a tree file against its dataset");
    validate->add_option("--tree", o.tree)->required();
    validate->add_option("--input", o.input)->required();
    validate->add_option("--format", o.format);

    auto* synth = app.add_subcommand("synth", "write a seeded synthetic blob dataset");
    synth->add_option("--n", o.n)->capture_default_str();
    synth->add_option("--blobs", o.blobs)->capture_default_str();
    synth->add_option("--seed", o.seed)->capture_default_str();
    synth->add_option("--features", o.features, "feature dimension (0: none)")->capture_default_str();
    synth->add_flag("--thumbnails", o.thumbnails, "attach thumbnail refs");
    synth->add_option("--format", o.format);
    synth->add_option("--output", o.output)->required();

    auto* replay_cmd = app.add_subcommand("replay", "run a focus script and export one frame per op");
    replay_cmd->add_option("--tree", o.tree)->required();
    replay_cmd->add_option("--input", o.input)->required();
    replay_cmd->add_option("--format", o.format);
    replay_cmd->add_option("--script", o.script)->required();
    replay_cmd->add_option("--output-dir", o.output_dir)->required();
    replay_cmd->add_option("--viewport", o.viewport)->capture_default_str();

    auto* metrics = app.add_subcommand("metrics", "coverage and redundancy report as CSV");
    metrics->add_option("--input", o.input)->required();
    metrics->add_option("--format", o.format);
    metrics->add_option("--samplers", o.samplers, "comma-separated: sadire,reservoir")->capture_default_str();
    add_k(metrics);
    metrics->add_option("--seed", o.seed)->capture_default_str();
    metrics->add_option("--radius", o.radius, "coverage radius (default: k)");
    metrics->add_option("--threshold", o.threshold, "redundancy threshold (default: alpha*k)");
    metrics->add_option("--output", o.output, "CSV path (default: stdout)");

    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--port", o.port)->capture_default_str();
    serve->add_option("--host", o.host)->capture_default_str();
    serve->add_option("--viewport", o.viewport)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*build) {
            if (o.k <= 0.0 && o.k_px <= 0.0) throw Error(ErrorCode::InvalidArgs, "build needs --k or --k-px > 0");
            return cmd_build(o, out);
        }
        if (*validate) return cmd_validate(o, out);
        if (*synth) return cmd_synth(o, out);
        if (*replay_cmd) return cmd_replay(o, out);
        if (*metrics) {
            if (o.k <= 0.0 && o.k_px <= 0.0) throw Error(ErrorCode::InvalidArgs, "metrics needs --k or --k-px > 0");
            return cmd_metrics(o, out);
        }
        if (*serve) return cmd_serve(o, out);
    } catch (const Error& e) {
        err << "error [" << e.code_name() << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace focustree
