#include "focustree/embedding_io.hpp"
#include "focustree/error.hpp"
#include "focustree/focus_layout.hpp"
#include "focustree/hierarchy.hpp"
#include "focustree/json_codec.hpp"
#include "focustree/metrics.hpp"
#include "focustree/overlap_removal.hpp"
#include "focustree/replay.hpp"
#include "focustree/service.hpp"
#include "focustree/summaries.hpp"
#include "focustree/synth.hpp"
#include "focustree/tree_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace focustree;

namespace {

std::vector<PlanarPoint> to_planar(const std::vector<std::tuple<PointId, double, double>>& pts) {
    std::vector<PlanarPoint> out;
    out.reserve(pts.size());
    for (const auto& [id, x, y] : pts) out.push_back({id, {x, y}});
    return out;
}

// Python-side handle on one exploration: a layout plus its current state.
class Explorer {
public:
    Explorer(std::shared_ptr<Dataset> ds, std::shared_ptr<Tree> tree, double width, double height)
        : layout_(ds, tree, LayoutParams::for_dataset(*ds, Viewport{width, height})), state_(layout_.start()) {}

    std::string frame() const { return frame_document(*state_.frame); }
    std::string apply(const std::string& op, std::optional<std::int64_t> arg) {
        const auto kind = parse_op_kind(op);
        if (!kind) throw Error(ErrorCode::BadRequest, "unknown op '" + op + "'");
        if (op_takes_argument(*kind) && !arg) throw Error(ErrorCode::BadRequest, op + " needs an argument");
        state_ = apply_op(layout_, state_, FocusOp{*kind, arg.value_or(0), 0});
        return frame();
    }
    std::size_t checkpoints() const { return state_.checkpoints.size(); }
    std::vector<std::pair<double, double>> positions() const {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : state_.frame->positions) out.emplace_back(p.x, p.y);
        return out;
    }

private:
    FocusLayout layout_;
    ExplorationState state_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchical sampling and focus+context layout for 2D embeddings";

    static py::exception<Error> exc(m, "FocusTreeError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(exc.ptr(), py::make_tuple(std::string(e.code_name()), e.what()).ptr());
        }
    });

    py::class_<Dataset, std::shared_ptr<Dataset>>(m, "Dataset")
        .def_property_readonly("size", &Dataset::size)
        .def_property_readonly("feature_dim", &Dataset::feature_dim)
        .def_property_readonly("fingerprint", &Dataset::fingerprint_hex)
        .def_property_readonly("max_distance", &Dataset::max_distance)
        .def("__len__", &Dataset::size)
        .def("points", [](const Dataset& d) {
            std::vector<std::tuple<PointId, double, double, std::string>> out;
            for (const auto& p : d.points()) out.emplace_back(p.id, p.x, p.y, p.label);
            return out;
        })
        .def("planar", [](const Dataset& d) {
            std::vector<std::tuple<PointId, double, double>> out;
            for (const auto& p : d.planar()) out.emplace_back(p.id, p.pos.x, p.pos.y);
            return out;
        })
        .def("save", [](const Dataset& d, const std::filesystem::path& path) {
            save_dataset(d, path, format_from_path(path));
        });

    m.def("load_dataset", [](const std::filesystem::path& path) {
        return std::make_shared<Dataset>(load_dataset(path, format_from_path(path)));
    }, py::arg("path"));
    m.def("synthesize", [](std::size_t n, std::size_t blobs, std::uint64_t seed, std::size_t feature_dim, bool thumbs) {
        return std::make_shared<Dataset>(synthesize({n, blobs, seed, feature_dim, thumbs}));
    }, py::arg("n"), py::arg("blobs"), py::arg("seed") = 0, py::arg("feature_dim") = 0, py::arg("thumbnails") = false);

    m.def("sample", [](const std::vector<std::tuple<PointId, double, double>>& pts, double k, int alpha) {
        std::vector<std::pair<PointId, std::size_t>> out;
        for (const auto& r : sample(to_planar(pts), GridConfig{k, alpha})) out.emplace_back(r.id, r.density);
        return out;
    }, py::arg("points"), py::arg("k"), py::arg("alpha") = 1);

    py::class_<Tree, std::shared_ptr<Tree>>(m, "Tree")
        .def_property_readonly("node_count", [](const Tree& t) { return t.nodes.size(); })
        .def_property_readonly("depth", &Tree::depth)
        .def_property_readonly("max_level", &Tree::max_level)
        .def("node", [](const Tree& t, NodeId id) { return node_info(t.node(id)).dump(); })
        .def("members", [](const Tree& t, NodeId id) { return t.node(id).member_ids; })
        .def("to_json", &serialize_tree)
        .def("save", &save_tree);

    m.def("build_tree", [](const Dataset& ds, double k, int alpha, std::size_t pi) {
        return std::make_shared<Tree>(build_tree(ds, BuildConfig{GridConfig{k, alpha}, pi}));
    }, py::arg("dataset"), py::arg("k"), py::arg("alpha") = 1, py::arg("pi") = 200);
    m.def("load_tree", [](const std::filesystem::path& path, const Dataset& ds) {
        return std::make_shared<Tree>(load_tree(path, ds));
    });
    m.def("validate_tree", [](const Tree& t, const Dataset& ds) {
        std::vector<std::tuple<NodeId, std::string, std::string>> out;
        for (const auto& v : validate_tree(t, ds, t.config.min_cluster_size).violations)
            out.emplace_back(v.node, v.kind, v.message);
        return out;
    });
    m.def("summarize", [](const Tree& t, const Dataset& ds, NodeId id) {
        return to_json(summarize(t.node(id), ds)).dump();
    });

    py::class_<Explorer>(m, "Explorer")
        .def(py::init<std::shared_ptr<Dataset>, std::shared_ptr<Tree>, double, double>(),
             py::arg("dataset"), py::arg("tree"), py::arg("width_px") = 800.0, py::arg("height_px") = 800.0)
        .def("frame", &Explorer::frame)
        .def("apply", &Explorer::apply, py::arg("op"), py::arg("arg") = py::none())
        .def_property_readonly("checkpoints", &Explorer::checkpoints)
        .def("positions", &Explorer::positions);

    m.def("remove_overlaps", [](const std::vector<std::tuple<PointId, double, double, double>>& in, int max_iterations) {
        std::vector<Marker> ms;
        for (const auto& [id, x, y, r] : in) ms.push_back({id, x, y, r});
        const auto res = remove_overlaps(ms, max_iterations);
        std::vector<std::tuple<PointId, double, double, double>> out;
        for (const auto& mk : res.markers) out.emplace_back(mk.id, mk.x, mk.y, mk.radius);
        return py::make_tuple(out, res.converged, res.iterations);
    }, py::arg("markers"), py::arg("max_iterations") = 1000);

    m.def("coverage", [](const std::vector<std::tuple<PointId, double, double>>& pts,
                         const std::vector<std::tuple<PointId, double, double>>& reps, double radius) {
        return coverage(to_planar(pts), to_planar(reps), radius);
    });
    m.def("redundancy", [](const std::vector<std::tuple<PointId, double, double>>& reps, double threshold) {
        return redundancy(to_planar(reps), threshold);
    });

    py::class_<ExplorerService>(m, "Service")
        .def(py::init<>())
        .def("handle", [](ExplorerService& s, const std::string& method, const std::string& path,
                          const std::map<std::string, std::string>& query, const std::string& body) {
            ServiceResponse r;
            {
                py::gil_scoped_release release;
                r = s.handle(method, path, query, body);
            }
            return py::make_tuple(r.status, r.body.dump());
        }, py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
           py::arg("body") = "");
}
