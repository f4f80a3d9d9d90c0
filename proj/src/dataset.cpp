#include "focustree/dataset.hpp"

#include "focustree/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

namespace focustree {

namespace {

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string to_hex(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << value;
    return out.str();
}

Dataset Dataset::from_points(std::vector<DataPoint> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no points");

    Dataset d;
    d.feature_dim_ = points.front().features.size();
    d.row_by_id_.reserve(points.size());
    d.planar_.reserve(points.size());
    for (std::size_t row = 0; row < points.size(); ++row) {
        const auto& p = points[row];
        const auto where = "row " + std::to_string(row + 1) + ": ";
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorCode::NonFiniteCoordinate, where + "non-finite coordinate");
        if (p.features.size() != d.feature_dim_)
            throw Error(ErrorCode::RaggedFeatures,
                        where + "expected " + std::to_string(d.feature_dim_) + " features, got " +
                            std::to_string(p.features.size()));
        for (double f : p.features)
            if (!std::isfinite(f)) throw Error(ErrorCode::ParseError, where + "non-finite feature value");
        if (!d.row_by_id_.emplace(p.id, row).second)
            throw Error(ErrorCode::DuplicateId, where + "duplicate id " + std::to_string(p.id));
        d.planar_.push_back({p.id, {p.x, p.y}});
    }
    d.bounds_ = bounds_of(d.planar_);
    d.max_distance_ = d.bounds_.diagonal();

    Fnv1a h;
    h.u64(points.size());
    h.u64(d.feature_dim_);
    for (const auto& p : points) {
        h.u64(p.id);
        h.f64(p.x);
        h.f64(p.y);
        h.str(p.label);
        for (double f : p.features) h.f64(f);
        h.str(p.thumbnail);
    }
    d.fingerprint_ = h.value();
    d.points_ = std::move(points);
    return d;
}

bool Dataset::has_thumbnails() const {
    for (const auto& p : points_)
        if (!p.thumbnail.empty()) return true;
    return false;
}

std::optional<std::size_t> Dataset::row_of(PointId id) const {
    auto it = row_by_id_.find(id);
    if (it == row_by_id_.end()) return std::nullopt;
    return it->second;
}

std::size_t Dataset::row_of_checked(PointId id) const {
    auto row = row_of(id);
    if (!row) throw Error(ErrorCode::InvalidArgs, "point id " + std::to_string(id) + " not in dataset");
    return *row;
}

Vec2 Dataset::position(PointId id) const { return planar_[row_of_checked(id)].pos; }

std::string Dataset::fingerprint_hex() const { return to_hex(fingerprint_); }

}  // namespace focustree
