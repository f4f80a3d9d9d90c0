#pragma once

#include "focustree/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace focustree {

struct DataPoint {
    PointId id = 0;
    double x = 0.0;
    double y = 0.0;
    std::string label;
    std::vector<double> features;  // empty when the dataset carries no features
    std::string thumbnail;         // empty when absent

    bool operator==(const DataPoint&) const = default;
};

// Immutable, validated collection of embedded points.
class Dataset {
public:
    Dataset() = default;

    // Validates and takes ownership. Throws Error{EmptyDataset, NonFiniteCoordinate,
    // DuplicateId, RaggedFeatures}; messages name the offending row (1-based).
    static Dataset from_points(std::vector<DataPoint> points);

    const std::vector<DataPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const DataPoint& operator[](std::size_t row) const { return points_[row]; }

    const Bounds& bounds() const { return bounds_; }
    // Upper bound on any pairwise distance: the bounding-box diagonal.
    double max_distance() const { return max_distance_; }
    std::size_t feature_dim() const { return feature_dim_; }
    bool has_features() const { return feature_dim_ > 0; }
    bool has_thumbnails() const;

    std::optional<std::size_t> row_of(PointId id) const;
    std::size_t row_of_checked(PointId id) const;
    Vec2 position(PointId id) const;

    // Positions in file order.
    const std::vector<PlanarPoint>& planar() const { return planar_; }

    // 64-bit FNV-1a content hash over ids, coordinate bits, labels, features, thumbnails.
    std::uint64_t fingerprint() const { return fingerprint_; }
    std::string fingerprint_hex() const;

    bool operator==(const Dataset& o) const { return points_ == o.points_; }

private:
    std::vector<DataPoint> points_;
    std::vector<PlanarPoint> planar_;
    std::unordered_map<PointId, std::size_t> row_by_id_;
    Bounds bounds_;
    double max_distance_ = 0.0;
    std::size_t feature_dim_ = 0;
    std::uint64_t fingerprint_ = 0;
};

std::string to_hex(std::uint64_t value);

}  // namespace focustree
