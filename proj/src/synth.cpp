#include "focustree/synth.hpp"

#include "focustree/error.hpp"

#include <cmath>
#include <random>

namespace focustree {

Dataset synthesize(const SynthConfig& c) {
    if (c.blobs < 1 || c.n < c.blobs)
        throw Error(ErrorCode::InvalidArgs, "need n >= blobs >= 1 (got n=" + std::to_string(c.n) +
                                                ", blobs=" + std::to_string(c.blobs) + ")");
    if (!(c.spacing > 0.0)) throw Error(ErrorCode::InvalidArgs, "spacing must be > 0");

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::uniform_real_distribution<double> spread(0.6, 1.4);
    std::normal_distribution<double> unit(0.0, 1.0);

    struct Blob {
        Vec2 center;
        double sigma;
        std::vector<double> feature_center;
    };
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(c.blobs))));
    std::vector<Blob> blobs(c.blobs);
    for (std::size_t b = 0; b < c.blobs; ++b) {
        const double gx = static_cast<double>(b % side) + jitter(rng);
        const double gy = static_cast<double>(b / side) + jitter(rng);
        blobs[b].center = {gx * c.spacing, gy * c.spacing};
        blobs[b].sigma = spread(rng) * c.spacing / 6.0;
        blobs[b].feature_center.resize(c.feature_dim);
        for (auto& v : blobs[b].feature_center) v = 4.0 * unit(rng);
    }

    std::vector<DataPoint> points(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        const std::size_t b = i % c.blobs;
        DataPoint& p = points[i];
        p.id = i;
        p.x = blobs[b].center.x + blobs[b].sigma * unit(rng);
        p.y = blobs[b].center.y + blobs[b].sigma * unit(rng);
        p.label = "c" + std::to_string(b);
        p.features.resize(c.feature_dim);
        for (std::size_t d = 0; d < c.feature_dim; ++d) p.features[d] = blobs[b].feature_center[d] + unit(rng);
        if (c.thumbnails) p.thumbnail = "thumbs/" + p.label + "/" + std::to_string(i) + ".png";
    }
    return Dataset::from_points(std::move(points));
}

}  // namespace focustree
