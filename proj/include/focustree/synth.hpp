#pragma once

#include "focustree/dataset.hpp"

#include <cstdint>

namespace focustree {

struct SynthConfig {
    std::size_t n = 1000;
    std::size_t blobs = 4;
    std::uint64_t seed = 0;
    std::size_t feature_dim = 0;  // 0: no features
    bool thumbnails = false;      // refs of the form thumbs/c{blob}/{id}.png
    double spacing = 10.0;        // distance between neighbouring blob centers
};

// Labeled Gaussian blobs on a jittered square grid; point i belongs to blob i % blobs
// and carries label "c{blob}". Deterministic for a given config.
// Throws Error{InvalidArgs} unless n >= blobs >= 1.
Dataset synthesize(const SynthConfig& config);

}  // namespace focustree
