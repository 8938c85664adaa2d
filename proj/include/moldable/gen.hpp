#pragma once

#include <cstdint>

#include "moldable/model.hpp"

namespace moldable {

struct GenConfig {
    int n = 0;
    int m = 1;
    Rat t1_low{1};
    Rat t1_high{100};
    std::uint64_t seed = 0;
    long quantization = 1'000'000;  // every time is a multiple of 1/quantization
};

/// Random monotone instance. t(j,1) is uniform on [t1_low, t1_high]; each
/// t(j,k) is uniform on [(k-1)/k t(j,k-1), t(j,k-1)], which keeps both time
/// and work monotone. Job j draws from its own stream seeded by (seed, j), so
/// the output depends only on the config. Job ids are 1..n.
Instance generate(const GenConfig& cfg);

/// m = 13 with constant-work jobs of work 6.01, 0.99 and eight times 0.75.
Instance adversarial_instance();

/// Deterministic 64-bit mixer used to derive per-job streams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace moldable
