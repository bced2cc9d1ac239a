#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace hfinsler {

enum class SampleMode {
    low_discrepancy, ///< Cranley-Patterson rotated Halton points, shift from seed
    uniform_random   ///< Gaussian directions from a per-index generator
};

struct SampleOptions {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::low_discrepancy;
};

/// Euclidean unit vector in R^dim, a pure function of (index, seed, mode).
/// Scans rely on this to stay schedule independent.
Eigen::VectorXd unit_sphere_sample(int dim, std::size_t index, std::uint64_t seed,
                                   SampleMode mode);

/// Uniform double in [0, 1), a pure function of (index, stream, seed).
double uniform_sample(std::size_t index, std::uint64_t stream, std::uint64_t seed);

} // namespace hfinsler
