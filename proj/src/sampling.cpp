#include "hfinsler/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "hfinsler/errors.hpp"

namespace hfinsler {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

constexpr std::array<int, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,  37,  41,  43,  47,  53,
                                         59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::size_t index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
        f /= base;
    }
    return result;
}

} // namespace

double uniform_sample(std::size_t index, std::uint64_t stream, std::uint64_t seed) {
    return to_unit_interval(splitmix64(splitmix64(seed ^ splitmix64(stream)) + index));
}

Eigen::VectorXd unit_sphere_sample(int dim, std::size_t index, std::uint64_t seed, SampleMode mode) {
    if (dim <= 0) throw InvalidInput("sample dimension must be positive");
    Eigen::VectorXd v(dim);
    if (mode == SampleMode::low_discrepancy) {
        if (dim > static_cast<int>(kPrimes.size())) throw InvalidInput("low-discrepancy sampling supports dim <= 32");
        static const boost::math::normal standard;
        for (int d = 0; d < dim; ++d) {
            // rotated Halton coordinate pushed through the normal quantile
            const double shift = uniform_sample(static_cast<std::size_t>(d), 0x5eed, seed);
            double u = radical_inverse(index + 1, kPrimes[static_cast<std::size_t>(d)]) + shift;
            u -= std::floor(u);
            u = std::clamp(u, 1e-12, 1.0 - 1e-12);
            v(d) = boost::math::quantile(standard, u);
        }
    } else {
        std::mt19937_64 engine(splitmix64(seed) ^ splitmix64(index + 0x1234567ULL));
        std::normal_distribution<double> normal;
        for (int d = 0; d < dim; ++d) v(d) = normal(engine);
    }
    const double n = v.norm();
    if (n == 0.0) return Eigen::VectorXd::Unit(dim, 0);
    return v / n;
}

} // namespace hfinsler
