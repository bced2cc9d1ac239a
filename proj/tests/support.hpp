#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "hfinsler/minkowski.hpp"
#include "hfinsler/space_file.hpp"

namespace testsupport {

inline std::string gallery(const std::string& name) {
    return std::string(HFINSLER_GALLERY_DIR) + "/" + name + ".json";
}

inline hfinsler::Space load(const std::string& name) { return hfinsler::load_space(gallery(name)); }

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Finite-difference oracles on F^2, independent of the closed forms.

inline double f2(const hfinsler::MinkowskiNorm& n, const Eigen::VectorXd& y) {
    const double f = n.value(y);
    return f * f;
}

/// 1/2 Hess F^2 by second-order central differences.
inline Eigen::MatrixXd fd_fundamental(const hfinsler::MinkowskiNorm& n, const Eigen::VectorXd& y, double h = 1e-4) {
    const int p = static_cast<int>(y.size());
    Eigen::MatrixXd g(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            Eigen::VectorXd ei = Eigen::VectorXd::Unit(p, i) * h;
            Eigen::VectorXd ej = Eigen::VectorXd::Unit(p, j) * h;
            double d2;
            if (i == j) {
                d2 = (f2(n, y + ei) - 2.0 * f2(n, y) + f2(n, y - ei)) / (h * h);
            } else {
                d2 = (f2(n, y + ei + ej) - f2(n, y + ei - ej) - f2(n, y - ei + ej) + f2(n, y - ei - ej)) /
                     (4.0 * h * h);
            }
            g(i, j) = 0.5 * d2;
        }
    }
    return g;
}

/// 1/4 D^3 F^2 by the fourth-order central first-difference stencil applied
/// along each of the three axes.
inline double fd_cartan_entry(const hfinsler::MinkowskiNorm& n, const Eigen::VectorXd& y, int i, int j, int k,
                              double h = 1e-3) {
    static const std::array<std::pair<double, double>, 4> st{
        {{-2.0, 1.0 / 12.0}, {-1.0, -8.0 / 12.0}, {1.0, 8.0 / 12.0}, {2.0, -1.0 / 12.0}}};
    const int p = static_cast<int>(y.size());
    double acc = 0.0;
    for (const auto& [a, wa] : st) {
        for (const auto& [b, wb] : st) {
            for (const auto& [c, wc] : st) {
                Eigen::VectorXd z = y;
                z += Eigen::VectorXd::Unit(p, i) * (a * h);
                z += Eigen::VectorXd::Unit(p, j) * (b * h);
                z += Eigen::VectorXd::Unit(p, k) * (c * h);
                acc += wa * wb * wc * f2(n, z);
            }
        }
    }
    return 0.25 * acc / (h * h * h);
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = N(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

/// Well-conditioned random invertible matrix: orthogonal times a diagonal
/// with entries in [0.5, 2] times orthogonal.
inline Eigen::MatrixXd random_invertible(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.5, 2.0);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = U(rng);
    return random_orthogonal(n, rng) * d.asDiagonal() * random_orthogonal(n, rng);
}

inline Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = N(rng);
    return v.normalized();
}

} // namespace testsupport
