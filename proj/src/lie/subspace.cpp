#include "hfinsler/subspace.hpp"

#include <algorithm>

namespace hfinsler {

Subspace Subspace::zero(int ambient_dim) {
    return Subspace(ambient_dim, Eigen::MatrixXd::Zero(ambient_dim, 0));
}

Subspace Subspace::whole(int ambient_dim) {
    return Subspace(ambient_dim, Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::span(const Eigen::MatrixXd& vectors, double tol, double ref_scale) {
    const int n = static_cast<int>(vectors.rows());
    if (vectors.cols() == 0 || n == 0) return zero(n);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double cutoff = tol * std::max(sigma(0), ref_scale);
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) ++rank;
    }
    if (rank == 0) return zero(n);
    const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
    return Subspace(n, canonical_basis(u * u.transpose(), rank));
}

Subspace Subspace::complement() const {
    const int r = ambient_ - dim();
    if (r == 0) return zero(ambient_);
    const Eigen::MatrixXd p =
        Eigen::MatrixXd::Identity(ambient_, ambient_) - basis_ * basis_.transpose();
    return Subspace(ambient_, canonical_basis(p, r));
}

Eigen::MatrixXd Subspace::canonical_basis(const Eigen::MatrixXd& projector, int rank) {
    const Eigen::Index n = projector.rows();
    Eigen::MatrixXd remaining = projector;
    Eigen::MatrixXd q(n, rank);
    for (int s = 0; s < rank; ++s) {
        // pick the coordinate whose projection carries the most weight; lowest
        // index wins near-ties so the choice is stable under rounding
        Eigen::Index best = 0;
        double best_norm = -1.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            const double nc = remaining.col(c).norm();
            if (nc > best_norm * (1.0 + 1e-12)) {
                best_norm = nc;
                best = c;
            }
        }
        Eigen::VectorXd v = remaining.col(best);
        for (int pass = 0; pass < 2; ++pass) {
            for (int t = 0; t < s; ++t) v -= q.col(t).dot(v) * q.col(t);
        }
        v.normalize();
        q.col(s) = v;
        remaining -= v * (v.transpose() * remaining);
    }
    return q;
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& v) const {
    return basis_ * (basis_.transpose() * v);
}

double Subspace::distance(const Eigen::VectorXd& v) const { return (v - project(v)).norm(); }

} // namespace hfinsler
