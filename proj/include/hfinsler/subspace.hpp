#pragma once

#include <Eigen/Dense>

namespace hfinsler {

/// A linear subspace of R^n held as an orthonormal basis (columns).
///
/// The rank is decided by an SVD with cutoff tol * max(sigma_max, ref_scale).
/// The stored basis is then canonicalised by pivoted Gram-Schmidt over the
/// projections of the coordinate vectors, so a subspace spanned by coordinate
/// vectors comes back as exactly those vectors.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(int ambient_dim);
    static Subspace whole(int ambient_dim);

    /// Span of the columns of `vectors`.
    static Subspace span(const Eigen::MatrixXd& vectors, double tol, double ref_scale = 0.0);

    /// Orthogonal complement in the ambient space.
    Subspace complement() const;

    int dim() const { return static_cast<int>(basis_.cols()); }
    int ambient_dim() const { return ambient_; }
    const Eigen::MatrixXd& basis() const { return basis_; }
    Eigen::VectorXd vector(int i) const { return basis_.col(i); }

    Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }
    Eigen::VectorXd project(const Eigen::VectorXd& v) const;
    /// Euclidean norm of the component of v orthogonal to the subspace.
    double distance(const Eigen::VectorXd& v) const;

private:
    Subspace(int ambient, Eigen::MatrixXd basis) : ambient_(ambient), basis_(std::move(basis)) {}
    static Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& projector, int rank);

    int ambient_ = 0;
    Eigen::MatrixXd basis_;
};

} // namespace hfinsler
