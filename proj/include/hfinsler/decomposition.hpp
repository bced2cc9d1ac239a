#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfinsler/lie_algebra.hpp"

namespace hfinsler {

struct ClosureReport {
    double hh_residual = 0.0; ///< worst m-component of [h_i, h_j]
    double hm_residual = 0.0; ///< worst h-component of [h_i, m_j]
    std::string worst_pair;   ///< e.g. "[e1, u]"
    bool pass = true;
};

/// g = h + m split along basis indices. Vectors handed to the public API
/// are coefficient vectors over the full g-basis; `to_m` / `from_m` convert
/// to and from coordinates over m_indices (the space the norm lives on).
class ReductiveDecomposition {
public:
    /// Validates the partition and the closure conditions [h,h] in h,
    /// [h,m] in m. Throws InvalidInput with the offending pair otherwise.
    ReductiveDecomposition(std::shared_ptr<const LieAlgebra> alg, std::vector<int> h_indices,
                           std::vector<int> m_indices, double tol = kDefaultLieTol);

    /// Trivial isotropy: h = 0, m = g.
    static ReductiveDecomposition trivial(std::shared_ptr<const LieAlgebra> alg);

    /// Closure check without throwing.
    static ClosureReport check_closure(const LieAlgebra& alg, const std::vector<int>& h_indices,
                                       const std::vector<int>& m_indices, double tol);

    const LieAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const LieAlgebra> algebra_ptr() const { return alg_; }
    const std::vector<int>& h_indices() const { return h_; }
    const std::vector<int>& m_indices() const { return m_; }
    int dim_h() const { return static_cast<int>(h_.size()); }
    int dim_m() const { return static_cast<int>(m_.size()); }

    Eigen::VectorXd to_m(const Eigen::VectorXd& x) const;
    Eigen::VectorXd from_m(const Eigen::VectorXd& xm) const;
    Eigen::VectorXd to_h(const Eigen::VectorXd& x) const;
    Eigen::VectorXd from_h(const Eigen::VectorXd& xh) const;
    Eigen::VectorXd project_m(const Eigen::VectorXd& x) const { return from_m(to_m(x)); }
    Eigen::VectorXd project_h(const Eigen::VectorXd& x) const { return from_h(to_h(x)); }

    /// pr_m [x, y] in g-coordinates.
    Eigen::VectorXd bracket_m(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    /// pr_m [x, y] in m-coordinates, for x, y given in m-coordinates.
    Eigen::VectorXd bracket_mm(const Eigen::VectorXd& xm, const Eigen::VectorXd& ym) const;

    /// Largest |h-component| of x relative to max(1, |x|).
    double h_leakage(const Eigen::VectorXd& x) const;
    /// Throws InvalidInput unless x has length dim g and lies in m within tol.
    void require_in_m(const Eigen::VectorXd& x, const char* what, double tol) const;

private:
    ReductiveDecomposition(std::shared_ptr<const LieAlgebra> alg, std::vector<int> h,
                           std::vector<int> m, bool /*skip_checks*/);

    std::shared_ptr<const LieAlgebra> alg_;
    std::vector<int> h_;
    std::vector<int> m_;
};

} // namespace hfinsler
