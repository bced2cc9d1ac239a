#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hfinsler/subspace.hpp"

namespace hfinsler {

inline constexpr double kDefaultLieTol = 1e-9;

/// Finite-dimensional real Lie algebra given by structure constants in a
/// named basis. Only pairs (i, j) with i < j are supplied; the full
/// antisymmetric table is materialised on construction.
class LieAlgebra {
public:
    using PairKey = std::pair<int, int>;
    using Constants = std::map<PairKey, Eigen::VectorXd>;

    LieAlgebra(std::vector<std::string> basis_names, Constants upper_constants);

    static LieAlgebra abelian(int dim);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& basis_names() const { return names_; }
    /// The i < j constants as supplied (zero vectors dropped).
    const Constants& upper_constants() const { return upper_; }
    std::optional<int> index_of(const std::string& name) const;

    /// [e_i, e_j] in the basis.
    Eigen::VectorXd bracket_basis(int i, int j) const;
    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Matrix of ad(u): column j is [u, e_j].
    Eigen::MatrixXd ad(const Eigen::VectorXd& u) const;
    Eigen::MatrixXd killing_form() const;

    /// max(1, largest |structure constant|); the reference for zero tests.
    double bracket_scale() const { return bracket_scale_; }

    /// Structure constants in the basis f_a = sum_i T(i, a) e_i.
    LieAlgebra change_basis(const Eigen::MatrixXd& T) const;

    Eigen::VectorXd unit(int i) const { return Eigen::VectorXd::Unit(dim(), i); }

private:
    void check_length(const Eigen::VectorXd& v, const char* what) const;

    std::vector<std::string> names_;
    Constants upper_;
    // table_[i * n + j] = [e_i, e_j]
    std::vector<Eigen::VectorXd> table_;
    double bracket_scale_ = 1.0;
};

struct JacobiReport {
    double max_residual = 0.0;
    std::array<int, 3> worst_triple{-1, -1, -1};
    bool pass = true;
};

JacobiReport validate_jacobi(const LieAlgebra& alg, double tol = kDefaultLieTol);

struct DerivedSeries {
    std::vector<Subspace> terms; ///< g, [g,g], ... down to 0 or stabilisation
    bool is_solvable = false;
    const Subspace& derived_algebra() const { return terms.at(1); }
};

/// Span of all pairwise brackets of the basis vectors of `s`.
Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b, double tol);

DerivedSeries derived_series(const LieAlgebra& alg, double tol = kDefaultLieTol);

struct SpectrumResult {
    std::vector<std::complex<double>> eigenvalues;
    double operator_norm = 0.0; ///< max absolute row sum of the operator matrix
};

SpectrumResult spectrum(const Eigen::MatrixXd& op);

struct RestrictedAd {
    Eigen::MatrixXd matrix; ///< ad(u) in the subspace basis
    SpectrumResult spectrum;
    double invariance_residual = 0.0;
};

/// ad(u) restricted to an ad(u)-invariant subspace. The columns of `basis`
/// need not be orthonormal; only independent.
RestrictedAd ad_restricted(const LieAlgebra& alg, const Eigen::VectorXd& u,
                           const Eigen::MatrixXd& basis, double tol = kDefaultLieTol);
RestrictedAd ad_restricted(const LieAlgebra& alg, const Eigen::VectorXd& u, const Subspace& sub,
                           double tol = kDefaultLieTol);

/// Orthogonal complement, w.r.t. the Killing form, of [g,g]. This is the
/// solvable radical.
Subspace radical(const LieAlgebra& alg, double tol = kDefaultLieTol);

bool is_semisimple(const LieAlgebra& alg, double tol = kDefaultLieTol);

/// Last nonzero derived term of the radical; nullopt for semisimple input.
std::optional<Subspace> find_abelian_ideal(const LieAlgebra& alg, double tol = kDefaultLieTol);

/// Largest |[a_i, a_j]| over basis pairs of s.
double abelian_residual(const LieAlgebra& alg, const Subspace& s);
/// Largest distance from s of [e_k, a_i] over the g-basis and s-basis.
double ideal_residual(const LieAlgebra& alg, const Subspace& s);

} // namespace hfinsler
