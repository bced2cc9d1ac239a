#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfinsler/decomposition.hpp"
#include "hfinsler/parallel.hpp"
#include "hfinsler/sampling.hpp"

namespace hfinsler {

enum class NormFamily { riemannian, randers, quartic };

const char* to_string(NormFamily f);
std::optional<NormFamily> parse_norm_family(const std::string& s);

/// Dense n x n x n array. Cartan tensors are filled symmetrically.
class Tensor3 {
public:
    explicit Tensor3(int n = 0) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    double contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) const;
    /// T(a, ., .) as an n x n matrix.
    Eigen::MatrixXd slice(const Eigen::VectorXd& a) const;
    double max_abs() const;

private:
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>((i * n_ + j) * n_ + k);
    }
    int n_;
    std::vector<double> data_;
};

/// g_y: the inner product 1/2 Hess(F^2) at a nonzero y.
struct AnisotropicInnerProduct {
    Eigen::VectorXd base;
    Eigen::MatrixXd gram;
    double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(gram * b); }
};

/// C_y: 1/4 of the third derivative of F^2 at a nonzero y.
struct CartanTensorValue {
    Eigen::VectorXd base;
    Tensor3 tensor;
};

/// Quartic data as monomial coefficients of F^4 keyed by sorted index
/// 4-tuples: F^4(y) = sum c[i<=j<=k<=l] y_i y_j y_k y_l.
using QuarticCoefficients = std::map<std::array<int, 4>, double>;

/// Minkowski norm on m, one of three closed-form families:
///   riemannian  F = sqrt(y^T A y)
///   randers     F = sqrt(y^T A y) + b^T y
///   quartic     F = (Q(y,y,y,y))^(1/4), Q fully symmetric
///
/// Construction checks shapes and symmetry. Admissibility (strong convexity)
/// is recorded rather than enforced so inadmissible data can be reported on;
/// evaluating an inadmissible riemannian/randers norm throws InvalidInput.
class MinkowskiNorm {
public:
    static MinkowskiNorm riemannian(Eigen::MatrixXd a);
    static MinkowskiNorm randers(Eigen::MatrixXd a, Eigen::VectorXd b);
    static MinkowskiNorm quartic(int dim, QuarticCoefficients coefficients);

    NormFamily family() const { return family_; }
    int dim() const { return dim_; }
    const Eigen::MatrixXd& matrix() const { return a_; }
    const Eigen::VectorXd& covector() const { return b_; }
    const QuarticCoefficients& quartic_coefficients() const { return quartic_coeffs_; }
    double quartic_entry(int i, int j, int k, int l) const;

    /// Closed-form admissibility for riemannian/randers; for quartic only
    /// the structural checks (sampled positivity lives in check_admissible).
    bool closed_form_admissible() const { return admissible_; }

    double value(const Eigen::VectorXd& y) const;
    AnisotropicInnerProduct fundamental_tensor(const Eigen::VectorXd& y) const;
    CartanTensorValue cartan_tensor(const Eigen::VectorXd& y) const;

private:
    MinkowskiNorm() = default;
    void require_usable(const Eigen::VectorXd& y, bool nonzero) const;
    /// q = Q(y,y,y,y) and the contractions Q(y,y,y,.), Q(y,y,.,.), Q(y,.,.,.)
    struct QuarticJets {
        double q;
        Eigen::VectorXd q1;
        Eigen::MatrixXd q2;
        Tensor3 q3;
    };
    QuarticJets quartic_jets(const Eigen::VectorXd& y, int order) const;

    NormFamily family_ = NormFamily::riemannian;
    int dim_ = 0;
    Eigen::MatrixXd a_;
    Eigen::MatrixXd a_inv_;
    Eigen::VectorXd b_;
    QuarticCoefficients quartic_coeffs_;
    std::vector<double> q_; // fully symmetric dim^4 tensor
    bool admissible_ = false;
};

struct AdmissibilityReport {
    NormFamily family = NormFamily::riemannian;
    bool pass = false;
    bool sampled = false;          ///< true when the verdict rests on samples
    std::size_t sample_count = 0;
    double min_eigenvalue = 0.0;   ///< smallest eigenvalue of A, or of g_y over samples
    double randers_b_norm_sq = 0.0;///< b^T A^{-1} b (randers only)
    std::string detail;
};

AdmissibilityReport check_admissible(const MinkowskiNorm& norm, const SampleOptions& samples = {},
                                     Execution exec = Execution::parallel);

struct InvarianceReport {
    bool pass = true;
    double max_residual = 0.0;
    std::size_t samples_checked = 0;
};

/// Infinitesimal Ad(H)-invariance of the norm:
///   g_y([v,u]_m, w) + g_y(u, [v,w]_m) + 2 C_y(u, w, [v,y]_m) = 0
/// for v in the h-basis, sampled y, and u, w over the m-basis. The residual
/// is measured on F-unit y.
InvarianceReport check_adH_invariance(const MinkowskiNorm& norm, const ReductiveDecomposition& d,
                                      const SampleOptions& samples = {}, double tol = 1e-8,
                                      Execution exec = Execution::parallel);

} // namespace hfinsler
