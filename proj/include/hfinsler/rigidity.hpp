#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfinsler/curvature.hpp"
#include "hfinsler/decomposition.hpp"
#include "hfinsler/lie_algebra.hpp"
#include "hfinsler/minkowski.hpp"

namespace hfinsler {

enum class FailureReason {
    none,
    not_solvable,
    derived_not_abelian,
    derived_zero,
    dimension_gap,
    spectrum_mixed,
    spectrum_imaginary_axis
};

/// Kebab-case name, e.g. "dimension-gap"; "none" for FailureReason::none.
const char* to_string(FailureReason r);

/// Outcome of the negative-curvature criterion for a solvable algebra whose
/// derived algebra is abelian and nonzero: it admits a negatively curved
/// left-invariant metric iff dim g = dim [g,g] + 1 and, for some u' outside
/// [g,g], every eigenvalue of ad(u') on [g,g] has positive real part.
struct ClassificationVerdict {
    bool admits_negative_metric = false;
    int dim_g = 0;
    int dim_derived = 0;
    FailureReason failure_reason = FailureReason::none;

    /// Representative u' outside [g,g] (set once the dimension test passes).
    /// When the spectrum lies in the left half-plane, u' and the spectrum are
    /// both negated so the stored spectrum has positive real parts.
    Eigen::VectorXd chosen_u;
    std::optional<SpectrumResult> spectrum;
    Eigen::MatrixXd restricted_ad; ///< ad(chosen_u) on the derived-algebra basis
    bool sign_flipped = false;
    bool borderline = false;       ///< an eigenvalue sits within tol*|ad| of the imaginary axis

    /// Eigenvalues divided by the spectral radius. u' is only determined up to
    /// scale and a [g,g] shift, so this is the basis-independent form.
    std::vector<std::complex<double>> normalized_spectrum() const;
    std::string summary() const;
};

ClassificationVerdict classify_solvable_negative(const LieAlgebra& alg, double tol = kDefaultLieTol);

struct PositivityReport {
    bool pass = false;
    double min_value = 0.0;        ///< min g_u(u, [u', u]_m) over F-unit u in [g,g]
    Eigen::VectorXd worst_sample;  ///< g-coordinates
    std::size_t probe_count = 0;   ///< derived-algebra basis vectors checked first
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
};

/// Scans g_u(u, [u', u]_m) over F-unit u in [g,g]; passes iff the minimum
/// exceeds tol. Throws InvalidInput when [g,g] is zero, is not contained in
/// m, or contains u'.
PositivityReport bracket_positivity_scan(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                         const Eigen::VectorXd& u_prime, const SampleOptions& samples,
                                         double tol = kDefaultCurvatureTol, Execution exec = Execution::parallel);

struct ImplicationReport {
    ClassificationVerdict verdict;
    PositivityReport scan_plus;   ///< scan with the representative u'
    PositivityReport scan_minus;  ///< scan with -u'
    bool consistent = true;
    std::string counterexample;   ///< empty when consistent
};

/// Checks that norm-level positivity for +u' or -u' implies the spectral
/// condition for that same generator. Throws InvalidInput unless the algebra
/// is solvable with abelian nonzero [g,g] of codimension one.
ImplicationReport positivity_implies_spectrum(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                              const SampleOptions& samples, double tol = kDefaultCurvatureTol,
                                              Execution exec = Execution::parallel);

struct IdealFlag {
    Eigen::VectorXd y;
    Eigen::VectorXd v;
    double curvature = 0.0;
};

struct IdealFlagScanReport {
    std::size_t applicable = 0;
    std::size_t skipped = 0;
    double min_curvature = 0.0; ///< meaningful only when applicable > 0
    std::vector<IdealFlag> flags;
};

/// Evaluates the homogeneous flag formula on pairs (y, v) drawn from an
/// abelian ideal inside m: first all ordered pairs of ideal basis vectors,
/// then `samples.count` sampled pairs. Pairs outside the formula's domain
/// are counted as skipped.
IdealFlagScanReport abelian_ideal_flag_scan(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                            const Subspace& ideal, const SampleOptions& samples,
                                            double tol = kDefaultCurvatureTol, Execution exec = Execution::parallel);

} // namespace hfinsler
