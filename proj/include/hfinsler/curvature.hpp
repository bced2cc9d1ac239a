#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfinsler/decomposition.hpp"
#include "hfinsler/minkowski.hpp"
#include "hfinsler/parallel.hpp"
#include "hfinsler/sampling.hpp"

namespace hfinsler {

inline constexpr double kDefaultCurvatureTol = 1e-8;

// Every vector below is a coefficient vector over the full g-basis. Vectors
// that must live in m are checked for an h-component, never projected.

/// Solves g_anchor(U, w) = 1/2 (g_anchor([w,u]_m, v) + g_anchor([w,v]_m, u))
/// for all m-basis w. Returns U(u, v) in g-coordinates (an element of m).
Eigen::VectorXd u_map(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& anchor,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v);

struct FlagCurvatureResult {
    Eigen::VectorXd anchor;    ///< y (the flagpole direction in Finsler terms)
    Eigen::VectorXd flagpole;  ///< v, the second vector spanning the flag
    Eigen::VectorXd u_vector;  ///< U(y, v)
    double numerator = 0.0;    ///< g_y(U, U)
    double denominator = 0.0;  ///< g_y(y,y) g_y(v,v) - g_y(y,v)^2
    double curvature = 0.0;    ///< numerator / denominator
    double commutator_residual = 0.0;
    double anchor_residual = 0.0;    ///< max_w |g_y([y,w]_m, y)| over the m-basis
    double critical_residual = 0.0;  ///< max_x |g_y(y, [y,x]_m)| over the g-basis
    double independence = 0.0;       ///< Gram determinant / (g_y(y,y) g_y(v,v))
};

/// Flag curvature of (y, span{y, v}) by the homogeneous formula, valid when
/// [y, v] = 0 in g, g_y([y, m]_m, y) = 0 and y, v are independent. Each unmet
/// condition throws Inapplicable naming it ("linear independence", "commutator",
/// "anchor condition"); malformed vectors throw InvalidInput.
FlagCurvatureResult flag_curvature_go(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                      const Eigen::VectorXd& y, const Eigen::VectorXd& v,
                                      double tol = kDefaultCurvatureTol);

/// Sectional curvature of span{x, y} for an invariant Riemannian metric via
/// the Nomizu operator Lambda_x z = 1/2 [x,z]_m + U(x,z).
double riemannian_sectional(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, double tol = kDefaultCurvatureTol);

enum class RicciBackend { go_formula, riemannian };

struct RicciFlag {
    Eigen::VectorXd direction; ///< e_i of the g_y-orthonormal frame
    bool covered = false;
    double curvature = 0.0;
    std::string reason;        ///< why the flag was not covered
};

struct RicciResult {
    double value = 0.0;        ///< F(y)^2 * sum of covered flag curvatures
    RicciBackend backend = RicciBackend::riemannian;
    std::vector<RicciFlag> flags;
    int covered = 0;
    int uncovered = 0;
    bool complete() const { return uncovered == 0; }
};

/// Ricci scalar over the g_y-orthonormal completion of y/F(y), built by
/// Gram-Schmidt on the m-basis in index order. The go_formula backend sums
/// only the flags where the homogeneous formula applies and reports the
/// rest as uncovered; it throws Inapplicable when no flag is covered.
RicciResult ricci_scalar(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& y,
                         RicciBackend backend, double tol = kDefaultCurvatureTol);

/// g_y-orthonormal frame {e_1, ..., e_{p-1}} completing y/F(y), g-coordinates.
std::vector<Eigen::VectorXd> orthonormal_completion(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                                    const Eigen::VectorXd& y);

struct GeodesicVectorResult {
    bool geodesic = false;
    double residual = 0.0; ///< max_z |g_w(w, [a + w, z]_m)| / F(w)^2
};

GeodesicVectorResult is_geodesic_vector(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                        const Eigen::VectorXd& w, const Eigen::VectorXd& a,
                                        double tol = kDefaultCurvatureTol);

/// Least residual over a in h of the geodesic-vector condition at F-unit w,
/// together with the minimum-norm minimiser.
struct GeodesicFeasibility {
    double residual = 0.0;
    Eigen::VectorXd compensator; ///< a in g-coordinates (zero outside h)
};

GeodesicFeasibility geodesic_feasibility(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                         const Eigen::VectorXd& w);

struct GOFailure {
    std::size_t index = 0;
    Eigen::VectorXd sample; ///< F-unit direction in g-coordinates
    double residual = 0.0;
};

struct GOReport {
    std::size_t sample_count = 0;  ///< random directions requested
    std::size_t probe_count = 0;   ///< m-basis directions checked first
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<GOFailure> failures;
    double max_residual = 0.0;
    Eigen::VectorXd worst_sample;
    bool pass = true;
};

/// Geodesic orbit feasibility scan. The m-basis directions are checked
/// first (indices 0..dim m - 1), then `samples.count` sampled directions.
GOReport is_geodesic_orbit(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const SampleOptions& samples,
                           double tol = kDefaultCurvatureTol, Execution exec = Execution::parallel);

struct CriticalPointResult {
    bool critical = false;
    double h_residual = 0.0; ///< max over h-basis x of |g_v(v, [v,x]_m)| / F(v)^2
    double m_residual = 0.0; ///< same over the m-basis
    double residual() const { return std::max(h_residual, m_residual); }
};

/// Whether the origin is a critical point of F^2 of the Killing field of v.
CriticalPointResult constant_length_critical(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                             const Eigen::VectorXd& v, double tol = kDefaultCurvatureTol);

} // namespace hfinsler
