#include "hfinsler/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "hfinsler/errors.hpp"

namespace hfinsler {

namespace {

// vectors supplied by callers must sit in m to this relative accuracy
constexpr double kMembershipTol = 1e-9;

void require_compatible(const ReductiveDecomposition& d, const MinkowskiNorm& norm) {
    if (norm.dim() != d.dim_m()) {
        throw InvalidInput("norm dimension " + std::to_string(norm.dim()) + " does not match dim m = " +
                           std::to_string(d.dim_m()));
    }
}

Eigen::VectorXd nonzero_m(const ReductiveDecomposition& d, const Eigen::VectorXd& x, const char* what) {
    d.require_in_m(x, what, kMembershipTol);
    Eigen::VectorXd xm = d.to_m(x);
    if (xm.cwiseAbs().maxCoeff() == 0.0) throw InvalidInput(std::string(what) + " must be nonzero");
    return xm;
}

/// Matrices of z -> [e_w, z]_m on m, one per m-basis vector w, in m-coordinates.
std::vector<Eigen::MatrixXd> m_adjoints(const ReductiveDecomposition& d) {
    const int p = d.dim_m();
    std::vector<Eigen::MatrixXd> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int w = 0; w < p; ++w) {
        Eigen::MatrixXd c(p, p);
        const Eigen::VectorXd ew = Eigen::VectorXd::Unit(p, w);
        for (int z = 0; z < p; ++z) c.col(z) = d.bracket_mm(ew, Eigen::VectorXd::Unit(p, z));
        out.push_back(std::move(c));
    }
    return out;
}

/// Right side of the U-map system for Gram matrix g, m-coordinates.
Eigen::VectorXd u_map_rhs(const std::vector<Eigen::MatrixXd>& adj, const Eigen::MatrixXd& g,
                          const Eigen::VectorXd& um, const Eigen::VectorXd& vm) {
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(adj.size()));
    for (std::size_t w = 0; w < adj.size(); ++w) {
        rhs(static_cast<Eigen::Index>(w)) =
            0.5 * ((adj[w] * um).dot(g * vm) + (adj[w] * vm).dot(g * um));
    }
    return rhs;
}

Eigen::LLT<Eigen::MatrixXd> factor_gram(const Eigen::MatrixXd& g) {
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw InvalidInput("Gram matrix of g_anchor is not positive-definite");
    return llt;
}

} // namespace

Eigen::VectorXd u_map(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& anchor,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    require_compatible(d, norm);
    const Eigen::VectorXd am = nonzero_m(d, anchor, "anchor");
    d.require_in_m(u, "u", kMembershipTol);
    d.require_in_m(v, "v", kMembershipTol);
    const Eigen::MatrixXd g = norm.fundamental_tensor(am).gram;
    const auto rhs = u_map_rhs(m_adjoints(d), g, d.to_m(u), d.to_m(v));
    return d.from_m(factor_gram(g).solve(rhs));
}

FlagCurvatureResult flag_curvature_go(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                      const Eigen::VectorXd& y, const Eigen::VectorXd& v, double tol) {
    require_compatible(d, norm);
    const LieAlgebra& alg = d.algebra();
    const Eigen::VectorXd ym = nonzero_m(d, y, "u");
    d.require_in_m(v, "v", kMembershipTol);
    const Eigen::VectorXd vm = d.to_m(v);
    const Eigen::MatrixXd g = norm.fundamental_tensor(ym).gram;

    FlagCurvatureResult r;
    r.anchor = d.from_m(ym);
    r.flagpole = d.from_m(vm);

    const double gyy = ym.dot(g * ym);
    const double gvv = vm.dot(g * vm);
    const double gyv = ym.dot(g * vm);
    r.denominator = gyy * gvv - gyv * gyv;
    r.independence = gvv > 0.0 ? r.denominator / (gyy * gvv) : 0.0;
    if (!(r.independence > tol)) throw Inapplicable("linear independence", r.independence, tol);

    r.commutator_residual = alg.bracket(r.anchor, r.flagpole).cwiseAbs().maxCoeff();
    const double commutator_bound = tol * alg.bracket_scale() * ym.norm() * vm.norm();
    if (r.commutator_residual > commutator_bound) {
        throw Inapplicable("commutator", r.commutator_residual, commutator_bound);
    }

    const int p = d.dim_m();
    for (int w = 0; w < p; ++w) {
        const Eigen::VectorXd yw = d.bracket_mm(ym, Eigen::VectorXd::Unit(p, w));
        r.anchor_residual = std::max(r.anchor_residual, std::abs(yw.dot(g * ym)));
    }
    for (int x = 0; x < alg.dim(); ++x) {
        const Eigen::VectorXd yx = d.to_m(alg.bracket(r.anchor, alg.unit(x)));
        r.critical_residual = std::max(r.critical_residual, std::abs(ym.dot(g * yx)));
    }
    const double anchor_bound = tol * alg.bracket_scale() * gyy;
    if (r.anchor_residual > anchor_bound) throw Inapplicable("anchor condition", r.anchor_residual, anchor_bound);

    const Eigen::VectorXd um = factor_gram(g).solve(u_map_rhs(m_adjoints(d), g, ym, vm));
    r.u_vector = d.from_m(um);
    r.numerator = um.dot(g * um);
    r.curvature = r.numerator / r.denominator;
    return r;
}

double riemannian_sectional(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, double tol) {
    require_compatible(d, norm);
    if (norm.family() != NormFamily::riemannian) {
        throw InvalidInput("riemannian_sectional needs a riemannian norm, got " + std::string(to_string(norm.family())));
    }
    if (!norm.closed_form_admissible()) throw InvalidInput("riemannian matrix is not positive-definite");
    d.require_in_m(x, "x", kMembershipTol);
    d.require_in_m(y, "y", kMembershipTol);
    const Eigen::MatrixXd& a = norm.matrix();
    const Eigen::VectorXd xm = d.to_m(x);
    const Eigen::VectorXd ym = d.to_m(y);
    const double xx = xm.dot(a * xm), yy = ym.dot(a * ym), xy = xm.dot(a * ym);
    const double den = xx * yy - xy * xy;
    if (!(xx > 0.0 && yy > 0.0) || !(den > tol * xx * yy)) throw InvalidInput("x and y are linearly dependent");

    const auto adj = m_adjoints(d);
    const auto llt = factor_gram(a);
    auto lambda = [&](const Eigen::VectorXd& p, const Eigen::VectorXd& z) -> Eigen::VectorXd {
        return 0.5 * d.bracket_mm(p, z) + llt.solve(u_map_rhs(adj, a, p, z));
    };

    const LieAlgebra& alg = d.algebra();
    const Eigen::VectorXd xy_full = alg.bracket(d.from_m(xm), d.from_m(ym));
    const Eigen::VectorXd xy_m = d.to_m(xy_full);
    const Eigen::VectorXd xy_h = d.project_h(xy_full);

    const Eigen::VectorXd ryy = lambda(xm, lambda(ym, ym)) - lambda(ym, lambda(xm, ym)) - lambda(xy_m, ym) -
                                d.to_m(alg.bracket(xy_h, d.from_m(ym)));
    return ryy.dot(a * xm) / den;
}

std::vector<Eigen::VectorXd> orthonormal_completion(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                                    const Eigen::VectorXd& y) {
    require_compatible(d, norm);
    const Eigen::VectorXd ym = nonzero_m(d, y, "y");
    const Eigen::MatrixXd g = norm.fundamental_tensor(ym).gram;
    const int p = d.dim_m();

    std::vector<Eigen::VectorXd> frame{ym / std::sqrt(ym.dot(g * ym))};
    for (int k = 0; k < p && static_cast<int>(frame.size()) < p; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(p, k);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& f : frame) v -= f.dot(g * v) * f;
        }
        const double len = std::sqrt(std::max(0.0, v.dot(g * v)));
        if (len <= 1e-10 * std::sqrt(g(k, k))) continue;
        frame.push_back(v / len);
    }
    std::vector<Eigen::VectorXd> out;
    for (std::size_t i = 1; i < frame.size(); ++i) out.push_back(d.from_m(frame[i]));
    return out;
}

RicciResult ricci_scalar(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const Eigen::VectorXd& y,
                         RicciBackend backend, double tol) {
    require_compatible(d, norm);
    const Eigen::VectorXd ym = nonzero_m(d, y, "y");
    if (backend == RicciBackend::riemannian && norm.family() != NormFamily::riemannian) {
        throw InvalidInput("riemannian Ricci backend needs a riemannian norm");
    }
    RicciResult r;
    r.backend = backend;
    const double f = norm.value(ym);
    double sum = 0.0;
    for (auto& e : orthonormal_completion(d, norm, y)) {
        RicciFlag flag;
        flag.direction = e;
        if (backend == RicciBackend::riemannian) {
            flag.curvature = riemannian_sectional(d, norm, y, e, tol);
            flag.covered = true;
        } else {
            try {
                flag.curvature = flag_curvature_go(d, norm, y, e, tol).curvature;
                flag.covered = true;
            } catch (const Inapplicable& ex) {
                flag.reason = ex.what();
            }
        }
        if (flag.covered) {
            sum += flag.curvature;
            ++r.covered;
        } else {
            ++r.uncovered;
        }
        r.flags.push_back(std::move(flag));
    }
    if (r.covered == 0 && r.uncovered > 0) {
        throw Inapplicable("no applicable flags", "no applicable flags: the homogeneous formula covers none of the " +
                                                      std::to_string(r.uncovered) + " flags at y");
    }
    r.value = f * f * sum;
    return r;
}

GeodesicVectorResult is_geodesic_vector(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                        const Eigen::VectorXd& w, const Eigen::VectorXd& a, double tol) {
    require_compatible(d, norm);
    const Eigen::VectorXd wm = nonzero_m(d, w, "w");
    const LieAlgebra& alg = d.algebra();
    if (a.size() != alg.dim()) throw InvalidInput("compensator a has the wrong length");
    if (d.to_m(a).cwiseAbs().maxCoeff() > kMembershipTol * std::max(1.0, a.norm())) {
        throw InvalidInput("compensator a is not in h");
    }
    const Eigen::MatrixXd g = norm.fundamental_tensor(wm).gram;
    const double f2 = std::pow(norm.value(wm), 2);
    const Eigen::VectorXd gen = d.project_h(a) + d.from_m(wm);
    GeodesicVectorResult r;
    for (int z = 0; z < d.dim_m(); ++z) {
        const Eigen::VectorXd bz = d.to_m(alg.bracket(gen, d.from_m(Eigen::VectorXd::Unit(d.dim_m(), z))));
        r.residual = std::max(r.residual, std::abs(wm.dot(g * bz)));
    }
    r.residual /= f2;
    r.geodesic = r.residual <= tol * alg.bracket_scale();
    return r;
}

GeodesicFeasibility geodesic_feasibility(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                         const Eigen::VectorXd& w) {
    require_compatible(d, norm);
    Eigen::VectorXd wm = nonzero_m(d, w, "w");
    wm /= norm.value(wm);
    const LieAlgebra& alg = d.algebra();
    const int p = d.dim_m();
    const int q = d.dim_h();
    const Eigen::MatrixXd g = norm.fundamental_tensor(wm).gram;
    const Eigen::VectorXd gw = g * wm;
    const Eigen::VectorXd wg = d.from_m(wm);

    Eigen::MatrixXd lhs(p, q);
    Eigen::VectorXd rhs(p);
    for (int z = 0; z < p; ++z) {
        const Eigen::VectorXd ez = d.from_m(Eigen::VectorXd::Unit(p, z));
        rhs(z) = -gw.dot(d.to_m(alg.bracket(wg, ez)));
        for (int k = 0; k < q; ++k) {
            lhs(z, k) = gw.dot(d.to_m(alg.bracket(alg.unit(d.h_indices()[static_cast<std::size_t>(k)]), ez)));
        }
    }
    GeodesicFeasibility out;
    out.compensator = Eigen::VectorXd::Zero(alg.dim());
    if (q == 0) {
        out.residual = p > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0;
        return out;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lhs);
    const Eigen::VectorXd a = cod.solve(rhs);
    out.residual = (lhs * a - rhs).cwiseAbs().maxCoeff();
    out.compensator = d.from_h(a);
    return out;
}

GOReport is_geodesic_orbit(const ReductiveDecomposition& d, const MinkowskiNorm& norm, const SampleOptions& samples,
                           double tol, Execution exec) {
    require_compatible(d, norm);
    const int p = d.dim_m();
    GOReport report;
    report.sample_count = samples.count;
    report.probe_count = static_cast<std::size_t>(p);
    report.seed = samples.seed;
    report.tolerance = tol * d.algebra().bracket_scale();
    if (p == 0) return report;

    const std::size_t total = report.probe_count + samples.count;
    auto direction = [&](std::size_t i) -> Eigen::VectorXd {
        Eigen::VectorXd wm = i < report.probe_count
                                 ? Eigen::VectorXd::Unit(p, static_cast<Eigen::Index>(i))
                                 : unit_sphere_sample(p, i - report.probe_count, samples.seed, samples.mode);
        return d.from_m(wm / norm.value(wm));
    };
    const auto residuals = map_indices(total, exec, [&](std::size_t i) {
        return geodesic_feasibility(d, norm, direction(i)).residual;
    });

    report.max_residual = -1.0;
    for (std::size_t i = 0; i < total; ++i) {
        const double r = residuals[i];
        if (r > report.max_residual) {
            report.max_residual = r;
            report.worst_sample = direction(i);
        }
        if (r > report.tolerance) report.failures.push_back({i, direction(i), r});
    }
    report.pass = report.failures.empty();
    return report;
}

CriticalPointResult constant_length_critical(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                             const Eigen::VectorXd& v, double tol) {
    require_compatible(d, norm);
    const Eigen::VectorXd vm = nonzero_m(d, v, "v");
    const LieAlgebra& alg = d.algebra();
    const Eigen::MatrixXd g = norm.fundamental_tensor(vm).gram;
    const double f2 = std::pow(norm.value(vm), 2);
    const Eigen::VectorXd gv = g * vm;
    const Eigen::VectorXd vg = d.from_m(vm);

    CriticalPointResult r;
    for (int x : d.h_indices()) {
        r.h_residual = std::max(r.h_residual, std::abs(gv.dot(d.to_m(alg.bracket(vg, alg.unit(x))))) / f2);
    }
    for (int x : d.m_indices()) {
        r.m_residual = std::max(r.m_residual, std::abs(gv.dot(d.to_m(alg.bracket(vg, alg.unit(x))))) / f2);
    }
    r.critical = r.residual() <= tol * alg.bracket_scale();
    return r;
}

} // namespace hfinsler
