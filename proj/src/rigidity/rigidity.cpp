#include "hfinsler/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hfinsler/errors.hpp"

namespace hfinsler {

const char* to_string(FailureReason r) {
    switch (r) {
    case FailureReason::none: return "none";
    case FailureReason::not_solvable: return "not-solvable";
    case FailureReason::derived_not_abelian: return "derived-not-abelian";
    case FailureReason::derived_zero: return "derived-zero";
    case FailureReason::dimension_gap: return "dimension-gap";
    case FailureReason::spectrum_mixed: return "spectrum-mixed";
    case FailureReason::spectrum_imaginary_axis: return "spectrum-imaginary-axis";
    }
    return "unknown";
}

namespace {

std::string format_complex(std::complex<double> z) {
    std::ostringstream os;
    os << std::setprecision(6);
    const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
    const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
    if (im == 0.0) {
        os << re;
    } else if (re == 0.0) {
        os << im << "i";
    } else {
        os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    }
    return os.str();
}

std::string format_spectrum(const std::vector<std::complex<double>>& ev) {
    std::string out = "{";
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (i) out += ", ";
        out += format_complex(ev[i]);
    }
    return out + "}";
}

bool hypotheses_hold(FailureReason r) {
    return r == FailureReason::none || r == FailureReason::spectrum_mixed ||
           r == FailureReason::spectrum_imaginary_axis;
}

} // namespace

std::vector<std::complex<double>> ClassificationVerdict::normalized_spectrum() const {
    if (!spectrum) return {};
    double radius = 0.0;
    for (const auto& z : spectrum->eigenvalues) radius = std::max(radius, std::abs(z));
    std::vector<std::complex<double>> out;
    for (const auto& z : spectrum->eigenvalues) out.push_back(radius > 0.0 ? z / radius : z);
    return out;
}

std::string ClassificationVerdict::summary() const {
    std::ostringstream os;
    if (admits_negative_metric) {
        os << "admits a negatively curved left-invariant metric: eigenvalues of ad(u') on [g,g] "
           << format_spectrum(spectrum->eigenvalues);
        return os.str();
    }
    os << "does NOT admit: " << to_string(failure_reason);
    switch (failure_reason) {
    case FailureReason::dimension_gap:
        os << " (" << dim_g << " ≠ " << dim_derived << "+1)";
        break;
    case FailureReason::derived_zero:
        os << " (algebra is abelian)";
        break;
    case FailureReason::spectrum_mixed:
    case FailureReason::spectrum_imaginary_axis:
        os << " (eigenvalues " << format_spectrum(spectrum->eigenvalues) << ")";
        break;
    default:
        break;
    }
    return os.str();
}

ClassificationVerdict classify_solvable_negative(const LieAlgebra& alg, double tol) {
    ClassificationVerdict v;
    v.dim_g = alg.dim();
    const DerivedSeries series = derived_series(alg, tol);
    const Subspace& derived = series.derived_algebra();
    v.dim_derived = derived.dim();

    if (!series.is_solvable) {
        v.failure_reason = FailureReason::not_solvable;
        return v;
    }
    if (derived.dim() == 0) {
        v.failure_reason = FailureReason::derived_zero;
        return v;
    }
    if (abelian_residual(alg, derived) > tol * alg.bracket_scale()) {
        v.failure_reason = FailureReason::derived_not_abelian;
        return v;
    }
    if (v.dim_g != v.dim_derived + 1) {
        v.failure_reason = FailureReason::dimension_gap;
        return v;
    }

    // representative: the coordinate vector farthest from [g,g]; any choice
    // differs by a [g,g] shift and a scale, neither of which matters
    int best = 0;
    double best_dist = -1.0;
    for (int k = 0; k < alg.dim(); ++k) {
        const double dist = derived.distance(alg.unit(k));
        if (dist > best_dist * (1.0 + 1e-12)) {
            best_dist = dist;
            best = k;
        }
    }
    v.chosen_u = alg.unit(best);
    RestrictedAd ra = ad_restricted(alg, v.chosen_u, derived, tol);

    const double threshold = tol * ra.spectrum.operator_norm;
    int positive = 0, negative = 0, near_axis = 0;
    for (const auto& z : ra.spectrum.eigenvalues) {
        if (z.real() > threshold) {
            ++positive;
        } else if (z.real() < -threshold) {
            ++negative;
        } else {
            ++near_axis;
        }
    }
    const int count = static_cast<int>(ra.spectrum.eigenvalues.size());
    if (negative == count) {
        v.sign_flipped = true;
        v.chosen_u = -v.chosen_u;
        ra.matrix = -ra.matrix;
        ra.spectrum = spectrum(ra.matrix);
    }
    v.restricted_ad = ra.matrix;
    v.spectrum = ra.spectrum;

    if (near_axis > 0) {
        v.failure_reason = FailureReason::spectrum_imaginary_axis;
        v.borderline = true;
    } else if (positive == count || negative == count) {
        v.admits_negative_metric = true;
    } else {
        v.failure_reason = FailureReason::spectrum_mixed;
    }
    return v;
}

PositivityReport bracket_positivity_scan(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                         const Eigen::VectorXd& u_prime, const SampleOptions& samples, double tol,
                                         Execution exec) {
    const LieAlgebra& alg = d.algebra();
    if (norm.dim() != d.dim_m()) throw InvalidInput("norm dimension does not match dim m");
    if (u_prime.size() != alg.dim()) throw InvalidInput("u' has the wrong length");
    const Subspace derived = derived_series(alg, kDefaultLieTol).derived_algebra();
    if (derived.dim() == 0) throw InvalidInput("derived algebra is zero");
    for (int i = 0; i < derived.dim(); ++i) {
        if (d.h_leakage(derived.vector(i)) > 1e-9) throw InvalidInput("derived algebra is not contained in m");
    }
    if (!(derived.distance(u_prime) > kDefaultLieTol * std::max(1.0, u_prime.norm()))) {
        throw InvalidInput("u' lies in the derived algebra");
    }

    PositivityReport r;
    r.probe_count = static_cast<std::size_t>(derived.dim());
    r.sample_count = samples.count;
    r.seed = samples.seed;
    r.tolerance = tol;

    const std::size_t total = r.probe_count + samples.count;
    auto direction = [&](std::size_t i) -> Eigen::VectorXd {
        const Eigen::VectorXd c = i < r.probe_count
                                      ? Eigen::VectorXd::Unit(derived.dim(), static_cast<Eigen::Index>(i))
                                      : unit_sphere_sample(derived.dim(), i - r.probe_count, samples.seed, samples.mode);
        const Eigen::VectorXd u = d.project_m(derived.basis() * c);
        return u / norm.value(d.to_m(u));
    };
    const auto values = map_indices(total, exec, [&](std::size_t i) {
        const Eigen::VectorXd u = direction(i);
        const Eigen::VectorXd um = d.to_m(u);
        const Eigen::MatrixXd g = norm.fundamental_tensor(um).gram;
        return um.dot(g * d.to_m(alg.bracket(u_prime, u)));
    });

    r.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < total; ++i) {
        if (values[i] < r.min_value) {
            r.min_value = values[i];
            r.worst_sample = direction(i);
        }
    }
    r.pass = r.min_value > tol;
    return r;
}

ImplicationReport positivity_implies_spectrum(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                              const SampleOptions& samples, double tol, Execution exec) {
    ImplicationReport rep;
    rep.verdict = classify_solvable_negative(d.algebra(), kDefaultLieTol);
    if (!hypotheses_hold(rep.verdict.failure_reason)) {
        throw InvalidInput(std::string("hypotheses not met: ") + to_string(rep.verdict.failure_reason));
    }
    const Eigen::VectorXd u = rep.verdict.chosen_u;
    rep.scan_plus = bracket_positivity_scan(d, norm, u, samples, tol, exec);
    rep.scan_minus = bracket_positivity_scan(d, norm, -u, samples, tol, exec);

    const double threshold = kDefaultLieTol * rep.verdict.spectrum->operator_norm;
    auto right_half_plane = [&](double sign) {
        return std::all_of(rep.verdict.spectrum->eigenvalues.begin(), rep.verdict.spectrum->eigenvalues.end(),
                           [&](const std::complex<double>& z) { return sign * z.real() > threshold; });
    };
    for (const double sign : {1.0, -1.0}) {
        const PositivityReport& scan = sign > 0 ? rep.scan_plus : rep.scan_minus;
        if (scan.pass && !(rep.verdict.admits_negative_metric && right_half_plane(sign))) {
            rep.consistent = false;
            rep.counterexample = std::string("positivity holds for ") + (sign > 0 ? "+u'" : "-u'") +
                                 " but the spectrum of ad on [g,g] is not in the right half-plane";
        }
    }
    return rep;
}

IdealFlagScanReport abelian_ideal_flag_scan(const ReductiveDecomposition& d, const MinkowskiNorm& norm,
                                            const Subspace& ideal, const SampleOptions& samples, double tol,
                                            Execution exec) {
    const LieAlgebra& alg = d.algebra();
    if (ideal.ambient_dim() != alg.dim()) throw InvalidInput("invalid ideal: wrong ambient dimension");
    const double bound = kDefaultLieTol * alg.bracket_scale();
    if (abelian_residual(alg, ideal) > bound) throw InvalidInput("invalid ideal: not abelian");
    if (ideal_residual(alg, ideal) > bound) throw InvalidInput("invalid ideal: not an ideal");
    for (int i = 0; i < ideal.dim(); ++i) {
        if (d.h_leakage(ideal.vector(i)) > 1e-9) throw InvalidInput("invalid ideal: not contained in m");
    }

    const int k = ideal.dim();
    std::vector<std::pair<int, int>> probes;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) probes.emplace_back(i, j);

    const std::size_t total = probes.size() + (k > 0 ? samples.count : 0);
    const auto results = map_indices(total, exec, [&](std::size_t i) -> std::optional<IdealFlag> {
        Eigen::VectorXd y, v;
        if (i < probes.size()) {
            y = ideal.vector(probes[i].first);
            v = ideal.vector(probes[i].second);
        } else {
            const std::size_t s = i - probes.size();
            y = ideal.basis() * unit_sphere_sample(k, 2 * s, samples.seed, samples.mode);
            v = ideal.basis() * unit_sphere_sample(k, 2 * s + 1, samples.seed, samples.mode);
        }
        y = d.project_m(y);
        v = d.project_m(v);
        try {
            const auto fc = flag_curvature_go(d, norm, y, v, tol);
            return IdealFlag{y, v, fc.curvature};
        } catch (const Inapplicable&) {
            return std::nullopt;
        }
    });

    IdealFlagScanReport rep;
    rep.min_curvature = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
        if (!r) {
            ++rep.skipped;
            continue;
        }
        ++rep.applicable;
        rep.min_curvature = std::min(rep.min_curvature, r->curvature);
        rep.flags.push_back(*r);
    }
    if (rep.applicable == 0) rep.min_curvature = 0.0;
    return rep;
}

} // namespace hfinsler
