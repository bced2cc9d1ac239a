#include "hfinsler/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "hfinsler/errors.hpp"

namespace hfinsler {

namespace {

void check_partition(int n, const std::vector<int>& h, const std::vector<int>& m) {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto* part : {&h, &m}) {
        for (int i : *part) {
            if (i < 0 || i >= n) throw InvalidInput("decomposition index " + std::to_string(i) + " out of range");
            if (seen[static_cast<std::size_t>(i)]++) {
                throw InvalidInput("basis index " + std::to_string(i) + " appears twice in h/m");
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw InvalidInput("h and m do not cover the basis");
    }
}

std::string pair_label(const LieAlgebra& alg, int i, int j) {
    const auto& names = alg.basis_names();
    return "[" + names[static_cast<std::size_t>(i)] + ", " + names[static_cast<std::size_t>(j)] + "]";
}

} // namespace

ClosureReport ReductiveDecomposition::check_closure(const LieAlgebra& alg, const std::vector<int>& h,
                                                    const std::vector<int>& m, double tol) {
    check_partition(alg.dim(), h, m);
    ClosureReport report;
    double worst = 0.0;
    for (std::size_t a = 0; a < h.size(); ++a) {
        for (std::size_t b = a + 1; b < h.size(); ++b) {
            const Eigen::VectorXd br = alg.bracket_basis(h[a], h[b]);
            for (int k : m) {
                const double r = std::abs(br(k));
                report.hh_residual = std::max(report.hh_residual, r);
                if (r > worst) {
                    worst = r;
                    report.worst_pair = pair_label(alg, h[a], h[b]);
                }
            }
        }
        for (int j : m) {
            const Eigen::VectorXd br = alg.bracket_basis(h[a], j);
            for (int k : h) {
                const double r = std::abs(br(k));
                report.hm_residual = std::max(report.hm_residual, r);
                if (r > worst) {
                    worst = r;
                    report.worst_pair = pair_label(alg, h[a], j);
                }
            }
        }
    }
    report.pass = worst <= tol * alg.bracket_scale();
    return report;
}

ReductiveDecomposition::ReductiveDecomposition(std::shared_ptr<const LieAlgebra> alg, std::vector<int> h,
                                               std::vector<int> m, bool)
    : alg_(std::move(alg)), h_(std::move(h)), m_(std::move(m)) {}

ReductiveDecomposition::ReductiveDecomposition(std::shared_ptr<const LieAlgebra> alg, std::vector<int> h_indices,
                                               std::vector<int> m_indices, double tol)
    : ReductiveDecomposition(std::move(alg), std::move(h_indices), std::move(m_indices), true) {
    if (!alg_) throw InvalidInput("decomposition needs an algebra");
    const ClosureReport report = check_closure(*alg_, h_, m_, tol);
    if (!report.pass) {
        throw InvalidInput("decomposition closure fails at " + report.worst_pair + ": residual " +
                           std::to_string(std::max(report.hh_residual, report.hm_residual)) +
                           " outside the required part");
    }
}

ReductiveDecomposition ReductiveDecomposition::trivial(std::shared_ptr<const LieAlgebra> alg) {
    std::vector<int> m(static_cast<std::size_t>(alg->dim()));
    for (int i = 0; i < alg->dim(); ++i) m[static_cast<std::size_t>(i)] = i;
    return ReductiveDecomposition(std::move(alg), {}, std::move(m), true);
}

Eigen::VectorXd ReductiveDecomposition::to_m(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(dim_m());
    for (int i = 0; i < dim_m(); ++i) out(i) = x(m_[static_cast<std::size_t>(i)]);
    return out;
}

Eigen::VectorXd ReductiveDecomposition::from_m(const Eigen::VectorXd& xm) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(alg_->dim());
    for (int i = 0; i < dim_m(); ++i) out(m_[static_cast<std::size_t>(i)]) = xm(i);
    return out;
}

Eigen::VectorXd ReductiveDecomposition::to_h(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(dim_h());
    for (int i = 0; i < dim_h(); ++i) out(i) = x(h_[static_cast<std::size_t>(i)]);
    return out;
}

Eigen::VectorXd ReductiveDecomposition::from_h(const Eigen::VectorXd& xh) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(alg_->dim());
    for (int i = 0; i < dim_h(); ++i) out(h_[static_cast<std::size_t>(i)]) = xh(i);
    return out;
}

Eigen::VectorXd ReductiveDecomposition::bracket_m(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return project_m(alg_->bracket(x, y));
}

Eigen::VectorXd ReductiveDecomposition::bracket_mm(const Eigen::VectorXd& xm, const Eigen::VectorXd& ym) const {
    return to_m(alg_->bracket(from_m(xm), from_m(ym)));
}

double ReductiveDecomposition::h_leakage(const Eigen::VectorXd& x) const {
    double leak = 0.0;
    for (int i : h_) leak = std::max(leak, std::abs(x(i)));
    return leak / std::max(1.0, x.norm());
}

void ReductiveDecomposition::require_in_m(const Eigen::VectorXd& x, const char* what, double tol) const {
    if (x.size() != alg_->dim()) {
        throw InvalidInput(std::string(what) + " has length " + std::to_string(x.size()) + ", expected " +
                           std::to_string(alg_->dim()));
    }
    if (!x.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
    if (h_leakage(x) > tol) throw InvalidInput(std::string(what) + " is not in m (has an h-component)");
}

} // namespace hfinsler
