#include "hfinsler/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hfinsler/errors.hpp"

namespace hfinsler {

const char* to_string(NormFamily f) {
    switch (f) {
    case NormFamily::riemannian: return "riemannian";
    case NormFamily::randers: return "randers";
    case NormFamily::quartic: return "quartic";
    }
    return "unknown";
}

std::optional<NormFamily> parse_norm_family(const std::string& s) {
    if (s == "riemannian") return NormFamily::riemannian;
    if (s == "randers") return NormFamily::randers;
    if (s == "quartic") return NormFamily::quartic;
    return std::nullopt;
}

double Tensor3::contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) const {
    return a.dot(slice(c) * b);
}

Eigen::MatrixXd Tensor3::slice(const Eigen::VectorXd& a) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) out(j, k) += a(i) * (*this)(i, j, k);
    return out;
}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

namespace {

void require_square_symmetric(const Eigen::MatrixXd& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) throw InvalidInput(std::string(what) + " must be square and nonempty");
    if (!a.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidInput(std::string(what) + " is not symmetric");
    }
}

bool positive_definite(const Eigen::MatrixXd& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    return llt.info() == Eigen::Success;
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

int multiplicity(const std::array<int, 4>& idx) {
    // number of distinct orderings of a sorted 4-tuple: 4! / prod(run!)
    static constexpr int fact[] = {1, 1, 2, 6, 24};
    int denom = 1;
    int run = 1;
    for (int t = 1; t < 4; ++t) {
        if (idx[static_cast<std::size_t>(t)] == idx[static_cast<std::size_t>(t - 1)]) {
            ++run;
        } else {
            denom *= fact[run];
            run = 1;
        }
    }
    denom *= fact[run];
    return 24 / denom;
}

} // namespace

MinkowskiNorm MinkowskiNorm::riemannian(Eigen::MatrixXd a) {
    require_square_symmetric(a, "riemannian matrix");
    MinkowskiNorm n;
    n.family_ = NormFamily::riemannian;
    n.dim_ = static_cast<int>(a.rows());
    n.admissible_ = positive_definite(a);
    n.a_ = std::move(a);
    return n;
}

MinkowskiNorm MinkowskiNorm::randers(Eigen::MatrixXd a, Eigen::VectorXd b) {
    require_square_symmetric(a, "randers matrix");
    if (b.size() != a.rows()) throw InvalidInput("randers covector length does not match the matrix");
    if (!b.allFinite()) throw InvalidInput("randers covector has non-finite entries");
    MinkowskiNorm n;
    n.family_ = NormFamily::randers;
    n.dim_ = static_cast<int>(a.rows());
    n.admissible_ = positive_definite(a);
    if (n.admissible_) {
        n.a_inv_ = a.llt().solve(Eigen::MatrixXd::Identity(n.dim_, n.dim_));
        n.admissible_ = b.dot(n.a_inv_ * b) < 1.0;
    }
    n.a_ = std::move(a);
    n.b_ = std::move(b);
    return n;
}

MinkowskiNorm MinkowskiNorm::quartic(int dim, QuarticCoefficients coefficients) {
    if (dim <= 0) throw InvalidInput("quartic norm needs a positive dimension");
    MinkowskiNorm n;
    n.family_ = NormFamily::quartic;
    n.dim_ = dim;
    n.q_.assign(static_cast<std::size_t>(dim * dim * dim * dim), 0.0);
    for (const auto& [idx, c] : coefficients) {
        for (int t = 0; t < 4; ++t) {
            const int v = idx[static_cast<std::size_t>(t)];
            if (v < 0 || v >= dim) throw InvalidInput("quartic index out of range");
            if (t > 0 && v < idx[static_cast<std::size_t>(t - 1)]) {
                throw InvalidInput("quartic coefficient keys must be sorted index tuples");
            }
        }
        if (!std::isfinite(c)) throw InvalidInput("non-finite quartic coefficient");
        const double entry = c / multiplicity(idx);
        std::array<int, 4> p = idx;
        do {
            n.q_[static_cast<std::size_t>(((p[0] * dim + p[1]) * dim + p[2]) * dim + p[3])] = entry;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    n.quartic_coeffs_ = std::move(coefficients);
    n.admissible_ = true;
    return n;
}

double MinkowskiNorm::quartic_entry(int i, int j, int k, int l) const {
    if (family_ != NormFamily::quartic) return 0.0;
    return q_[static_cast<std::size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l)];
}

void MinkowskiNorm::require_usable(const Eigen::VectorXd& y, bool nonzero) const {
    if (y.size() != dim_) {
        throw InvalidInput("vector has length " + std::to_string(y.size()) + ", norm expects " + std::to_string(dim_));
    }
    if (!y.allFinite()) throw InvalidInput("vector has non-finite entries");
    if (!admissible_) throw InvalidInput(std::string("inadmissible ") + to_string(family_) + " norm parameters");
    if (nonzero && y.cwiseAbs().maxCoeff() == 0.0) throw InvalidInput("base vector y must be nonzero");
}

MinkowskiNorm::QuarticJets MinkowskiNorm::quartic_jets(const Eigen::VectorXd& y, int order) const {
    const int n = dim_;
    QuarticJets j{0.0, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n), Tensor3(order >= 3 ? n : 0)};
    Tensor3 t3(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double s = 0.0;
                for (int d = 0; d < n; ++d) s += quartic_entry(a, b, c, d) * y(d);
                t3(a, b, c) = s;
            }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) j.q2(a, b) += t3(a, b, c) * y(c);
    j.q1 = j.q2 * y;
    j.q = j.q1.dot(y);
    if (order >= 3) j.q3 = std::move(t3);
    return j;
}

double MinkowskiNorm::value(const Eigen::VectorXd& y) const {
    require_usable(y, false);
    switch (family_) {
    case NormFamily::riemannian:
        return std::sqrt(std::max(0.0, y.dot(a_ * y)));
    case NormFamily::randers:
        return std::sqrt(std::max(0.0, y.dot(a_ * y))) + b_.dot(y);
    case NormFamily::quartic: {
        if (y.cwiseAbs().maxCoeff() == 0.0) return 0.0;
        const double q = quartic_jets(y, 1).q;
        if (!(q > 0.0)) throw InvalidInput("quartic form is not positive at the given vector");
        return std::pow(q, 0.25);
    }
    }
    return 0.0;
}

AnisotropicInnerProduct MinkowskiNorm::fundamental_tensor(const Eigen::VectorXd& y) const {
    require_usable(y, true);
    AnisotropicInnerProduct g{y, Eigen::MatrixXd()};
    switch (family_) {
    case NormFamily::riemannian:
        g.gram = a_;
        break;
    case NormFamily::randers: {
        // g = (F/alpha)(A - yh yh^T) + l l^T, with yh = Ay/alpha and l = dF = yh + b
        const double alpha = std::sqrt(y.dot(a_ * y));
        const Eigen::VectorXd yh = a_ * y / alpha;
        const double f = alpha + b_.dot(y);
        const Eigen::VectorXd l = yh + b_;
        g.gram = (f / alpha) * (a_ - yh * yh.transpose()) + l * l.transpose();
        g.gram = (0.5 * (g.gram + g.gram.transpose())).eval();
        break;
    }
    case NormFamily::quartic: {
        const QuarticJets j = quartic_jets(y, 2);
        if (!(j.q > 0.0)) throw InvalidInput("quartic form is not positive at the given vector");
        const Eigen::VectorXd q1 = 4.0 * j.q1;
        const Eigen::MatrixXd q2 = 12.0 * j.q2;
        g.gram = 0.25 * std::pow(j.q, -0.5) * q2 - 0.125 * std::pow(j.q, -1.5) * (q1 * q1.transpose());
        g.gram = (0.5 * (g.gram + g.gram.transpose())).eval();
        if (!positive_definite(g.gram)) {
            throw InvalidInput("fundamental tensor is not positive-definite (inadmissible quartic data)");
        }
        break;
    }
    }
    return g;
}

namespace {

// Writes x into all six index orders so the tensor is exactly symmetric.
void set_symmetric(Tensor3& t, int i, int j, int k, double x) {
    t(i, j, k) = t(i, k, j) = t(j, i, k) = t(j, k, i) = t(k, i, j) = t(k, j, i) = x;
}

} // namespace

CartanTensorValue MinkowskiNorm::cartan_tensor(const Eigen::VectorXd& y) const {
    require_usable(y, true);
    const int n = dim_;
    CartanTensorValue c{y, Tensor3(n)};
    switch (family_) {
    case NormFamily::riemannian:
        break;
    case NormFamily::randers: {
        // C_ijk = (h_ij d_k + h_jk d_i + h_ki d_j) / (2 alpha),
        // h = A - yh yh^T, d = b - (beta/alpha) yh
        const double alpha = std::sqrt(y.dot(a_ * y));
        const Eigen::VectorXd yh = a_ * y / alpha;
        const Eigen::MatrixXd h = a_ - yh * yh.transpose();
        const Eigen::VectorXd d = b_ - (b_.dot(y) / alpha) * yh;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    set_symmetric(c.tensor, i, j, k,
                                  (h(i, j) * d(k) + h(j, k) * d(i) + h(k, i) * d(j)) / (2.0 * alpha));
        break;
    }
    case NormFamily::quartic: {
        const QuarticJets j = quartic_jets(y, 3);
        if (!(j.q > 0.0)) throw InvalidInput("quartic form is not positive at the given vector");
        const Eigen::VectorXd q1 = 4.0 * j.q1;
        const Eigen::MatrixXd q2 = 12.0 * j.q2;
        const double a = 0.5 * std::pow(j.q, -0.5);
        const double b = 0.25 * std::pow(j.q, -1.5);
        const double e = 0.375 * std::pow(j.q, -2.5);
        for (int i = 0; i < n; ++i)
            for (int jj = i; jj < n; ++jj)
                for (int k = jj; k < n; ++k) {
                    const double d3 = a * 24.0 * j.q3(i, jj, k) -
                                      b * (q2(i, jj) * q1(k) + q2(i, k) * q1(jj) + q2(jj, k) * q1(i)) +
                                      e * q1(i) * q1(jj) * q1(k);
                    set_symmetric(c.tensor, i, jj, k, 0.25 * d3);
                }
        break;
    }
    }
    return c;
}

AdmissibilityReport check_admissible(const MinkowskiNorm& norm, const SampleOptions& samples, Execution exec) {
    AdmissibilityReport r;
    r.family = norm.family();
    switch (norm.family()) {
    case NormFamily::riemannian:
        r.min_eigenvalue = min_eigenvalue(norm.matrix());
        r.pass = norm.closed_form_admissible();
        r.detail = r.pass ? "A is positive-definite" : "A is not positive-definite";
        return r;
    case NormFamily::randers: {
        r.min_eigenvalue = min_eigenvalue(norm.matrix());
        if (r.min_eigenvalue <= 0.0) {
            r.detail = "A is not positive-definite";
            return r;
        }
        const Eigen::VectorXd& b = norm.covector();
        r.randers_b_norm_sq = b.dot(norm.matrix().llt().solve(b));
        r.pass = r.randers_b_norm_sq < 1.0;
        r.detail = r.pass ? "b^T A^-1 b < 1" : "b^T A^-1 b >= 1 (not strongly convex)";
        return r;
    }
    case NormFamily::quartic:
        break;
    }

    r.sampled = true;
    r.sample_count = samples.count;
    const int n = norm.dim();
    const auto mins = map_indices(samples.count, exec, [&](std::size_t i) {
        const Eigen::VectorXd y = unit_sphere_sample(n, i, samples.seed, samples.mode);
        try {
            return min_eigenvalue(norm.fundamental_tensor(y).gram);
        } catch (const InvalidInput&) {
            return -std::numeric_limits<double>::infinity();
        }
    });
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (double m : mins) r.min_eigenvalue = std::min(r.min_eigenvalue, m);
    r.pass = samples.count > 0 && r.min_eigenvalue > 0.0;
    r.detail = "g_y positive-definite at all " + std::to_string(samples.count) +
               " sampled directions is necessary, not sufficient";
    if (!r.pass) r.detail = "g_y fails positive-definiteness at a sampled direction";
    return r;
}

InvarianceReport check_adH_invariance(const MinkowskiNorm& norm, const ReductiveDecomposition& d,
                                      const SampleOptions& samples, double tol, Execution exec) {
    if (norm.dim() != d.dim_m()) throw InvalidInput("norm dimension does not match dim m");
    InvarianceReport r;
    if (d.dim_h() == 0) return r;

    const int p = d.dim_m();
    const LieAlgebra& alg = d.algebra();
    std::vector<Eigen::MatrixXd> ad_h;
    for (int k : d.h_indices()) {
        Eigen::MatrixXd a(p, p);
        for (int j = 0; j < p; ++j) a.col(j) = d.to_m(alg.bracket(alg.unit(k), d.from_m(Eigen::VectorXd::Unit(p, j))));
        ad_h.push_back(std::move(a));
    }

    const auto residuals = map_indices(samples.count, exec, [&](std::size_t i) {
        Eigen::VectorXd y = unit_sphere_sample(p, i, samples.seed, samples.mode);
        y /= norm.value(y);
        const Eigen::MatrixXd g = norm.fundamental_tensor(y).gram;
        const Tensor3 c = norm.cartan_tensor(y).tensor;
        double worst = 0.0;
        for (const auto& a : ad_h) {
            const Eigen::MatrixXd res = a.transpose() * g + g * a + 2.0 * c.slice(a * y);
            worst = std::max(worst, res.cwiseAbs().maxCoeff());
        }
        return worst;
    });
    for (double x : residuals) r.max_residual = std::max(r.max_residual, x);
    r.samples_checked = samples.count;
    r.pass = r.max_residual <= tol * alg.bracket_scale();
    return r;
}

} // namespace hfinsler
