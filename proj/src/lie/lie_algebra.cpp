#include "hfinsler/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hfinsler/errors.hpp"

namespace hfinsler {

LieAlgebra::LieAlgebra(std::vector<std::string> basis_names, Constants upper_constants)
    : names_(std::move(basis_names)) {
    const int n = dim();
    if (n <= 0) throw InvalidInput("Lie algebra needs a positive dimension");
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) throw InvalidInput("empty basis name");
        if (!seen.insert(name).second) throw InvalidInput("duplicate basis name '" + name + "'");
    }

    table_.assign(static_cast<std::size_t>(n * n), Eigen::VectorXd::Zero(n));
    double largest = 0.0;
    for (auto& [key, coeffs] : upper_constants) {
        const auto [i, j] = key;
        if (i < 0 || j < 0 || i >= n || j >= n || i >= j) {
            throw InvalidInput("structure constants must be keyed by index pairs i < j < dim");
        }
        if (coeffs.size() != n) throw InvalidInput("structure constant vector has wrong length");
        if (!coeffs.allFinite()) throw InvalidInput("non-finite structure constant");
        if (coeffs.cwiseAbs().maxCoeff() == 0.0) continue;
        table_[static_cast<std::size_t>(i * n + j)] = coeffs;
        table_[static_cast<std::size_t>(j * n + i)] = -coeffs;
        largest = std::max(largest, coeffs.cwiseAbs().maxCoeff());
        upper_.emplace(key, coeffs);
    }
    bracket_scale_ = std::max(1.0, largest);
}

LieAlgebra LieAlgebra::abelian(int dim) {
    std::vector<std::string> names;
    for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
    return LieAlgebra(std::move(names), {});
}

std::optional<int> LieAlgebra::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

void LieAlgebra::check_length(const Eigen::VectorXd& v, const char* what) const {
    if (v.size() != dim()) {
        throw InvalidInput(std::string(what) + " has length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(dim()));
    }
}

Eigen::VectorXd LieAlgebra::bracket_basis(int i, int j) const {
    return table_[static_cast<std::size_t>(i * dim() + j)];
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    check_length(x, "bracket argument x");
    check_length(y, "bracket argument y");
    const int n = dim();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    // sum over i < j of (x_i y_j - x_j y_i) [e_i, e_j]; antisymmetry is exact
    for (const auto& [key, c] : upper_) {
        const auto [i, j] = key;
        const double w = x(i) * y(j) - x(j) * y(i);
        if (w != 0.0) out += w * c;
    }
    return out;
}

Eigen::MatrixXd LieAlgebra::ad(const Eigen::VectorXd& u) const {
    check_length(u, "ad argument");
    const int n = dim();
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j) m.col(j) = bracket(u, unit(j));
    return m;
}

Eigen::MatrixXd LieAlgebra::killing_form() const {
    const int n = dim();
    std::vector<Eigen::MatrixXd> ads;
    ads.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ads.push_back(ad(unit(i)));
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            b(i, j) = b(j, i) = (ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)]).trace();
        }
    }
    return b;
}

LieAlgebra LieAlgebra::change_basis(const Eigen::MatrixXd& t) const {
    const int n = dim();
    if (t.rows() != n || t.cols() != n) throw InvalidInput("basis change matrix has wrong shape");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
    if (!lu.isInvertible()) throw InvalidInput("basis change matrix is singular");
    Constants c;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            c.emplace(PairKey{a, b}, lu.solve(bracket(t.col(a), t.col(b))));
        }
    }
    return LieAlgebra(names_, std::move(c));
}

JacobiReport validate_jacobi(const LieAlgebra& alg, double tol) {
    JacobiReport report;
    const int n = alg.dim();
    // the cyclic sum is totally antisymmetric, so i < j < k covers every triple
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const Eigen::VectorXd x = alg.unit(i), y = alg.unit(j), z = alg.unit(k);
                const Eigen::VectorXd r = alg.bracket(x, alg.bracket(y, z)) +
                                          alg.bracket(y, alg.bracket(z, x)) +
                                          alg.bracket(z, alg.bracket(x, y));
                const double res = r.cwiseAbs().maxCoeff();
                if (res > report.max_residual) {
                    report.max_residual = res;
                    report.worst_triple = {i, j, k};
                }
            }
        }
    }
    report.pass = report.max_residual <= tol;
    return report;
}

Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b, double tol) {
    const int n = alg.dim();
    Eigen::MatrixXd cols(n, a.dim() * b.dim());
    int c = 0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < b.dim(); ++j) cols.col(c++) = alg.bracket(a.vector(i), b.vector(j));
    }
    return Subspace::span(cols, tol, alg.bracket_scale());
}

DerivedSeries derived_series(const LieAlgebra& alg, double tol) {
    DerivedSeries series;
    series.terms.push_back(Subspace::whole(alg.dim()));
    while (true) {
        const Subspace& cur = series.terms.back();
        Subspace next = bracket_span(alg, cur, cur, tol);
        const int next_dim = next.dim();
        const int cur_dim = cur.dim();
        series.terms.push_back(std::move(next));
        if (next_dim == 0) {
            series.is_solvable = true;
            break;
        }
        if (next_dim == cur_dim) break;
    }
    return series;
}

SpectrumResult spectrum(const Eigen::MatrixXd& op) {
    SpectrumResult out;
    if (op.rows() == 0) return out;
    Eigen::EigenSolver<Eigen::MatrixXd> es(op, false);
    if (es.info() != Eigen::Success) throw InconsistentResult("eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    out.operator_norm = op.cwiseAbs().rowwise().sum().maxCoeff();
    return out;
}

RestrictedAd ad_restricted(const LieAlgebra& alg, const Eigen::VectorXd& u, const Eigen::MatrixXd& basis,
                           double tol) {
    if (basis.rows() != alg.dim()) throw InvalidInput("subspace basis has wrong ambient dimension");
    const Eigen::MatrixXd full = alg.ad(u);
    RestrictedAd out;
    if (basis.cols() == 0) {
        out.matrix = Eigen::MatrixXd::Zero(0, 0);
        return out;
    }
    const Eigen::MatrixXd image = full * basis;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    if (qr.rank() < basis.cols()) throw InvalidInput("subspace basis is not linearly independent");
    out.matrix = qr.solve(image);
    out.invariance_residual = (basis * out.matrix - image).colwise().norm().maxCoeff();
    const double op_norm = full.cwiseAbs().rowwise().sum().maxCoeff();
    const double scale = op_norm * basis.colwise().norm().maxCoeff();
    if (out.invariance_residual > tol * std::max(scale, 1e-300)) {
        throw InvalidInput("subspace not invariant under ad(u): residual " +
                           std::to_string(out.invariance_residual));
    }
    out.spectrum = spectrum(out.matrix);
    return out;
}

RestrictedAd ad_restricted(const LieAlgebra& alg, const Eigen::VectorXd& u, const Subspace& sub, double tol) {
    return ad_restricted(alg, u, sub.basis(), tol);
}

Subspace radical(const LieAlgebra& alg, double tol) {
    const int n = alg.dim();
    const Subspace derived = bracket_span(alg, Subspace::whole(n), Subspace::whole(n), tol);
    if (derived.dim() == 0) return Subspace::whole(n);
    const Eigen::MatrixXd killing = alg.killing_form();
    // rows of derived^T * B are the functionals whose common kernel is the radical
    const Eigen::MatrixXd functionals = (derived.basis().transpose() * killing).transpose();
    const double scale = std::max(1.0, killing.cwiseAbs().maxCoeff());
    return Subspace::span(functionals, tol, scale).complement();
}

bool is_semisimple(const LieAlgebra& alg, double tol) {
    const Eigen::MatrixXd killing = alg.killing_form();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(killing);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    return smax > 0.0 && smin > tol * smax;
}

double abelian_residual(const LieAlgebra& alg, const Subspace& s) {
    double worst = 0.0;
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = i + 1; j < s.dim(); ++j) {
            worst = std::max(worst, alg.bracket(s.vector(i), s.vector(j)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double ideal_residual(const LieAlgebra& alg, const Subspace& s) {
    double worst = 0.0;
    for (int k = 0; k < alg.dim(); ++k) {
        for (int i = 0; i < s.dim(); ++i) {
            worst = std::max(worst, s.distance(alg.bracket(alg.unit(k), s.vector(i))));
        }
    }
    return worst;
}

std::optional<Subspace> find_abelian_ideal(const LieAlgebra& alg, double tol) {
    if (is_semisimple(alg, tol)) return std::nullopt;
    Subspace cur = radical(alg, tol);
    if (cur.dim() == 0) {
        throw InconsistentResult("Killing form is degenerate but the radical came out zero");
    }
    while (true) {
        Subspace next = bracket_span(alg, cur, cur, tol);
        if (next.dim() == 0) break;
        if (next.dim() == cur.dim()) {
            throw InconsistentResult("derived series of the radical does not terminate");
        }
        cur = std::move(next);
    }
    const double bound = tol * alg.bracket_scale();
    if (abelian_residual(alg, cur) > bound || ideal_residual(alg, cur) > bound) {
        throw InconsistentResult("candidate abelian ideal failed verification");
    }
    return cur;
}

} // namespace hfinsler
