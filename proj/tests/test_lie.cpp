#include <doctest.h>

#include <memory>
#include <random>

#include "hfinsler/decomposition.hpp"
#include "hfinsler/errors.hpp"
#include "hfinsler/lie_algebra.hpp"
#include "support.hpp"

using namespace hfinsler;
using testsupport::vec;

namespace {

LieAlgebra heisenberg() {
    return LieAlgebra({"e1", "e2", "e3"}, {{{0, 1}, vec({0, 0, 1})}});
}

LieAlgebra hyperbolic(int n) {
    std::vector<std::string> names{"u"};
    LieAlgebra::Constants c;
    for (int i = 1; i < n; ++i) {
        names.push_back("e" + std::to_string(i));
        c[{0, i}] = Eigen::VectorXd::Unit(n, i);
    }
    return LieAlgebra(names, c);
}

LieAlgebra sl2() {
    // [H,E] = 2E, [H,F] = -2F, [E,F] = H
    return LieAlgebra({"H", "E", "F"},
                      {{{0, 1}, vec({0, 2, 0})}, {{0, 2}, vec({0, 0, -2})}, {{1, 2}, vec({1, 0, 0})}});
}

LieAlgebra so3() {
    return LieAlgebra({"e1", "e2", "e3"},
                      {{{0, 1}, vec({0, 0, 1})}, {{1, 2}, vec({1, 0, 0})}, {{0, 2}, vec({0, -1, 0})}});
}

LieAlgebra rotation(double a, double b) {
    return LieAlgebra({"u", "e1", "e2"}, {{{0, 1}, vec({0, 0, a})}, {{0, 2}, vec({0, -b, 0})}});
}

} // namespace

TEST_CASE("bracket table is antisymmetric and bilinear") {
    const LieAlgebra g = heisenberg();
    CHECK(g.bracket(g.unit(0), g.unit(1)).isApprox(vec({0, 0, 1})));
    CHECK(g.bracket(g.unit(1), g.unit(0)).isApprox(vec({0, 0, -1})));
    CHECK(g.bracket(g.unit(0), g.unit(0)).norm() == 0.0);
    const Eigen::VectorXd x = vec({1, 2, 3}), y = vec({-1, 0.5, 4});
    // [x, y] = (x1 y2 - x2 y1) e3
    CHECK(g.bracket(x, y).isApprox(vec({0, 0, 1 * 0.5 - 2 * -1})));
    CHECK((g.ad(x) * y).isApprox(g.bracket(x, y)));
    CHECK(g.bracket_scale() == 1.0);
    CHECK(g.index_of("e2") == 1);
    CHECK_FALSE(g.index_of("z").has_value());
}

TEST_CASE("bracket rejects wrong-length vectors") {
    const LieAlgebra g = heisenberg();
    CHECK_THROWS_AS(g.bracket(vec({1, 0}), vec({0, 1, 0})), InvalidInput);
}

TEST_CASE("Jacobi identity: valid algebras pass, a perturbed one fails") {
    CHECK(validate_jacobi(heisenberg()).pass);
    CHECK(validate_jacobi(sl2()).pass);
    CHECK(validate_jacobi(so3()).pass);
    CHECK(validate_jacobi(hyperbolic(5)).pass);

    // hyperbolic3 plus [e1,e2] = u: the cyclic sum on (u, e1, e2) is -2u.
    LieAlgebra bad({"u", "e1", "e2"},
                   {{{0, 1}, vec({0, 1, 0})}, {{0, 2}, vec({0, 0, 1})}, {{1, 2}, vec({1, 0, 0})}});
    const JacobiReport r = validate_jacobi(bad);
    CHECK_FALSE(r.pass);
    CHECK(r.max_residual == doctest::Approx(2.0));
    CHECK((r.worst_triple == std::array<int, 3>{0, 1, 2}));

    // [e1,e2] = e3, [e3,e4] = e1: fails on (e1, e2, e4).
    LieAlgebra bad2({"e1", "e2", "e3", "e4"}, {{{0, 1}, vec({0, 0, 1, 0})}, {{2, 3}, vec({1, 0, 0, 0})}});
    const JacobiReport r2 = validate_jacobi(bad2);
    CHECK_FALSE(r2.pass);
    CHECK((r2.worst_triple == std::array<int, 3>{0, 1, 3}));
}

TEST_CASE("derived series") {
    SUBCASE("abelian") {
        const DerivedSeries s = derived_series(LieAlgebra::abelian(3));
        CHECK(s.is_solvable);
        CHECK(s.derived_algebra().dim() == 0);
    }
    SUBCASE("heisenberg") {
        const DerivedSeries s = derived_series(heisenberg());
        CHECK(s.is_solvable);
        REQUIRE(s.terms.size() == 3);
        CHECK(s.terms[1].dim() == 1);
        CHECK(s.terms[1].distance(vec({0, 0, 1})) < 1e-12);
        CHECK(s.terms[2].dim() == 0);
    }
    SUBCASE("sl2 is perfect") {
        const DerivedSeries s = derived_series(sl2());
        CHECK_FALSE(s.is_solvable);
        CHECK(s.derived_algebra().dim() == 3);
    }
    SUBCASE("hyperbolic") {
        const DerivedSeries s = derived_series(hyperbolic(4));
        CHECK(s.is_solvable);
        CHECK(s.derived_algebra().dim() == 3);
    }
}

TEST_CASE("restricted ad on an invariant subspace") {
    const LieAlgebra g = rotation(2, 1);
    Eigen::MatrixXd basis(3, 2);
    basis << 0, 0, 1, 0, 0, 1;
    const RestrictedAd r = ad_restricted(g, g.unit(0), basis);
    Eigen::MatrixXd want(2, 2);
    want << 0, -1, 2, 0;
    CHECK(r.matrix.isApprox(want));
    REQUIRE(r.spectrum.eigenvalues.size() == 2);
    for (const auto& ev : r.spectrum.eigenvalues) {
        CHECK(std::abs(ev.real()) < 1e-12);
        CHECK(std::abs(std::abs(ev.imag()) - std::sqrt(2.0)) < 1e-12);
    }

    // A non-orthonormal basis gives a similar matrix, hence the same spectrum.
    Eigen::MatrixXd skew(3, 2);
    skew << 0, 0, 1, 1, 0, 3;
    const RestrictedAd r2 = ad_restricted(g, g.unit(0), skew);
    CHECK(std::abs(r2.matrix.trace() - want.trace()) < 1e-12);
    CHECK(std::abs(r2.matrix.determinant() - want.determinant()) < 1e-12);

    // span{u} is not ad(e1)-invariant.
    Eigen::MatrixXd ubasis = vec({1, 0, 0});
    CHECK_THROWS_AS(ad_restricted(g, g.unit(1), ubasis), InvalidInput);
}

TEST_CASE("spectrum orders by real part") {
    Eigen::MatrixXd m(3, 3);
    m << 1, 0, 0, 0, -2, 0, 0, 0, 3;
    const SpectrumResult s = spectrum(m);
    REQUIRE(s.eigenvalues.size() == 3);
    CHECK(s.eigenvalues[0].real() == doctest::Approx(3));
    CHECK(s.eigenvalues[2].real() == doctest::Approx(-2));
    CHECK(s.operator_norm == doctest::Approx(3));
}

TEST_CASE("ad(u + z) agrees with ad(u) on an abelian derived algebra") {
    const LieAlgebra g = hyperbolic(4);
    const Subspace d = derived_series(g).derived_algebra();
    const Eigen::VectorXd z = vec({0, 0.3, -1.2, 2.0});
    const RestrictedAd a = ad_restricted(g, g.unit(0), d);
    const RestrictedAd b = ad_restricted(g, g.unit(0) + z, d);
    CHECK((a.matrix - b.matrix).norm() < 1e-12);
}

TEST_CASE("derived dimension survives a random change of basis") {
    std::mt19937_64 rng(7);
    for (const LieAlgebra& g : {heisenberg(), hyperbolic(4), sl2(), rotation(2, 1)}) {
        const Eigen::MatrixXd T = testsupport::random_invertible(g.dim(), rng);
        const LieAlgebra h = g.change_basis(T);
        CHECK(validate_jacobi(h).pass);
        CHECK(derived_series(h).derived_algebra().dim() == derived_series(g).derived_algebra().dim());
        CHECK(derived_series(h).is_solvable == derived_series(g).is_solvable);
        // Brackets transform covariantly: [Ta, Tb] = T [a, b]'.
        const Eigen::VectorXd a = testsupport::random_unit(g.dim(), rng);
        const Eigen::VectorXd b = testsupport::random_unit(g.dim(), rng);
        CHECK((g.bracket(T * a, T * b) - T * h.bracket(a, b)).norm() < 1e-10);
    }
}

TEST_CASE("abelian ideals") {
    SUBCASE("heisenberg: center") {
        const auto a = find_abelian_ideal(heisenberg());
        REQUIRE(a.has_value());
        CHECK(a->dim() == 1);
        CHECK(a->distance(vec({0, 0, 1})) < 1e-12);
        CHECK(abelian_residual(heisenberg(), *a) < 1e-12);
        CHECK(ideal_residual(heisenberg(), *a) < 1e-12);
    }
    SUBCASE("hyperbolic: [g,g]") {
        const auto a = find_abelian_ideal(hyperbolic(3));
        REQUIRE(a.has_value());
        CHECK(a->dim() == 2);
        CHECK(a->distance(vec({0, 1, 0})) < 1e-12);
    }
    SUBCASE("abelian: whole algebra") {
        const auto a = find_abelian_ideal(LieAlgebra::abelian(2));
        REQUIRE(a.has_value());
        CHECK(a->dim() == 2);
    }
    SUBCASE("semisimple: none") {
        CHECK(is_semisimple(sl2()));
        CHECK(is_semisimple(so3()));
        CHECK_FALSE(find_abelian_ideal(sl2()).has_value());
    }
    SUBCASE("a non-ideal subspace is detected") {
        const LieAlgebra g = hyperbolic(3);
        const Subspace s = Subspace::span(vec({1, 0, 0}), 1e-12);
        CHECK(ideal_residual(g, s) > 0.5);
    }
}

TEST_CASE("subspace basis is canonical for coordinate spans") {
    Eigen::MatrixXd m(3, 2);
    m << 0, 0, 2, 1, 0, 1;
    const Subspace s = Subspace::span(m, 1e-12);
    CHECK(s.dim() == 2);
    CHECK(s.vector(0).isApprox(vec({0, 1, 0})));
    CHECK(s.vector(1).isApprox(vec({0, 0, 1})));
    CHECK(s.complement().dim() == 1);
    CHECK(s.complement().vector(0).isApprox(vec({1, 0, 0})));
}

TEST_CASE("reductive decomposition closure") {
    SUBCASE("so3 with h = e3 is valid") {
        auto g = std::make_shared<const LieAlgebra>(so3());
        const ReductiveDecomposition d(g, {2}, {0, 1});
        CHECK(d.dim_m() == 2);
        CHECK(d.to_m(vec({1, 2, 3})).isApprox(vec({1, 2})));
        CHECK(d.from_m(vec({1, 2})).isApprox(vec({1, 2, 0})));
        // [e1, e2] = e3 lies in h, so its m-part is zero.
        CHECK(d.bracket_m(g->unit(0), g->unit(1)).norm() == 0.0);
    }
    SUBCASE("hyperbolic with h = e1 is rejected") {
        auto g = std::make_shared<const LieAlgebra>(hyperbolic(3));
        const ClosureReport r = ReductiveDecomposition::check_closure(*g, {1}, {0, 2}, kDefaultLieTol);
        CHECK_FALSE(r.pass);
        CHECK(r.hm_residual == doctest::Approx(1.0));
        CHECK_THROWS_AS(ReductiveDecomposition(g, {1}, {0, 2}), InvalidInput);
    }
    SUBCASE("sl2 with h = E is rejected") {
        auto g = std::make_shared<const LieAlgebra>(sl2());
        CHECK_THROWS_AS(ReductiveDecomposition(g, {1}, {0, 2}), InvalidInput);
    }
    SUBCASE("bad partitions") {
        auto g = std::make_shared<const LieAlgebra>(so3());
        CHECK_THROWS_AS(ReductiveDecomposition(g, {2}, {0, 2}), InvalidInput);
        CHECK_THROWS_AS(ReductiveDecomposition(g, {}, {0, 1}), InvalidInput);
    }
    SUBCASE("vectors with an h-component are refused") {
        auto g = std::make_shared<const LieAlgebra>(so3());
        const ReductiveDecomposition d(g, {2}, {0, 1});
        CHECK_THROWS_AS(d.require_in_m(vec({1, 0, 0.5}), "x", 1e-9), InvalidInput);
        CHECK_NOTHROW(d.require_in_m(vec({1, 0, 0}), "x", 1e-9));
    }
}
