#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "hfinsler/errors.hpp"
#include "hfinsler/rigidity.hpp"
#include "support.hpp"

using namespace hfinsler;
using testsupport::vec;

namespace {

ClassificationVerdict classify(const std::string& name) {
    return classify_solvable_negative(*testsupport::load(name).algebra);
}

double max_spectrum_gap(const ClassificationVerdict& a, const ClassificationVerdict& b) {
    const auto sa = a.normalized_spectrum(), sb = b.normalized_spectrum();
    REQUIRE(sa.size() == sb.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) gap = std::max(gap, std::abs(sa[i] - sb[i]));
    return gap;
}

} // namespace

TEST_CASE("classifier examples") {
    SUBCASE("hyperbolic admits with spectrum {1,...,1}") {
        for (const char* name : {"hyperbolic2", "hyperbolic3", "hyperbolic5"}) {
            const auto v = classify(name);
            CHECK(v.admits_negative_metric);
            CHECK(v.failure_reason == FailureReason::none);
            CHECK(v.dim_g == v.dim_derived + 1);
            REQUIRE(v.spectrum.has_value());
            for (const auto& ev : v.spectrum->eigenvalues) CHECK(std::abs(ev - std::complex<double>(1, 0)) < 1e-12);
        }
    }
    SUBCASE("heisenberg: dimension gap") {
        const auto v = classify("heisenberg");
        CHECK_FALSE(v.admits_negative_metric);
        CHECK(v.failure_reason == FailureReason::dimension_gap);
        CHECK(v.summary() == "does NOT admit: dimension-gap (3 ≠ 1+1)");
    }
    SUBCASE("rotation: imaginary axis") {
        const auto v = classify("rotation11");
        CHECK(v.failure_reason == FailureReason::spectrum_imaginary_axis);
        REQUIRE(v.spectrum.has_value());
        for (const auto& ev : v.spectrum->eigenvalues) {
            CHECK(std::abs(ev.real()) < 1e-12);
            CHECK(std::abs(std::abs(ev.imag()) - 1.0) < 1e-12);
        }
        CHECK(v.borderline);
    }
    SUBCASE("diagonal mixed") {
        CHECK(classify("diagonal-mixed").failure_reason == FailureReason::spectrum_mixed);
    }
    SUBCASE("diagonal positive") {
        const auto v = classify("diagonal-positive");
        CHECK(v.admits_negative_metric);
        REQUIRE(v.spectrum.has_value());
        CHECK(v.spectrum->eigenvalues[0].real() == doctest::Approx(2.0));
        CHECK(v.spectrum->eigenvalues[1].real() == doctest::Approx(1.0));
    }
    SUBCASE("other reasons") {
        CHECK(classify("sl2").failure_reason == FailureReason::not_solvable);
        CHECK(classify("abelian2").failure_reason == FailureReason::derived_zero);
        // g = span{u, x, y, z, w} with [x,y] = z and ad(u) acting so [g,g] = span{x,y,z,...} is not abelian.
        LieAlgebra nonab({"u", "x", "y", "z"},
                         {{{0, 1}, vec({0, 1, 0, 0})}, {{0, 2}, vec({0, 0, 1, 0})}, {{0, 3}, vec({0, 0, 0, 2})},
                          {{1, 2}, vec({0, 0, 0, 1})}});
        REQUIRE(validate_jacobi(nonab).pass);
        CHECK(classify_solvable_negative(nonab).failure_reason == FailureReason::derived_not_abelian);
    }
    SUBCASE("left half-plane is accepted with u negated") {
        LieAlgebra neg({"u", "e1", "e2"}, {{{0, 1}, vec({0, -1, 0})}, {{0, 2}, vec({0, 0, -3})}});
        const auto v = classify_solvable_negative(neg);
        CHECK(v.admits_negative_metric);
        CHECK(v.sign_flipped);
        CHECK(v.chosen_u(0) < 0);
        for (const auto& ev : v.spectrum->eigenvalues) CHECK(ev.real() > 0);
    }
}

TEST_CASE("verdict invariants") {
    for (const char* name : {"hyperbolic3", "heisenberg", "rotation11", "rotation21", "diagonal-mixed",
                             "diagonal-positive", "sl2", "abelian2"}) {
        const auto v = classify(name);
        CAPTURE(name);
        CHECK((v.failure_reason == FailureReason::none) == v.admits_negative_metric);
        if (v.admits_negative_metric) {
            CHECK(v.dim_g == v.dim_derived + 1);
            for (const auto& ev : v.spectrum->eigenvalues) CHECK(ev.real() > 0);
        }
    }
}

TEST_CASE("classifier is representative independent") {
    for (const char* name : {"hyperbolic3", "diagonal-positive", "diagonal-mixed", "rotation21"}) {
        const Space s = testsupport::load(name);
        const LieAlgebra& g = *s.algebra;
        const auto base = classify_solvable_negative(g);
        const Subspace d = derived_series(g).derived_algebra();
        Eigen::VectorXd z = Eigen::VectorXd::Zero(g.dim());
        for (int i = 0; i < d.dim(); ++i) z += (0.5 + i) * d.vector(i);
        const Eigen::VectorXd u = base.chosen_u;
        for (const Eigen::VectorXd& alt : {Eigen::VectorXd(u + z), Eigen::VectorXd(3.0 * u)}) {
            const RestrictedAd a = ad_restricted(g, alt, d);
            const RestrictedAd b = ad_restricted(g, u, d);
            const double scale = alt.dot(u) / u.dot(u);
            CHECK((a.matrix - scale * b.matrix).norm() < 1e-10);
        }
    }
}

TEST_CASE("classifier is stable under a random change of basis") {
    std::mt19937_64 rng(41);
    for (const char* name : {"hyperbolic3", "heisenberg", "rotation11", "rotation21", "diagonal-mixed",
                             "diagonal-positive", "sl2", "abelian2"}) {
        const Space space = testsupport::load(name);
        const LieAlgebra& g = *space.algebra;
        const auto base = classify_solvable_negative(g);
        for (int t = 0; t < 5; ++t) {
            const auto v = classify_solvable_negative(g.change_basis(testsupport::random_invertible(g.dim(), rng)));
            CAPTURE(name);
            CHECK(v.admits_negative_metric == base.admits_negative_metric);
            CHECK(v.failure_reason == base.failure_reason);
            if (base.spectrum && v.spectrum) CHECK(max_spectrum_gap(v, base) < 1e-7);
        }
    }
}

TEST_CASE("bracket positivity scan") {
    SUBCASE("hyperbolic: value 1") {
        const Space s = testsupport::load("hyperbolic3");
        const auto r = bracket_positivity_scan(*s.decomposition, *s.norm, vec({1, 0, 0}), SampleOptions{300, 1});
        CHECK(r.pass);
        CHECK(std::abs(r.min_value - 1.0) < 1e-12);
    }
    SUBCASE("rotation: value 0") {
        const Space s = testsupport::load("rotation11");
        const auto r = bracket_positivity_scan(*s.decomposition, *s.norm, vec({1, 0, 0}), SampleOptions{300, 1});
        CHECK_FALSE(r.pass);
        CHECK(std::abs(r.min_value) < 1e-12);
    }
    SUBCASE("diagonal mixed: -1 at e2") {
        const Space s = testsupport::load("diagonal-mixed");
        const auto r = bracket_positivity_scan(*s.decomposition, *s.norm, vec({1, 0, 0}), SampleOptions{300, 1});
        CHECK_FALSE(r.pass);
        CHECK(std::abs(r.min_value + 1.0) < 1e-12);
        CHECK((r.worst_sample - vec({0, 0, 1})).norm() < 1e-12);
    }
    SUBCASE("diagonal positive: between 1 and 2") {
        const Space s = testsupport::load("diagonal-positive");
        const auto r = bracket_positivity_scan(*s.decomposition, *s.norm, vec({1, 0, 0}), SampleOptions{300, 1});
        CHECK(r.pass);
        CHECK(r.min_value >= 1.0 - 1e-12);
        CHECK(r.min_value <= 2.0);
    }
    SUBCASE("u' inside [g,g] is refused") {
        const Space s = testsupport::load("hyperbolic3");
        CHECK_THROWS_AS(bracket_positivity_scan(*s.decomposition, *s.norm, vec({0, 1, 0}), SampleOptions{10, 1}),
                        InvalidInput);
    }
    SUBCASE("zero derived algebra is refused") {
        const Space s = testsupport::load("abelian2");
        CHECK_THROWS_AS(bracket_positivity_scan(*s.decomposition, *s.norm, vec({1, 0}), SampleOptions{10, 1}),
                        InvalidInput);
    }
}

TEST_CASE("positivity implies the spectral condition") {
    for (const char* name : {"hyperbolic3", "hyperbolic3-randers", "rotation11", "diagonal-positive",
                             "diagonal-mixed"}) {
        const Space s = testsupport::load(name);
        const auto r = positivity_implies_spectrum(*s.decomposition, *s.norm, SampleOptions{500, 2});
        CAPTURE(name);
        CHECK(r.consistent);
    }
    const Space hyp = testsupport::load("hyperbolic3");
    const auto r = positivity_implies_spectrum(*hyp.decomposition, *hyp.norm, SampleOptions{100, 2});
    CHECK(r.scan_plus.pass);
    CHECK(r.verdict.admits_negative_metric);
    const Space rot = testsupport::load("rotation11");
    const auto rr = positivity_implies_spectrum(*rot.decomposition, *rot.norm, SampleOptions{100, 2});
    CHECK_FALSE(rr.scan_plus.pass);
    CHECK_FALSE(rr.scan_minus.pass);

    const Space heis = testsupport::load("heisenberg");
    CHECK_THROWS_AS(positivity_implies_spectrum(*heis.decomposition, *heis.norm, SampleOptions{10, 2}), InvalidInput);
}

TEST_CASE("abelian ideal flag scan") {
    SUBCASE("abelian: everything applicable, K = 0") {
        const Space s = testsupport::load("abelian2");
        const auto r = abelian_ideal_flag_scan(*s.decomposition, *s.norm, Subspace::whole(2), SampleOptions{50, 3});
        CHECK(r.applicable > 0);
        CHECK(r.skipped == 0);
        CHECK(r.min_curvature == 0.0);
    }
    SUBCASE("rotation21: K = 0.25 on the basis flags") {
        const Space s = testsupport::load("rotation21");
        Eigen::MatrixXd b(3, 2);
        b << 0, 0, 1, 0, 0, 1;
        const auto r = abelian_ideal_flag_scan(*s.decomposition, *s.norm, Subspace::span(b, 1e-12),
                                               SampleOptions{50, 3});
        CHECK(r.applicable >= 2);
        CHECK(r.min_curvature >= -1e-12);
        for (const auto& f : r.flags) CHECK(std::abs(f.curvature - 0.25) < 1e-10);
    }
    SUBCASE("hyperbolic: nothing applicable") {
        const Space s = testsupport::load("hyperbolic3");
        const auto r = abelian_ideal_flag_scan(*s.decomposition, *s.norm,
                                               derived_series(*s.algebra).derived_algebra(), SampleOptions{50, 3});
        CHECK(r.applicable == 0);
        CHECK(r.skipped > 0);
        CHECK(r.flags.empty());
    }
    SUBCASE("a non-ideal is refused") {
        const Space s = testsupport::load("hyperbolic3");
        CHECK_THROWS_AS(abelian_ideal_flag_scan(*s.decomposition, *s.norm, Subspace::span(vec({1, 0, 0}), 1e-12),
                                                SampleOptions{10, 3}),
                        InvalidInput);
    }
}
