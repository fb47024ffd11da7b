#include "gaudin/duality.hpp"

#include <catch_amalgamated.hpp>

using namespace gaudin;

namespace {

DualityScenario scenario(int d, int p, int q, int m, int n, std::vector<int> xi, std::vector<int> gamma,
                         std::vector<Rational> w, std::vector<Rational> z, int low = -5)
{
    DualityScenario sc;
    sc.d = d;
    sc.p = p;
    sc.q = q;
    sc.m = m;
    sc.n = n;
    sc.xi = std::move(xi);
    sc.gamma = std::move(gamma);
    sc.w = std::move(w);
    sc.z = std::move(z);
    sc.zmin = sc.dmin = low;
    return sc;
}

} // namespace

TEST_CASE("scenario validation", "[duality]")
{
    auto ok = scenario(1, 0, 0, 1, 0, {1}, {1}, {Rational(2)}, {Rational(3)});
    CHECK_NOTHROW(ok.validate());
    auto bad = ok;
    bad.xi = {2};
    CHECK_THROWS_WITH(bad.validate(), Catch::Matchers::ContainsSubstring("sum to d"));
    bad = ok;
    bad.z = {};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.gamma = {2};
    CHECK_THROWS_WITH(bad.validate(), Catch::Matchers::ContainsSubstring("does not split"));
    auto mixed = scenario(2, 1, 1, 1, 1, {2}, {1, 1, 1, 1}, {Rational(1)}, {1, 2, 3, 4});
    CHECK(mixed.signed_orders() == std::vector<int>{1, -1, 1, -1});
}

TEST_CASE("oscillator realizations on a small case", "[duality]")
{
    DualityMaps maps(scenario(1, 0, 0, 1, 0, {1}, {1}, {Rational(2)}, {Rational(3)}));
    const auto& alg = maps.weyl();
    WeylElement x = WeylElement::generator(alg, alg->x(1, 1));
    WeylElement dx = WeylElement::generator(alg, alg->dx(1, 1));
    CHECK(maps.phi_d(0, 0, 0) == dx * x);
    CHECK(maps.phi_d(0, 0, 0) == x * dx + WeylElement(alg, 1));
    CHECK(maps.phi_s(0, 0, 0) == x * dx);
    CHECK(maps.phi_s(0, 0, 0, Quadrant::xx) == -(x * dx));
    CHECK_THROWS_AS(maps.phi_d(0, 0, 1), std::out_of_range);

    // Odd column variable: phi_d(e) = -dx x = x dx - 1.
    DualityMaps odd(scenario(1, 0, 0, 0, 1, {1}, {1}, {Rational(2)}, {Rational(3)}));
    const auto& a2 = odd.weyl();
    WeylElement xo = WeylElement::generator(a2, a2->x(1, 1));
    WeylElement dxo = WeylElement::generator(a2, a2->dx(1, 1));
    CHECK(odd.phi_d(0, 0, 0) == -(dxo * xo));
    CHECK(odd.phi_d(0, 0, 0) == xo * dxo - WeylElement(a2, 1));
}

TEST_CASE("quantum identity against a hand expansion", "[duality]")
{
    // d = 1, one even column: both sides equal (z - w)(dz - z1) - x dx.
    auto sc = scenario(1, 0, 0, 1, 0, {1}, {1}, {Rational(2)}, {Rational(3)});
    DualityMaps maps(sc);
    const auto& alg = maps.weyl();
    using P = Psdo<WeylElement>;
    const Horizon h = sc.horizon();
    WeylElement one(alg, 1);
    WeylElement xdx = WeylElement::generator(alg, alg->x(1, 1)) * WeylElement::generator(alg, alg->dx(1, 1));
    P zw = P::monomial(one, 1, 0, h) - P::constant(one * Rational(2), h);
    P dz = P::monomial(one, 0, 1, h) - P::constant(one * Rational(3), h);
    P hand = zw * dz - P::constant(xdx, h);
    auto sides = quantum_sides(maps);
    CHECK(compare_series(dz_prefactor(maps, false, false, h) * sides.cdet_d, hand, -5, 3, -5, 3).pass);
    CHECK(compare_series(z_prefactor(maps, 1, h) * sides.ber_s, hand, -4, 3, -5, 3).pass);
    auto out = verify_quantum_duality(maps);
    CHECK(out.pass);
    CHECK(out.cleared_pass);
    CHECK(out.main.positions > 0);
    // The whole requested window is compared, not just its trusted part.
    CHECK(out.main.covered);
    CHECK(out.main.zlow == -5);
    CHECK(out.main.dlow == -5);
}

TEST_CASE("quantum identity on small super cases", "[duality]")
{
    std::vector<DualityScenario> cases{
        scenario(1, 0, 0, 0, 1, {1}, {1}, {Rational(-1)}, {Rational(5, 2)}),
        scenario(1, 1, 0, 0, 0, {1}, {1}, {Rational(1)}, {Rational(4)}),
        scenario(1, 0, 1, 0, 0, {1}, {1}, {Rational(1)}, {Rational(4)}),
        scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)}),
        scenario(2, 0, 0, 1, 0, {1, 1}, {1}, {Rational(1), Rational(3)}, {Rational(-2)}),
        scenario(2, 0, 0, 1, 0, {2}, {1}, {Rational(1, 2)}, {Rational(1)}),
    };
    for (const auto& sc : cases) {
        DualityMaps maps(sc);
        auto out = verify_quantum_duality(maps);
        INFO("p q m n = " << sc.p << sc.q << sc.m << sc.n << " d = " << sc.d);
        if (out.main.witness)
            INFO("witness at " << out.main.witness->zexp << "," << out.main.witness->dexp << ": "
                               << out.main.witness->lhs << " vs " << out.main.witness->rhs);
        CHECK(out.main.pass);
        CHECK(out.main.covered);
        CHECK(out.cleared_pass);
    }
}

TEST_CASE("sign mutation is detected", "[duality]")
{
    auto sc = scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)});
    DualityMaps maps(sc);
    auto out = verify_quantum_duality(maps, Quadrant::xx);
    CHECK(!out.pass);
    REQUIRE(out.main.witness.has_value());
    CHECK(out.main.witness->lhs != out.main.witness->rhs);
    auto y = scenario(1, 1, 0, 0, 0, {1}, {1}, {Rational(1)}, {Rational(4)});
    CHECK(!verify_quantum_duality(DualityMaps(y), Quadrant::yy).pass);
}

TEST_CASE("coefficient reports are deterministic", "[duality]")
{
    auto sc = scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)});
    auto a = verify_quantum_duality(DualityMaps(sc));
    auto b = verify_quantum_duality(DualityMaps(sc));
    REQUIRE(a.main.outcomes.size() == b.main.outcomes.size());
    for (std::size_t i = 0; i < a.main.outcomes.size(); ++i) {
        CHECK(a.main.outcomes[i].lhs_hash == b.main.outcomes[i].lhs_hash);
        CHECK(a.main.outcomes[i].lhs_hash == a.main.outcomes[i].rhs_hash);
    }
    CHECK(stable_hash("") == "cbf29ce484222325");
}

TEST_CASE("classical identity", "[duality]")
{
    // d = 1 hand expansion: (z - z1)(w - w1) - x p on both sides.
    auto sc = scenario(1, 0, 0, 1, 0, {1}, {1}, {Rational(2)}, {Rational(3)});
    DualityMaps maps(sc);
    auto out = verify_classical_duality(maps);
    CHECK(out.pass);
    CHECK(out.main.covered);
    CHECK(out.transpose_invariant);
    for (const auto& s : {scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)}),
                          scenario(1, 1, 1, 0, 0, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)}),
                          scenario(2, 0, 0, 1, 0, {2}, {1}, {Rational(1, 2)}, {Rational(1)})}) {
        auto r = verify_classical_duality(DualityMaps(s));
        CHECK(r.pass);
    }
}

TEST_CASE("realizations are homomorphisms and the two sides commute", "[duality]")
{
    for (const auto& s : {scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)}),
                          scenario(2, 1, 1, 0, 0, {2}, {1, 1}, {Rational(1)}, {Rational(1), Rational(2)}),
                          scenario(2, 0, 0, 1, 1, {1, 1}, {1, 1}, {Rational(1), Rational(0)}, {Rational(1), Rational(2)})}) {
        for (const auto& sweep : verify_homomorphisms(DualityMaps(s))) {
            INFO(sweep.name);
            CHECK(sweep.pairs > 0);
            if (!sweep.informational)
                CHECK(sweep.pass());
        }
    }
    // One site on each side with trivial orders is the plain Howe pair: every image pair commutes.
    auto single = verify_homomorphisms(DualityMaps(scenario(1, 0, 0, 1, 0, {1}, {1}, {Rational(1)}, {Rational(0)})));
    CHECK(single.back().pass());
    // Two sites: the site-resolved images do not commute.
    DualityMaps two(scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)}));
    auto sweeps = verify_homomorphisms(two);
    CHECK(!sweeps.back().pass());
    CHECK(!weyl_commutator(two.phi_d(0, 0, 0), two.phi_s(0, 1, 0)).is_zero());
    CHECK(weyl_commutator(two.phi_d(0, 0, 0) + two.phi_d(1, 0, 0), two.phi_s(0, 1, 0)).is_zero());
}

TEST_CASE("image equality evidence", "[duality]")
{
    auto sc = scenario(1, 0, 0, 1, 1, {1}, {1, 1}, {Rational(2)}, {Rational(1), Rational(-3)});
    auto ev = verify_image_equality_evidence(DualityMaps(sc));
    CHECK(ev.pass);
    CHECK(ev.d_family > 0);
    CHECK(ev.s_family > 0);
    CHECK(ev.pairs_checked > 0);
}
