#include "gaudin/superpoly.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace gaudin;

namespace {

GeneratorSetPtr abstract_set(int even, int odd)
{
    std::vector<Generator> g;
    for (int i = 1; i <= even; ++i)
        g.push_back({GenKind::abstract, 0, i, false});
    for (int i = 1; i <= odd; ++i)
        g.push_back({GenKind::abstract, 1, i, true});
    return std::make_shared<const GeneratorSet>(std::move(g));
}

SuperPoly random_poly(const GeneratorSetPtr& gs, std::mt19937& rng, int parity, int terms = 4)
{
    SuperPoly p(gs);
    std::uniform_int_distribution<int> coin(0, 2), cf(-3, 3);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (std::size_t i = 0; i < gs->size(); ++i)
            m.exp[i] = static_cast<std::uint8_t>(gs->odd(i) ? coin(rng) % 2 : coin(rng));
        if (parity >= 0 && detail::monomial_parity(*gs, m) != parity)
            continue;
        p += SuperPoly::monomial(gs, m, cf(rng));
    }
    return p;
}

} // namespace

TEST_CASE("odd generators anticommute and square to zero", "[superpoly]")
{
    auto gs = abstract_set(2, 2);
    auto g1 = SuperPoly::generator(gs, gs->index(GenKind::abstract, 1, 1));
    auto g2 = SuperPoly::generator(gs, gs->index(GenKind::abstract, 1, 2));
    CHECK(g2 * g1 == -(g1 * g2));
    CHECK((g1 * g1).is_zero());
    auto x = SuperPoly::generator(gs, gs->index(GenKind::abstract, 0, 1));
    auto y = SuperPoly::generator(gs, gs->index(GenKind::abstract, 0, 2));
    CHECK((x + y) * (x - y) == x * x - y * y);
}

TEST_CASE("mismatched generator sets are rejected", "[superpoly]")
{
    auto a = SuperPoly::generator(abstract_set(1, 0), 0);
    auto b = SuperPoly::generator(abstract_set(2, 0), 0);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("canonical form does not depend on insertion order", "[superpoly]")
{
    auto gs = abstract_set(1, 3);
    auto o = [&](int i) { return SuperPoly::generator(gs, gs->index(GenKind::abstract, 1, i)); };
    auto x = SuperPoly::generator(gs, gs->index(GenKind::abstract, 0, 1));
    SuperPoly a = x * o(1) * o(2) * o(3);
    SuperPoly b = o(3) * x * o(2) * o(1) * Rational(-1); // reversing three odd letters is odd
    CHECK(a == b);
    CHECK(a.terms().sorted() == b.terms().sorted());
}

TEST_CASE("supercommutative product is associative and graded commutative", "[superpoly]")
{
    auto gs = abstract_set(2, 3);
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        int pa = t % 2, pb = (t / 2) % 2;
        auto a = random_poly(gs, rng, pa), b = random_poly(gs, rng, pb), c = random_poly(gs, rng, -1);
        CHECK((a * b) * c == a * (b * c));
        SuperPoly ba = b * a;
        if (pa * pb) ba *= Rational(-1);
        CHECK(a * b == ba);
    }
}

TEST_CASE("Poisson bracket on generators", "[superpoly]")
{
    WeylProfile pr{1, 1, 1, 1, 1};
    auto gs = phase_space_generators(pr);
    auto g = [&](GenKind k, int a, int i) { return SuperPoly::generator(gs, gs->index(k, a, i)); };
    auto px = g(GenKind::px, 1, 1), x = g(GenKind::x, 1, 1), y = g(GenKind::y, 1, 1);
    CHECK(poisson_bracket(px, x) == SuperPoly(gs, 1));
    CHECK(poisson_bracket(x, y).is_zero());
    CHECK(poisson_bracket(px, x * x) == x * Rational(2));
    auto pxo = g(GenKind::px, 1, 2), xo = g(GenKind::x, 1, 2);
    CHECK(poisson_bracket(pxo, xo) == SuperPoly(gs, 1));
    CHECK(poisson_bracket(xo, pxo) == SuperPoly(gs, 1));
    CHECK(poisson_bracket(x, px) == SuperPoly(gs, -1));
}

TEST_CASE("Poisson bracket is superskew and satisfies super Jacobi", "[superpoly]")
{
    WeylProfile pr{1, 1, 1, 1, 1};
    auto gs = phase_space_generators(pr);
    std::mt19937 rng(5);
    auto hom = [&](int par) {
        SuperPoly p(gs);
        std::uniform_int_distribution<int> idx(0, static_cast<int>(gs->size()) - 1), cf(-2, 2), len(1, 3);
        for (int t = 0; t < 3; ++t) {
            Monomial m;
            int l = len(rng);
            for (int k = 0; k < l; ++k) {
                int i = idx(rng);
                if (gs->odd(i) && m[i]) continue;
                m.add(i, 1);
            }
            if (detail::monomial_parity(*gs, m) == par)
                p += SuperPoly::monomial(gs, m, cf(rng));
        }
        return p;
    };
    for (int t = 0; t < 40; ++t) {
        int pa = t % 2, pb = (t / 2) % 2, pc = (t / 4) % 2;
        auto a = hom(pa), b = hom(pb), c = hom(pc);
        SuperPoly ba = poisson_bracket(b, a);
        CHECK(poisson_bracket(a, b) == ((pa * pb) ? ba : -ba));
        // {a,{b,c}} = {{a,b},c} + (-1)^{|a||b|} {b,{a,c}}
        SuperPoly lhs = poisson_bracket(a, poisson_bracket(b, c));
        SuperPoly rhs = poisson_bracket(poisson_bracket(a, b), c);
        SuperPoly t3 = poisson_bracket(b, poisson_bracket(a, c));
        rhs += (pa * pb) ? -t3 : t3;
        CHECK(lhs == rhs);
        // Leibniz: {a, bc} = {a,b}c + (-1)^{|a||b|} b{a,c}
        SuperPoly l2 = poisson_bracket(a, b * c);
        SuperPoly r2 = poisson_bracket(a, b) * c;
        SuperPoly t4 = b * poisson_bracket(a, c);
        r2 += (pa * pb) ? -t4 : t4;
        CHECK(l2 == r2);
    }
}

TEST_CASE("degree operator splits by x minus y count", "[superpoly]")
{
    WeylProfile pr{2, 1, 0, 1, 0};
    auto gs = fock_generators(pr);
    auto x1 = SuperPoly::generator(gs, gs->index(GenKind::x, 1, 1));
    auto x2 = SuperPoly::generator(gs, gs->index(GenKind::x, 2, 1));
    auto y1 = SuperPoly::generator(gs, gs->index(GenKind::y, 1, 1));
    auto parts = degree_operator(x1 * x2);
    REQUIRE(parts.size() == 1);
    CHECK(parts.begin()->first == 2);
    CHECK(degree_operator(y1).begin()->first == -1);
    CHECK(degree_operator(x1 * y1).begin()->first == 0);
    auto mixed = degree_operator(x1 + y1 + x1 * y1);
    CHECK(mixed.size() == 3);
}
