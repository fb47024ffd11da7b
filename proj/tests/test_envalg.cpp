#include "gaudin/envalg.hpp"
#include "gaudin/weylalg.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace gaudin;

namespace {

SparseVector vec(std::initializer_list<std::pair<int, int>> v)
{
    SparseVector r;
    for (auto [i, c] : v) r.emplace_back(i, Rational(c));
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

// Oscillator realization E^i_j -> x_i d_j, used as an independent image of U(gl).
struct Oscillator {
    GlShape sh;
    WeylAlgebraPtr alg;
    explicit Oscillator(GlShape s) : sh(s)
    {
        // Variables x^1_i with parity |i| (a single copy, so d = 1 and the index is the gl index).
        int even = 0, odd = 0;
        for (int i = 1; i <= sh.size(); ++i) (sh.odd(i) ? odd : even)++;
        alg = make_weyl_algebra({1, 0, 0, even, odd});
    }
    int var(int i) const
    {
        // Even indices are numbered first, then odd ones, each in increasing order.
        int e = 0, o = 0, evens = 0;
        for (int k = 1; k <= sh.size(); ++k) if (!sh.odd(k)) ++evens;
        for (int k = 1; k < i; ++k) (sh.odd(k) ? o : e)++;
        return sh.odd(i) ? evens + o + 1 : e + 1;
    }
    WeylElement image(int basis) const
    {
        int i = basis / sh.size() + 1, j = basis % sh.size() + 1;
        return WeylElement::generator(alg, alg->x(1, var(i))) * WeylElement::generator(alg, alg->dx(1, var(j)));
    }
    WeylElement image(const PBWElement& e) const
    {
        WeylElement r(alg);
        for (const auto& [m, c] : e.terms().map()) {
            WeylElement t(alg, c);
            for (std::size_t b = 0; b < e.algebra()->lie().dim(); ++b)
                for (int k = 0; k < m[b]; ++k) t = t * image(static_cast<int>(b));
            r += t;
        }
        return r;
    }
};

PBWElement random_pbw(const PBWAlgebraPtr& alg, std::mt19937& rng, int terms = 2, int maxlen = 3)
{
    PBWElement e(alg);
    std::uniform_int_distribution<int> idx(0, static_cast<int>(alg->lie().dim()) - 1), cf(-2, 2), len(1, maxlen);
    for (int t = 0; t < terms; ++t) {
        PBWElement m(alg, cf(rng));
        int l = len(rng);
        for (int k = 0; k < l; ++k) m = m * PBWElement::generator(alg, idx(rng));
        e += m;
    }
    return e;
}

} // namespace

TEST_CASE("general linear brackets", "[envalg]")
{
    auto gl2 = make_gld(2);
    GlShape s2{2, 0, 0, 0};
    CHECK(gl2.bracket(s2.index(1, 2), s2.index(2, 1)) == vec({{s2.index(1, 1), 1}, {s2.index(2, 2), -1}}));
    auto g11 = make_gl(1, 1, 0, 0);
    GlShape s{1, 1, 0, 0};
    CHECK(g11.bracket(s.index(1, 2), s.index(2, 1)) == vec({{s.index(1, 1), 1}, {s.index(2, 2), 1}}));
    CHECK(gl2.bracket(s2.index(1, 1), s2.index(1, 1)).empty());
    CHECK_THROWS_AS(make_gl(0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("structure constants validate", "[envalg]")
{
    CHECK(make_gld(3).validate().empty());
    CHECK(make_gl(1, 1, 1, 1).validate().empty());
    CHECK(make_gl(0, 1, 1, 0).validate().empty());
    TakiffSum t(make_gl(1, 0, 0, 1), {Rational(0), Rational(2)}, {2, 3});
    CHECK(t.lie().validate().empty());
    // A corrupted table is caught.
    auto g = make_gld(2);
    std::vector<LieBasisLabel> labels = g.labels();
    std::vector<std::vector<SparseVector>> table(4, std::vector<SparseVector>(4));
    for (int i = 0; i < 4; ++i) for (int j = 0; j < 4; ++j) table[i][j] = g.bracket(i, j);
    table[1][2] = vec({{0, 2}});
    CHECK_FALSE(LieSuperData(labels, table).validate().empty());
}

TEST_CASE("takiff truncation and direct sums", "[envalg]")
{
    auto base = make_gld(2);
    GlShape sh{2, 0, 0, 0};
    TakiffSum one(base, {Rational(3)}, {1});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            SparseVector expect;
            for (auto [k, c] : base.bracket(i, j)) expect.emplace_back(one.index(0, k, 0), c);
            CHECK(one.lie().bracket(one.index(0, i, 0), one.index(0, j, 0)) == expect);
        }
    TakiffSum two(base, {Rational(0), Rational(1)}, {2, 1});
    int a = sh.index(1, 2), b = sh.index(2, 1);
    CHECK(two.lie().bracket(two.index(0, a, 1), two.index(0, b, 1)).empty());
    CHECK_FALSE(two.lie().bracket(two.index(0, a, 0), two.index(0, b, 1)).empty());
    CHECK(two.lie().bracket(two.index(0, a, 0), two.index(1, b, 0)).empty());
}

TEST_CASE("PBW rewriting", "[envalg]")
{
    auto alg = make_pbw(make_gld(2));
    GlShape sh{2, 0, 0, 0};
    auto e = [&](int i, int j) { return PBWElement::generator(alg, sh.index(i, j)); };
    CHECK(e(2, 1) * e(1, 2) == e(1, 2) * e(2, 1) - e(1, 1) + e(2, 2));
    Oscillator osc(sh);
    CHECK(osc.image(e(2, 1) * e(1, 2)) == osc.image(e(2, 1)) * osc.image(e(1, 2)));

    auto salg = make_pbw(make_gl(1, 1, 0, 0));
    GlShape ss{1, 1, 0, 0};
    auto x = PBWElement::generator(salg, ss.index(1, 2));
    // [x, x] = 0 for E^1_2, so use the odd element E^1_2 + E^2_1 with [u,u] = 2(E^1_1 + E^2_2)
    auto u = x + PBWElement::generator(salg, ss.index(2, 1));
    auto h = PBWElement::generator(salg, ss.index(1, 1)) + PBWElement::generator(salg, ss.index(2, 2));
    CHECK(u * u == h);
    CHECK((x * x).is_zero());
    // central element: plain sorted merge
    CHECK(h * x == x * h);
}

TEST_CASE("PBW product is associative and realizes the bracket", "[envalg]")
{
    GlShape sh{1, 1, 1, 0};
    auto alg = make_pbw(make_gl(sh.p, sh.q, sh.m, sh.n));
    Oscillator osc(sh);
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        auto a = random_pbw(alg, rng), b = random_pbw(alg, rng), c = random_pbw(alg, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(osc.image(a * b) == osc.image(a) * osc.image(b));
    }
    const auto& lie = alg->lie();
    for (std::size_t i = 0; i < lie.dim(); ++i)
        for (std::size_t j = 0; j < lie.dim(); ++j) {
            auto a = PBWElement::generator(alg, static_cast<int>(i));
            auto b = PBWElement::generator(alg, static_cast<int>(j));
            CHECK(pbw_commutator(a, b) == PBWElement::from_vector(alg, lie.bracket(i, j)));
        }
}

TEST_CASE("evaluation map of higher order", "[envalg]")
{
    auto base = make_gld(2);
    GlShape sh{2, 0, 0, 0};
    Rational a(3, 2);
    TakiffSum t1(base, {a}, {1});
    auto u1 = make_pbw(t1.lie());
    int A = sh.index(1, 2);
    CHECK(evaluation_image(u1, t1, 0, A, 0) == PBWElement::generator(u1, t1.index(0, A, 0)));
    CHECK(evaluation_image(u1, t1, 0, A, 1) == PBWElement::generator(u1, t1.index(0, A, 0), a));
    TakiffSum t2(base, {a}, {2});
    auto u2 = make_pbw(t2.lie());
    CHECK(evaluation_image(u2, t2, 0, A, 2) ==
          PBWElement::generator(u2, t2.index(0, A, 0), a * a) + PBWElement::generator(u2, t2.index(0, A, 1), 2 * a));

    // Homomorphism on brackets and nested brackets: [A t^r, B t^s] = [A,B] t^{r+s}.
    TakiffSum ts(make_gl(1, 0, 0, 1), {Rational(1, 3), Rational(-2)}, {2, 3});
    auto u = make_pbw(ts.lie());
    const auto& bl = ts.base();
    auto ev = [&](const SparseVector& v, int r) {
        PBWElement e(u);
        for (auto [k, c] : v) e += evaluation_map(u, ts, k, r) * c;
        return e;
    };
    for (std::size_t i = 0; i < bl.dim(); ++i)
        for (std::size_t j = 0; j < bl.dim(); ++j)
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s <= 2; ++s) {
                    auto lhs = pbw_commutator(evaluation_map(u, ts, i, r), evaluation_map(u, ts, j, s));
                    CHECK(lhs == ev(bl.bracket(i, j), r + s));
                    for (std::size_t k = 0; k < bl.dim(); k += 3) {
                        auto nested = pbw_commutator(evaluation_map(u, ts, k, 1), lhs);
                        CHECK(nested == ev(bl.bracket(SparseVector{{static_cast<int>(k), 1}}, bl.bracket(i, j)), r + s + 1));
                    }
                }
}
