#include "gaudin/fockrep.hpp"

#include <catch_amalgamated.hpp>

using namespace gaudin;

namespace {

QMatrix qmat(std::size_t n, std::vector<long> v)
{
    QMatrix m(n);
    for (std::size_t i = 0; i < n * n; ++i)
        m.a[i] = Rational(v[i]);
    return m;
}

// Determinant by cofactor expansion; independent of the Berkowitz recursion.
Rational det_oracle(const QMatrix& a)
{
    if (a.n == 1)
        return a(0, 0);
    Rational s = 0;
    for (std::size_t c = 0; c < a.n; ++c) {
        QMatrix m(a.n - 1);
        for (std::size_t i = 1; i < a.n; ++i)
            for (std::size_t j = 0, jj = 0; j < a.n; ++j)
                if (j != c)
                    m(i - 1, jj++) = a(i, j);
        Rational t = a(0, c) * det_oracle(m);
        s += c % 2 ? Rational(-t) : t;
    }
    return s;
}

Rational eval(const QPoly& p, const Rational& t)
{
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        r = r * t + p[i];
    return r;
}

DualityScenario base(int d, int p, int q, int m, int n, std::vector<int> xi)
{
    DualityScenario sc;
    sc.d = d;
    sc.p = p;
    sc.q = q;
    sc.m = m;
    sc.n = n;
    sc.xi = xi;
    sc.gamma.assign(p + q + m + n, 1);
    for (std::size_t i = 0; i < xi.size(); ++i)
        sc.w.push_back(Rational(static_cast<long>(i) + 1));
    for (int i = 0; i < p + q + m + n; ++i)
        sc.z.push_back(fraction(-2 * i - 1, 3));
    return sc;
}

} // namespace

TEST_CASE("characteristic polynomial and squarefree test", "[fockrep]")
{
    CHECK(charpoly(qmat(1, {4})) == QPoly{Rational(-4), Rational(1)});
    // [[1,2],[3,4]]: t^2 - 5t - 2.
    CHECK(charpoly(qmat(2, {1, 2, 3, 4})) == QPoly{Rational(-2), Rational(-5), Rational(1)});
    std::mt19937 rng(4);
    std::uniform_int_distribution<long> c(-6, 6);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix a(4);
        for (auto& v : a.a)
            v = Rational(c(rng));
        QPoly cp = charpoly(a);
        for (long t : {-2L, 0L, 3L}) {
            QMatrix s = QMatrix::identity(4).scaled(Rational(t));
            for (std::size_t i = 0; i < 16; ++i)
                s.a[i] -= a.a[i];
            CHECK(eval(cp, Rational(t)) == det_oracle(s));
        }
    }
    CHECK(squarefree(charpoly(qmat(2, {1, 0, 0, 2}))));
    CHECK(!squarefree(charpoly(qmat(2, {3, 1, 0, 3}))));
    CHECK(!squarefree(charpoly(QMatrix::identity(3))));
    CHECK(poly_gcd({Rational(-1), Rational(0), Rational(1)}, {Rational(1), Rational(1)}) == QPoly{Rational(1), Rational(1)});
}

TEST_CASE("spectral checks on small families", "[fockrep]")
{
    std::mt19937_64 rng(1);
    auto one = check_spectral_claims({qmat(1, {5})}, 1, rng);
    CHECK(one.pass());
    auto diag = check_spectral_claims({qmat(2, {1, 0, 0, 2}), qmat(2, {3, 0, 0, 5})}, 2, rng);
    CHECK(diag.commute);
    CHECK(diag.simple);
    // No single basis vector is cyclic for a diagonal family, but (1,1) is.
    CHECK(!diag.cyclic);
    CHECK(krylov_dim({qmat(2, {1, 0, 0, 2}), qmat(2, {3, 0, 0, 5})}, {Rational(1), Rational(1)}) == 2);
    auto nilp = check_spectral_claims({qmat(2, {0, 1, 0, 0})}, 2, rng);
    CHECK(nilp.cyclic);
    CHECK(nilp.cyclic_vector == 1);
    CHECK(!nilp.simple);
    CHECK(nilp.combinations.size() == 4);
    auto nc = check_spectral_claims({qmat(2, {0, 1, 0, 0}), qmat(2, {0, 0, 1, 0})}, 2, rng);
    CHECK(!nc.commute);
    CHECK(generated_algebra_dim({qmat(2, {1, 0, 0, 2})}, 2) == 2);
    CHECK(generated_algebra_dim({qmat(2, {0, 1, 0, 0}), qmat(2, {0, 0, 1, 0})}, 2) == 4);
}

TEST_CASE("weight space enumeration", "[fockrep]")
{
    // Bosonic d = 1, m = 1: degree 2 is spanned by (x^1_1)^2.
    FockModel b(base(1, 0, 0, 1, 0, {1}));
    auto s = b.enumerate_s({{2}, {Rational(2)}});
    REQUIRE(s.dim() == 1);
    CHECK(SuperPoly::monomial(b.fock(), s.monomials[0]).to_string().find("x^1_1^2") != std::string::npos);

    // Fermionic n = 1, d = 2: degree 1 has {x^1, x^2}.
    FockModel f(base(2, 0, 0, 0, 1, {1, 1}));
    std::size_t deg1 = 0;
    for (const auto& sp : f.spaces_with_totals({1}))
        deg1 += sp.dim();
    CHECK(deg1 == 2);
    CHECK(f.enumerate_s({{1, 0}, {Rational(1)}}).dim() == 1);
    CHECK(f.spaces_with_totals({3}).empty());

    // Dimensions of all weight spaces at fixed column totals add up to the count of monomials:
    // C(t+d-1, d-1) per even column, C(d, t) per odd column.
    FockModel mix(base(2, 1, 1, 1, 0, {1, 1}));
    for (int t0 = 0; t0 <= 2; ++t0)
        for (int t1 = 0; t1 <= 2; ++t1)
            for (int t2 = 0; t2 <= 2; ++t2) {
                std::size_t total = 0;
                for (const auto& sp : mix.spaces_with_totals({t0, t1, t2})) {
                    total += sp.dim();
                    CHECK(mix.enumerate_s(sp.weight).monomials == sp.monomials);
                }
                auto even = [](int t) { return static_cast<std::size_t>(t + 1); };
                auto odd = [](int t) { return static_cast<std::size_t>(t == 1 ? 2 : 1); };
                CHECK(total == even(t0) * odd(t1) * even(t2));
            }
    CHECK(mix.enumerate_s({{0, 0}, {Rational(7), Rational(0), Rational(0)}}).dim() == 0);
}

TEST_CASE("weight dictionary between the two sides", "[fockrep]")
{
    FockModel mix(base(2, 1, 1, 1, 1, {2}));
    int checked = 0;
    for (const auto& sp : mix.spaces_with_totals({1, 1, 2, 1})) {
        std::vector<Rational> mubar;
        for (int c = 1; c <= 4; ++c)
            mubar.push_back(mix.mubar(c, sp.weight.mu[c - 1]));
        // y-columns: mubar is minus the y-degree.
        CHECK(mubar[0] == -1);
        CHECK(mubar[1] == -1);
        CHECK(mix.enumerate_d(mubar, sp.weight.k).monomials == mix.enumerate_s(sp.weight).monomials);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("restriction to a weight space", "[fockrep]")
{
    FockModel m(base(2, 0, 0, 1, 0, {1, 1}));
    auto sp = m.enumerate_s({{1, 1}, {Rational(2)}});
    REQUIRE(sp.dim() == 1);
    CHECK(m.restrict_operator(WeylElement(m.maps().weyl(), 1), sp) == QMatrix::identity(1));
    CHECK(m.restrict_operator(m.s_cartan(1), sp)(0, 0) == 2);
    // x^1 dx^2 moves degree between blocks.
    const auto& alg = m.maps().weyl();
    WeylElement hop = WeylElement::generator(alg, alg->x(1, 1)) * WeylElement::generator(alg, alg->dx(2, 1));
    CHECK_THROWS_AS(m.restrict_operator(hop, sp), Leakage);

    // Gaudin generators on a two-dimensional space: the matrix of each one matches its action on monomials.
    FockModel g(base(2, 0, 0, 2, 0, {2}));
    auto sp2 = g.enumerate_s({{1}, {Rational(1), Rational(0)}});
    REQUIRE(sp2.dim() == 2);
    auto fams = gaudin_families(g.maps(), {-3, -3});
    REQUIRE(!fams.s_side.empty());
    for (const auto& [tag, op] : fams.s_side) {
        QMatrix mat = g.restrict_operator(op, sp2, tag);
        for (std::size_t j = 0; j < 2; ++j) {
            SuperPoly img = weyl_act(op, SuperPoly::monomial(g.fock(), sp2.monomials[j]));
            SuperPoly rebuilt(g.fock());
            for (std::size_t i = 0; i < 2; ++i)
                rebuilt += SuperPoly::monomial(g.fock(), sp2.monomials[i], mat(i, j));
            CHECK(img == rebuilt);
        }
    }
}

TEST_CASE("weight-space suite", "[fockrep]")
{
    auto res = run_weight_space_suite(base(2, 1, 0, 1, 0, {1, 1}), 17);
    REQUIRE(res.spaces.size() == 3);
    for (const auto& s : res.spaces) {
        INFO("dim " << s.dim << " error " << s.error);
        CHECK(s.dim >= 2);
        CHECK(s.bases_agree);
        CHECK(s.no_leakage);
        CHECK(s.spectral.commute);
        CHECK(s.spectral.cyclic);
        CHECK(s.spectral.simple);
        CHECK(s.families_commute);
        CHECK(s.algebra_dim_s == s.algebra_dim_joint);
        CHECK(s.algebra_dim_d == s.algebra_dim_joint);
        CHECK(s.pass());
    }
    auto again = run_weight_space_suite(base(2, 1, 0, 1, 0, {1, 1}), 17);
    CHECK(again.w == res.w);
    CHECK(again.z == res.z);
}

TEST_CASE("a repeated point on the s-side gives a nilpotent generator", "[fockrep]")
{
    // xi = (2): the coefficient of (z - w)^{-2} is phi_s(E tbar^1) = x^2 dx^1, nilpotent and nonzero on a
    // two-dimensional space, so the family cannot have a simple spectrum there.
    auto res = run_weight_space_suite(base(2, 0, 0, 1, 0, {2}), 5, 1, 2, 2, 64, {-3, -3}, 3, true);
    REQUIRE(res.spaces.size() == 1);
    const auto& s = res.spaces.front();
    CHECK(s.spectral.commute);
    CHECK(s.spectral.cyclic);
    CHECK(!s.spectral.simple);
    CHECK(s.spectral.resamples == 4);
    CHECK(s.bases_agree);
}
