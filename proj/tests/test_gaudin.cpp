#include "gaudin/gaudin.hpp"

#include <catch_amalgamated.hpp>

using namespace gaudin;

namespace {

using PP = Psdo<PBWElement>;
const Horizon H{-4, -4};

struct Site {
    LieSuperData base;
    TakiffSum sum;
    PBWAlgebraPtr alg;
    SingularityData sd;

    Site(LieSuperData b, std::vector<Rational> pts, std::vector<int> ord)
        : base(b), sum(b, pts, ord), alg(make_pbw(sum.lie())), sd{pts, ord}
    {
    }

    PBWElement zero() const { return PBWElement(alg); }
    PBWElement gen(int site, int label, int k) const { return PBWElement::generator(alg, sum.index(site, label, k)); }
    TakiffImage<PBWElement> img() const { return pbw_images(alg, sum); }
};

bool same(const TypedMatrix<PP>& a, const TypedMatrix<PP>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!agree(a(i, j), b(i, j)))
                return false;
    return true;
}

} // namespace

TEST_CASE("Jordan functionals", "[gaudin]")
{
    GlShape g2{2, 0, 0, 0};
    auto mu = jordan_mu(2, {Rational(3)}, {2});
    CHECK(character_value(mu, g2.index(1, 1)) == -3);
    CHECK(character_value(mu, g2.index(1, 2)) == -1);
    CHECK(character_value(mu, g2.index(2, 1)) == 0);
    CHECK(character_value(mu, g2.index(2, 2)) == -3);
    auto diag = jordan_mu(2, {Rational(1), Rational(5)}, {1, 1});
    CHECK(character_value(diag, g2.index(1, 1)) == -1);
    CHECK(character_value(diag, g2.index(2, 2)) == -5);
    CHECK(character_value(diag, g2.index(1, 2)) == 0);
    CHECK_THROWS(jordan_mu(2, {Rational(1)}, {1}));

    GlShape s{1, 1, 1, 1};
    std::vector<Rational> z{1, 2, 3, 4};
    auto nu = jordan_nu(s, z, {1, 1, 1, 1});
    for (int i = 1; i <= 4; ++i) {
        Rational expect = s.odd(i) ? z[i - 1] : Rational(-z[i - 1]);
        CHECK(character_value(nu, s.index(i, i)) == expect);
        for (int j = 1; j <= 4; ++j)
            if (j != i)
                CHECK(character_value(nu, s.index(i, j)) == 0);
    }
    CHECK_THROWS(jordan_nu(GlShape{1, 1, 0, 0}, {Rational(1)}, {2}));
    CHECK(composition_blocks(GlShape{2, 0, 1, 1}, {1, 1, 1, 1}).p == 2);
    CHECK(composition_blocks(GlShape{2, 0, 1, 1}, {2, 1, 1}).p == 1);
}

TEST_CASE("Psi map expansion", "[gaudin]")
{
    Site one(make_gld(1), {Rational(2)}, {1});
    PP psi = psi_mu(0, Character{}, one.sd, one.img(), one.zero(), H);
    for (int j = 0; j + 1 <= 4; ++j)
        CHECK(psi.coefficient(-j - 1, 0) == one.gen(0, 0, 0) * Rational(-rational_pow(Rational(2), j)));
    CHECK(psi.coefficient(0, 0).is_zero());
    PP shifted = psi_mu(0, Character{{0, Rational(7)}}, one.sd, one.img(), one.zero(), H);
    CHECK(shifted.coefficient(0, 0) == PBWElement(one.alg, 7));

    Site two(make_gld(1), {Rational(1), Rational(-1)}, {2, 1});
    PP p2 = psi_mu(0, Character{}, two.sd, two.img(), two.zero(), H);
    CHECK(p2.coefficient(-1, 0) == -(two.gen(0, 0, 0) + two.gen(1, 0, 0)));
    // z^{-2}: -(z1 A0@1 + A1@1 + z2 A0@2)
    CHECK(p2.coefficient(-2, 0) == -(two.gen(0, 0, 0) + two.gen(0, 0, 1) - two.gen(1, 0, 0)));
}

TEST_CASE("L-matrix constructors agree", "[gaudin]")
{
    std::vector<Rational> w{Rational(1, 2)};
    Site s(make_gld(2), {Rational(3), Rational(-2)}, {2, 1});
    auto mu = jordan_mu(2, w, {2});
    auto hat = build_Ld_hat(2, mu, s.sd, s.img(), s.zero(), H);
    auto alt = build_Ld_hat_jordan(2, w, {2}, s.sd, s.img(), s.zero(), H);
    CHECK(same(hat, alt));

    // d = 1, mu = 0, regular site: hat L = z + (e11 tbar^0)(dz - z1)^{-1}... with sign from the definition.
    Site r(make_gld(1), {Rational(5)}, {1});
    auto h1 = build_Ld_hat(1, Character{}, r.sd, r.img(), r.zero(), H);
    PP expect = PP::monomial(PBWElement(r.alg, 1), 1, 0, H) - lmul(r.gen(0, 0, 0), dpole_expand<PBWElement>(r.zero(), Rational(5), 1, H));
    CHECK(agree(h1(0, 0), expect));

    auto ld = build_Ld(2, mu, s.sd, s.img(), s.zero(), H);
    CHECK(is_manin(ld));
    PP c = cdet(ld);
    CHECK(c.window().dmax == 2);
    CHECK(c.coefficient(0, 2) == PBWElement(s.alg, 1));
    for (int z = -4; z <= 2; ++z)
        if (z != 0)
            CHECK(c.coefficient(z, 2).is_zero());
    PP ch = cdet(hat);
    CHECK(ch.window().zmax == 2);
    CHECK(ch.coefficient(2, 0) == PBWElement(s.alg, 1));
    for (int d = -4; d <= 2; ++d)
        if (d != 0)
            CHECK(ch.coefficient(2, d).is_zero());
}

TEST_CASE("cdet coefficient against brute-force expansion", "[gaudin]")
{
    Site s(make_gld(2), {Rational(3)}, {1});
    auto ld = build_Ld(2, Character{}, s.sd, s.img(), s.zero(), H);
    PP c = cdet(ld);
    GlShape g{2, 0, 0, 0};
    // (dz + a11)(dz + a22) - a21 a12 with a_ij = -e_ij/(z - z1): the dz z^{-1} part is -(e11 + e22).
    CHECK(c.coefficient(-1, 1) == -(s.gen(0, g.index(1, 1), 0) + s.gen(0, g.index(2, 2), 0)));
}

TEST_CASE("super L-matrix", "[gaudin]")
{
    // Purely even shape reduces to the gl_d matrix over the same algebra.
    Site e(make_gl(0, 0, 2, 0), {Rational(1), Rational(4)}, {1, 1});
    auto mu = jordan_mu(2, {Rational(2)}, {2});
    CHECK(same(build_Ls(GlShape{0, 0, 2, 0}, mu, e.sd, e.img(), e.zero(), H),
               build_Ld(2, mu, e.sd, e.img(), e.zero(), H)));

    GlShape sh{1, 1, 0, 0};
    Site s(make_gl(1, 1, 0, 0), {Rational(1), Rational(-3)}, {1, 2});
    std::vector<Rational> z{Rational(2), Rational(7)};
    auto nu = jordan_nu(sh, z, {1, 1});
    auto ls = build_Ls(sh, nu, s.sd, s.img(), s.zero(), H);
    CHECK(ls.type() == std::vector<int>{0, 1});
    CHECK(!ls.type_violation());
    // Row 2 is odd: its pole part enters with the opposite sign.
    CHECK(ls(1, 0).coefficient(-1, 0) == s.gen(0, sh.index(2, 1), 0) + s.gen(1, sh.index(2, 1), 0));
    CHECK(ls(0, 1).coefficient(-1, 0) == -(s.gen(0, sh.index(1, 2), 0) + s.gen(1, sh.index(1, 2), 0)));
    CHECK(same(ls, build_Ls_jordan(sh, z, {1, 1}, s.sd, s.img(), s.zero(), H)));
    CHECK(is_manin(ls));

    PP ber = berezinian(ls);
    auto fam = extract_generators(ber);
    REQUIRE(!fam.empty());
    CHECK(fam.front().dexp == sh.p + sh.m - sh.q - sh.n);
    int top = kUnbounded;
    for (const auto& [k, v] : ber.terms())
        top = std::max(top, k.second);
    CHECK(top == 0);
    CHECK(ber.coefficient(0, 0) == PBWElement(s.alg, 1));
}

TEST_CASE("Gaudin generators commute in the enveloping algebra", "[gaudin]")
{
    const Horizon h{-3, -3};
    Site s(make_gld(2), {Rational(1), Rational(-1)}, {2, 1});
    auto mu = jordan_mu(2, {Rational(2)}, {2});
    auto fam = extract_generators(cdet(build_Ld(2, mu, s.sd, s.img(), s.zero(), h)));
    CHECK(fam.size() > 5);
    CHECK(!noncommuting_pair(fam));
    auto famhat = extract_generators(cdet(build_Ld_hat(2, mu, s.sd, s.img(), s.zero(), h)));
    CHECK(!noncommuting_pair(famhat));

    GlShape sh{0, 0, 1, 1};
    Site u(make_gl(0, 0, 1, 1), {Rational(3)}, {2});
    auto nu = jordan_nu(sh, {Rational(1), Rational(2)}, {1, 1});
    auto fs = extract_generators(berezinian(build_Ls(sh, nu, u.sd, u.img(), u.zero(), h)));
    CHECK(fs.size() > 3);
    CHECK(!noncommuting_pair(fs));

    // Control: a non-central element does not commute with the family.
    fam.push_back({0, 0, s.gen(0, GlShape{2, 0, 0, 0}.index(1, 2), 0)});
    CHECK(noncommuting_pair(fam).has_value());
}
