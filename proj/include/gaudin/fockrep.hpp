#pragma once

// Weight spaces of the Fock space, exact restriction of operators to them, and the spectral
// checks on restricted Gaudin families: commutativity, cyclicity and simple spectrum.

#include "gaudin/duality.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

using QVector = std::vector<Rational>;

/// Dense exact square matrix, row-major. For a restricted operator, column j is the image of basis vector j.
struct QMatrix {
    std::size_t n = 0;
    std::vector<Rational> a;
    std::string tag;

    QMatrix() = default;
    explicit QMatrix(std::size_t size) : n(size), a(size * size, Rational(0)) {}
    static QMatrix identity(std::size_t size)
    {
        QMatrix m(size);
        for (std::size_t i = 0; i < size; ++i)
            m(i, i) = 1;
        return m;
    }

    Rational& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    friend QMatrix operator*(const QMatrix& x, const QMatrix& y)
    {
        QMatrix r(x.n);
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t k = 0; k < x.n; ++k) {
                if (sgn(x(i, k)) == 0)
                    continue;
                for (std::size_t j = 0; j < x.n; ++j)
                    r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend QMatrix operator+(QMatrix x, const QMatrix& y)
    {
        for (std::size_t i = 0; i < x.a.size(); ++i)
            x.a[i] += y.a[i];
        return x;
    }
    QMatrix scaled(const Rational& c) const
    {
        QMatrix r = *this;
        for (auto& v : r.a)
            v *= c;
        return r;
    }
    QVector apply(const QVector& v) const
    {
        QVector r(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r[i] += (*this)(i, j) * v[j];
        return r;
    }
    bool is_zero() const
    {
        return std::all_of(a.begin(), a.end(), [](const Rational& v) { return sgn(v) == 0; });
    }
    bool is_scalar() const
    {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i == j ? (*this)(i, i) != (*this)(0, 0) : sgn((*this)(i, j)) != 0)
                    return false;
        return true;
    }
    friend bool operator==(const QMatrix& x, const QMatrix& y) { return x.n == y.n && x.a == y.a; }
};

/// Incremental row-echelon span over Q.
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t len) : len_(len) {}

    /// Adds v; returns true if it enlarged the span.
    bool insert(QVector v)
    {
        for (const auto& [piv, row] : rows_)
            if (sgn(v[piv]) != 0) {
                Rational c = v[piv];
                for (std::size_t i = 0; i < len_; ++i)
                    v[i] -= c * row[i];
            }
        std::size_t piv = 0;
        while (piv < len_ && sgn(v[piv]) == 0)
            ++piv;
        if (piv == len_)
            return false;
        Rational inv = 1 / v[piv];
        for (auto& x : v)
            x *= inv;
        for (auto& [p, row] : rows_)
            if (sgn(row[piv]) != 0) {
                Rational c = row[piv];
                for (std::size_t i = 0; i < len_; ++i)
                    row[i] -= c * v[i];
            }
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

    std::size_t dim() const { return rows_.size(); }
    std::vector<QVector> basis() const
    {
        std::vector<QVector> b;
        for (const auto& [p, r] : rows_)
            b.push_back(r);
        return b;
    }

private:
    std::size_t len_;
    std::vector<std::pair<std::size_t, QVector>> rows_;
};

/// Polynomial over Q, coefficient of t^i at index i.
using QPoly = std::vector<Rational>;

inline QPoly poly_trim(QPoly p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
    return p;
}

inline QPoly poly_derivative(const QPoly& p)
{
    QPoly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * Rational(static_cast<long>(i)));
    return poly_trim(r);
}

inline QPoly poly_mod(QPoly a, const QPoly& b)
{
    a = poly_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        a = poly_trim(a);
    }
    return a;
}

inline QPoly poly_gcd(QPoly a, QPoly b)
{
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        QPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a)
            c /= lead;
    }
    return a;
}

/// Characteristic polynomial det(tI - A) by the division-free Berkowitz recursion.
inline QPoly charpoly(const QMatrix& A)
{
    const std::size_t n = A.n;
    QPoly c{Rational(1)}; // for the leading 0x0 block, highest power first
    for (std::size_t k = 0; k < n; ++k) {
        // Block A[0..k][0..k]; row R = A[k][0..k-1], column S = A[0..k-1][k], a = A[k][k].
        std::vector<Rational> col(k);
        for (std::size_t i = 0; i < k; ++i)
            col[i] = A(i, k);
        std::vector<Rational> toep(k + 2, Rational(0));
        toep[0] = 1;
        toep[1] = -A(k, k);
        std::vector<Rational> v = col;
        for (std::size_t j = 2; j <= k + 1; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < k; ++i)
                s += A(k, i) * v[i];
            toep[j] = -s;
            std::vector<Rational> nv(k, Rational(0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t l = 0; l < k; ++l)
                    nv[i] += A(i, l) * v[l];
            v = std::move(nv);
        }
        QPoly next(k + 2, Rational(0));
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= i && j < c.size(); ++j)
                next[i] += toep[i - j] * c[j];
        c = std::move(next);
    }
    std::reverse(c.begin(), c.end());
    return c;
}

inline bool squarefree(const QPoly& p)
{
    QPoly g = poly_gcd(p, poly_derivative(p));
    return g.size() <= 1;
}

/// Weight data of V(k)_mu: block degrees k and the values mu(E^r_r), r = 1..N.
struct WeightData {
    std::vector<int> k;
    std::vector<Rational> mu;
    friend bool operator==(const WeightData&, const WeightData&) = default;
};

struct WeightSpaceBasis {
    WeightData weight;
    std::vector<Monomial> monomials; // sorted
    std::size_t dim() const { return monomials.size(); }
};

struct Leakage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Weight-space machinery for one scenario with gamma = (1^N).
class FockModel {
public:
    explicit FockModel(const DualityScenario& sc) : maps_(sc)
    {
        for (int g : sc.gamma)
            if (g != 1)
                throw std::invalid_argument("weight-space suite needs gamma = (1, ..., 1)");
        const auto& s = maps_.scenario();
        block_.assign(s.d + 1, 0);
        int a = 0, acc = 0;
        for (int x : s.xi) {
            for (int t = 0; t < x; ++t)
                block_[acc + t + 1] = a;
            acc += x;
            ++a;
        }
    }

    const DualityMaps& maps() const { return maps_; }
    const DualityScenario& scenario() const { return maps_.scenario(); }
    const GeneratorSetPtr& fock() const { return maps_.weyl()->fock(); }
    int columns() const { return scenario().shape().size(); }
    int pq() const { return scenario().p + scenario().q; }
    bool column_odd(int c) const { return scenario().shape().odd(c); }

    /// Fock index of the variable in column c (1-based over y then x columns) with superscript alpha.
    int variable(int c, int alpha) const
    {
        const auto& alg = *maps_.weyl();
        return c <= pq() ? alg.y(alpha, c) : alg.x(alpha, c - pq());
    }

    /// Contribution of a column-c variable to the degree: -1 for y, +1 for x.
    int sign(int c) const { return c <= pq() ? -1 : 1; }

    /// mu(E^c_c) for a column total t.
    Rational weight_of_total(int c, int t) const
    {
        if (c <= pq())
            return Rational(-t + (column_odd(c) ? 1 : -1) * scenario().d);
        return Rational(t);
    }

    /// Column total forced by mu(E^c_c), or -1 if no monomial has that weight.
    int total_of_weight(int c, const Rational& mu) const
    {
        Rational t = c <= pq() ? Rational((column_odd(c) ? 1 : -1) * scenario().d) - mu : mu;
        if (t.get_den() != 1 || sgn(t) < 0)
            return -1;
        long v = t.get_num().get_si();
        if (column_odd(c) && v > scenario().d)
            return -1;
        return static_cast<int>(v);
    }

    /// The d-side dictionary value mubar_c = mu(E^c_c) + (-1)^{|c|} d on y-columns.
    Rational mubar(int c, const Rational& mu) const
    {
        if (c <= pq())
            return mu + Rational((column_odd(c) ? -1 : 1) * scenario().d);
        return mu;
    }

    /// All monomials whose column c has exactly totals[c-1] factors.
    std::vector<Monomial> monomials_with_totals(const std::vector<int>& totals, std::size_t cap) const
    {
        std::vector<Monomial> out{Monomial{}};
        const int d = scenario().d;
        for (int c = 1; c <= columns(); ++c) {
            std::vector<Monomial> next;
            std::vector<int> e(d + 1, 0);
            // Distribute totals[c-1] over alpha = 1..d.
            auto rec = [&](auto&& self, int alpha, int left) -> void {
                if (alpha == d) {
                    if (column_odd(c) && left > 1)
                        return;
                    e[d] = left;
                    for (const auto& m : out) {
                        Monomial n = m;
                        for (int a = 1; a <= d; ++a)
                            if (e[a])
                                n.add(variable(c, a), e[a]);
                        next.push_back(n);
                    }
                    return;
                }
                for (int v = 0; v <= left && (!column_odd(c) || v <= 1); ++v) {
                    e[alpha] = v;
                    self(self, alpha + 1, left - v);
                }
            };
            rec(rec, 1, totals[c - 1]);
            out = std::move(next);
            if (out.size() > cap * 64 + 4096)
                throw DimensionCap("column distribution exceeds the enumeration bound");
        }
        return out;
    }

    /// Block degrees (x minus y) of a monomial.
    std::vector<int> block_degrees(const Monomial& m) const
    {
        std::vector<int> k(scenario().xi.size(), 0);
        for (int c = 1; c <= columns(); ++c)
            for (int a = 1; a <= scenario().d; ++a)
                k[block_[a]] += sign(c) * m[variable(c, a)];
        return k;
    }

    /// Enumerates V(k)_mu from the s-side data and confirms every vector through the Cartan and degree operators.
    WeightSpaceBasis enumerate_s(const WeightData& wd, std::size_t cap = 64) const
    {
        if (wd.mu.size() != static_cast<std::size_t>(columns()) || wd.k.size() != scenario().xi.size())
            throw std::invalid_argument("weight data has the wrong length");
        std::vector<int> totals;
        for (int c = 1; c <= columns(); ++c) {
            int t = total_of_weight(c, wd.mu[c - 1]);
            if (t < 0)
                return {wd, {}};
            totals.push_back(t);
        }
        WeightSpaceBasis b{wd, {}};
        for (const auto& m : monomials_with_totals(totals, cap))
            if (block_degrees(m) == wd.k)
                b.monomials.push_back(m);
        std::sort(b.monomials.begin(), b.monomials.end());
        if (b.dim() > cap)
            throw DimensionCap("weight space dimension " + std::to_string(b.dim()) + " exceeds cap " + std::to_string(cap));
        for (const auto& m : b.monomials)
            confirm_s(m, wd);
        return b;
    }

    /// Enumerates W(mubar)_[k] from the d-side data: per-site degrees, then the e_aa block sums.
    WeightSpaceBasis enumerate_d(const std::vector<Rational>& mubar, const std::vector<int>& k, std::size_t cap = 64) const
    {
        std::vector<int> totals;
        for (int c = 1; c <= columns(); ++c) {
            Rational t = c <= pq() ? -mubar[c - 1] : mubar[c - 1];
            if (t.get_den() != 1 || sgn(t) < 0)
                return {{k, {}}, {}};
            totals.push_back(static_cast<int>(t.get_num().get_si()));
        }
        const auto& sc = scenario();
        const int mn = sc.m - sc.n;
        WeightSpaceBasis b{{k, {}}, {}};
        for (const auto& m : monomials_with_totals(totals, cap)) {
            SuperPoly f = SuperPoly::monomial(fock(), m);
            if (f.is_zero())
                continue;
            std::vector<Rational> eta(sc.xi.size(), Rational(0));
            bool eigen = true;
            for (int a = 1; a <= sc.d; ++a) {
                SuperPoly g = weyl_act(d_cartan(a), f);
                Rational ev = g.terms().coefficient(m);
                eigen = eigen && g == f * ev;
                eta[block_[a]] += ev;
            }
            if (!eigen)
                throw std::logic_error("d-side Cartan element does not act diagonally on a monomial");
            bool keep = true;
            for (std::size_t a = 0; a < sc.xi.size(); ++a)
                keep = keep && eta[a] == Rational(k[a] + mn * sc.xi[a]);
            if (keep)
                b.monomials.push_back(m);
        }
        std::sort(b.monomials.begin(), b.monomials.end());
        if (b.dim() > cap)
            throw DimensionCap("weight space dimension " + std::to_string(b.dim()) + " exceeds cap " + std::to_string(cap));
        return b;
    }

    /// phi_d of the diagonal e_aa.
    WeylElement d_cartan(int a) const
    {
        const int label = (a - 1) * scenario().d + (a - 1);
        WeylElement r(maps_.weyl());
        for (int s = 0; s < static_cast<int>(scenario().gamma.size()); ++s)
            r += maps_.phi_d(s, label, 0);
        return r;
    }

    /// phi_s of the diagonal E^c_c.
    WeylElement s_cartan(int c) const
    {
        const int N = columns();
        WeylElement r(maps_.weyl());
        for (int s = 0; s < static_cast<int>(scenario().xi.size()); ++s)
            r += maps_.phi_s(s, (c - 1) * N + (c - 1), 0);
        return r;
    }

    /// Degree operator of block a.
    WeylElement block_degree_operator(int block) const
    {
        const auto& alg = maps_.weyl();
        WeylElement r(alg);
        for (int al = 1; al <= scenario().d; ++al) {
            if (block_[al] != block)
                continue;
            for (int c = 1; c <= columns(); ++c) {
                int v = variable(c, al);
                int dv = c <= pq() ? alg->dy(al, c) : alg->dx(al, c - pq());
                r += WeylElement::generator(alg, v, Rational(sign(c))) * WeylElement::generator(alg, dv);
            }
        }
        return r;
    }

    /// Restricts an operator to the span of the basis; throws Leakage on any component outside it.
    QMatrix restrict_operator(const WeylElement& op, const WeightSpaceBasis& b, std::string tag = {}) const
    {
        QMatrix r(b.dim());
        r.tag = std::move(tag);
        std::map<Monomial, std::size_t> pos;
        for (std::size_t i = 0; i < b.dim(); ++i)
            pos[b.monomials[i]] = i;
        for (std::size_t j = 0; j < b.dim(); ++j) {
            SuperPoly img = weyl_act(op, SuperPoly::monomial(fock(), b.monomials[j]));
            for (const auto& [m, c] : img.terms().map()) {
                auto it = pos.find(m);
                if (it == pos.end())
                    throw Leakage("operator " + r.tag + " leaves the weight space at " +
                                  SuperPoly::monomial(fock(), m).to_string());
                r(it->second, j) = c;
            }
        }
        return r;
    }

    /// Weight spaces obtained by grouping all monomials with the given column totals by block degree.
    std::vector<WeightSpaceBasis> spaces_with_totals(const std::vector<int>& totals, std::size_t cap = 64) const
    {
        std::map<std::vector<int>, std::vector<Monomial>> groups;
        for (const auto& m : monomials_with_totals(totals, cap))
            if (!SuperPoly::monomial(fock(), m).is_zero())
                groups[block_degrees(m)].push_back(m);
        std::vector<WeightSpaceBasis> out;
        for (auto& [k, ms] : groups) {
            WeightData wd{k, {}};
            for (int c = 1; c <= columns(); ++c)
                wd.mu.push_back(weight_of_total(c, totals[c - 1]));
            std::sort(ms.begin(), ms.end());
            out.push_back({wd, ms});
        }
        return out;
    }

private:
    void confirm_s(const Monomial& m, const WeightData& wd) const
    {
        SuperPoly f = SuperPoly::monomial(fock(), m);
        for (int c = 1; c <= columns(); ++c)
            if (!(weyl_act(s_cartan(c), f) == f * wd.mu[c - 1]))
                throw std::logic_error("monomial " + f.to_string() + " is not a weight vector of the stated weight");
        for (std::size_t a = 0; a < wd.k.size(); ++a)
            if (!(weyl_act(block_degree_operator(static_cast<int>(a)), f) == f * Rational(wd.k[a])))
                throw std::logic_error("monomial " + f.to_string() + " has the wrong block degree");
    }

    DualityMaps maps_;
    std::vector<int> block_; // block of each superscript alpha (1-based)
};

/// Outcome of the spectral checks on one weight space.
struct SpectralReport {
    std::size_t dim = 0;
    std::size_t matrices = 0;
    bool commute = false;
    std::optional<std::pair<std::string, std::string>> noncommuting;
    bool cyclic = false;
    int cyclic_vector = -1; // basis index
    bool simple = false;
    int resamples = 0;
    std::vector<std::vector<long>> combinations; // coefficient vectors tried
    bool pass() const { return commute && cyclic && simple; }
};

/// Dimension of the unital matrix algebra generated by the family.
inline std::size_t generated_algebra_dim(const std::vector<QMatrix>& fam, std::size_t n)
{
    EchelonSpan span(n * n);
    std::vector<QMatrix> frontier{QMatrix::identity(n)};
    span.insert(frontier.front().a);
    while (!frontier.empty()) {
        std::vector<QMatrix> next;
        for (const auto& b : frontier)
            for (const auto& g : fam) {
                QMatrix p = g * b;
                if (span.insert(p.a))
                    next.push_back(std::move(p));
            }
        frontier = std::move(next);
    }
    return span.dim();
}

/// Krylov closure of v under the family; returns the dimension of the generated submodule.
inline std::size_t krylov_dim(const std::vector<QMatrix>& fam, const QVector& v)
{
    EchelonSpan span(v.size());
    std::vector<QVector> frontier;
    if (span.insert(v))
        frontier.push_back(v);
    while (!frontier.empty()) {
        std::vector<QVector> next;
        for (const auto& u : frontier)
            for (const auto& g : fam) {
                QVector w = g.apply(u);
                if (span.insert(w))
                    next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return span.dim();
}

inline SpectralReport check_spectral_claims(const std::vector<QMatrix>& fam, std::size_t n, std::mt19937_64& rng,
                                            int max_resamples = 3)
{
    SpectralReport r;
    r.dim = n;
    r.matrices = fam.size();
    r.commute = true;
    for (std::size_t i = 0; i < fam.size() && r.commute; ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (!(fam[i] * fam[j] == fam[j] * fam[i])) {
                r.commute = false;
                r.noncommuting = std::pair{fam[i].tag, fam[j].tag};
                break;
            }
    for (std::size_t j = 0; j < n && !r.cyclic; ++j) {
        QVector e(n, Rational(0));
        e[j] = 1;
        if (krylov_dim(fam, e) == n) {
            r.cyclic = true;
            r.cyclic_vector = static_cast<int>(j);
        }
    }
    std::uniform_int_distribution<long> coef(-20, 20);
    for (int attempt = 0; attempt <= max_resamples && !r.simple; ++attempt) {
        std::vector<long> cs;
        QMatrix comb(n);
        for (const auto& g : fam) {
            long c = coef(rng);
            cs.push_back(c);
            comb = comb + g.scaled(Rational(c));
        }
        r.combinations.push_back(cs);
        r.simple = squarefree(charpoly(comb));
        if (!r.simple)
            r.resamples = attempt + 1;
    }
    return r;
}

/// Window-extracted Gaudin generators of both sides, as Weyl elements.
struct GaudinFamilies {
    std::vector<std::pair<std::string, WeylElement>> s_side;
    std::vector<std::pair<std::string, WeylElement>> d_side;
};

inline GaudinFamilies gaudin_families(const DualityMaps& maps, Horizon h)
{
    const auto& sc = maps.scenario();
    const WeylElement proto(maps.weyl());
    auto mu = jordan_mu(sc.d, sc.w, sc.xi);
    auto nu = jordan_nu(sc.shape(), sc.z, sc.gamma);
    GaudinFamilies f;
    auto ber = berezinian(build_Ls(sc.shape(), nu, sc.s_sites(), maps.s_image(), proto, h));
    for (const auto& c : extract_generators(ber))
        f.s_side.emplace_back(family_label('s', c.zexp, c.dexp), c.value);
    auto cd = cdet(build_Ld_hat(sc.d, mu, sc.d_sites(), maps.d_image(), proto, h));
    for (const auto& c : extract_generators(cd))
        f.d_side.emplace_back(family_label('d', c.zexp, c.dexp), c.value);
    return f;
}

/// Per-space outcome of the weight-space suite.
struct WeightSpaceOutcome {
    WeightData weight;
    std::vector<Rational> mubar;
    std::size_t dim = 0;
    bool bases_agree = false;      // s-side enumeration equals the d-side enumeration through mubar
    bool no_leakage = false;
    SpectralReport spectral;       // s-side family
    bool families_commute = false; // s-side and d-side matrices together
    std::size_t algebra_dim_s = 0, algebra_dim_d = 0, algebra_dim_joint = 0;
    std::string error;
    bool pass() const
    {
        return error.empty() && bases_agree && no_leakage && spectral.pass() && families_commute &&
               algebra_dim_s == algebra_dim_joint && algebra_dim_d == algebra_dim_joint;
    }
};

struct WeightSuiteResult {
    std::vector<Rational> w, z;
    std::uint64_t seed = 0;
    std::vector<WeightSpaceOutcome> spaces;
    bool pass() const
    {
        return !spaces.empty() && std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.pass(); });
    }
};

/// Distinct rationals with small height from the stream.
inline std::vector<Rational> sample_points(std::mt19937_64& rng, std::size_t count)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    std::vector<Rational> out;
    while (out.size() < count) {
        const long a = num(rng);
        Rational r = fraction(a, den(rng));
        if (std::find(out.begin(), out.end(), r) == out.end())
            out.push_back(r);
    }
    return out;
}

/// Runs the weight-space checks on `count` spaces with dimensions spread over [min_dim, max_dim].
/// The scenario's points are replaced by sampled ones and gamma by (1^N); xi becomes (1^d) unless keep_xi is set.
inline WeightSuiteResult run_weight_space_suite(DualityScenario sc, std::uint64_t seed, std::size_t count = 3,
                                                std::size_t min_dim = 2, std::size_t max_dim = 16, std::size_t cap = 64,
                                                Horizon h = {-3, -3}, int max_total = 3, bool keep_xi = false)
{
    WeightSuiteResult res;
    res.seed = seed;
    std::mt19937_64 rng(seed);
    const int N = sc.shape().size();
    sc.gamma.assign(N, 1);
    if (!keep_xi)
        sc.xi.assign(sc.d, 1);
    sc.w = sample_points(rng, sc.xi.size());
    sc.z = sample_points(rng, sc.gamma.size());
    sc.zmin = h.z;
    sc.dmin = h.d;
    res.w = sc.w;
    res.z = sc.z;
    FockModel model(sc);

    std::vector<WeightSpaceBasis> candidates;
    std::vector<int> t(N, 0);
    auto rec = [&](auto&& self, int c) -> void {
        if (c == N) {
            for (auto& space : model.spaces_with_totals(t, cap))
                if (space.dim() >= min_dim && space.dim() <= max_dim)
                    candidates.push_back(std::move(space));
            return;
        }
        int top = model.column_odd(c + 1) ? std::min(max_total, sc.d) : max_total;
        for (int v = 0; v <= top; ++v) {
            t[c] = v;
            self(self, c + 1);
        }
    };
    rec(rec, 0);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.dim() < b.dim(); });
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < count && i < candidates.size(); ++i) {
        std::size_t idx = count == 1 ? candidates.size() - 1 : i * (candidates.size() - 1) / (count - 1);
        if (picks.empty() || picks.back() != idx)
            picks.push_back(idx);
    }
    if (picks.empty())
        return res;
    auto fams = gaudin_families(model.maps(), h);

    for (std::size_t idx : picks) {
        const auto& space = candidates[idx];
        WeightSpaceOutcome o;
        o.weight = space.weight;
        o.dim = space.dim();
        try {
            auto sb = model.enumerate_s(space.weight, cap);
            for (int c = 1; c <= N; ++c)
                o.mubar.push_back(model.mubar(c, space.weight.mu[c - 1]));
            auto db = model.enumerate_d(o.mubar, space.weight.k, cap);
            o.bases_agree = sb.monomials == db.monomials && sb.monomials == space.monomials;
            std::vector<QMatrix> ms, md;
            for (const auto& [tag, op] : fams.s_side)
                ms.push_back(model.restrict_operator(op, sb, tag));
            for (const auto& [tag, op] : fams.d_side)
                md.push_back(model.restrict_operator(op, sb, tag));
            o.no_leakage = true;
            o.spectral = check_spectral_claims(ms, sb.dim(), rng);
            std::vector<QMatrix> joint = ms;
            joint.insert(joint.end(), md.begin(), md.end());
            o.families_commute = true;
            for (std::size_t i = 0; i < joint.size() && o.families_commute; ++i)
                for (std::size_t j = i + 1; j < joint.size(); ++j)
                    if (!(joint[i] * joint[j] == joint[j] * joint[i])) {
                        o.families_commute = false;
                        break;
                    }
            o.algebra_dim_s = generated_algebra_dim(ms, sb.dim());
            o.algebra_dim_d = generated_algebra_dim(md, sb.dim());
            o.algebra_dim_joint = generated_algebra_dim(joint, sb.dim());
        } catch (const std::exception& e) {
            o.error = e.what();
        }
        res.spaces.push_back(std::move(o));
    }
    return res;
}

} // namespace gaudin
