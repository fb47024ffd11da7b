#pragma once

// Finite-dimensional Lie superalgebras given by structure constants (general linear superalgebras,
// truncated current algebras and their direct sums) and their enveloping algebras in PBW normal form.

#include "gaudin/monomial.hpp"
#include "gaudin/rational.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gaudin {

using SparseVector = std::vector<std::pair<int, Rational>>;

struct LieBasisLabel {
    std::string name;
    bool odd = false;
    int site = 0;   // summand of a direct sum (0 for a plain algebra)
    int base = 0;   // index of the underlying label in the base algebra
    int degree = 0; // power of the truncated current variable
};

/// Lie superalgebra by homogeneous basis and structure constants.
class LieSuperData {
public:
    LieSuperData() = default;

    LieSuperData(std::vector<LieBasisLabel> basis, std::vector<std::vector<SparseVector>> table)
        : basis_(std::move(basis)), table_(std::move(table))
    {
        if (table_.size() != basis_.size())
            throw std::invalid_argument("structure table has wrong size");
        for (auto& row : table_)
            if (row.size() != basis_.size())
                throw std::invalid_argument("structure table has wrong size");
    }

    std::size_t dim() const { return basis_.size(); }
    const LieBasisLabel& label(std::size_t i) const { return basis_[i]; }
    const std::vector<LieBasisLabel>& labels() const { return basis_; }
    bool odd(std::size_t i) const { return basis_[i].odd; }
    const SparseVector& bracket(std::size_t i, std::size_t j) const { return table_[i][j]; }

    /// Bracket of two arbitrary vectors in the basis.
    SparseVector bracket(const SparseVector& a, const SparseVector& b) const
    {
        std::vector<Rational> acc(dim());
        for (const auto& [i, ci] : a)
            for (const auto& [j, cj] : b)
                for (const auto& [k, ck] : table_[i][j])
                    acc[k] += ci * cj * ck;
        SparseVector r;
        for (std::size_t k = 0; k < acc.size(); ++k)
            if (sgn(acc[k]) != 0)
                r.emplace_back(static_cast<int>(k), acc[k]);
        return r;
    }

    /// Checks parity compatibility, superskew symmetry and the super Jacobi identity on the basis.
    /// Returns an empty string on success and a description of the first violation otherwise.
    std::string validate() const
    {
        const std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int pij = (odd(i) + odd(j)) & 1;
                for (const auto& [k, c] : table_[i][j])
                    if (odd(k) != (pij == 1))
                        return "bracket [" + label(i).name + ", " + label(j).name + "] is not homogeneous";
                auto sym = table_[j][i];
                int s = (odd(i) && odd(j)) ? 1 : -1; // [A,B] = -(-1)^{|A||B|}[B,A]
                std::vector<Rational> acc(n);
                for (const auto& [k, c] : table_[i][j]) acc[k] += c;
                for (const auto& [k, c] : sym) acc[k] -= s * c;
                for (const auto& v : acc)
                    if (sgn(v) != 0)
                        return "superskew symmetry fails for " + label(i).name + ", " + label(j).name;
            }
        // [A,[B,C]] = [[A,B],C] + (-1)^{|A||B|} [B,[A,C]]
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    std::vector<Rational> acc(n);
                    for (const auto& [k, ck] : table_[b][c])
                        for (const auto& [l, cl] : table_[a][k]) acc[l] += ck * cl;
                    for (const auto& [k, ck] : table_[a][b])
                        for (const auto& [l, cl] : table_[k][c]) acc[l] -= ck * cl;
                    int sgn_ab = (odd(a) && odd(b)) ? -1 : 1;
                    for (const auto& [k, ck] : table_[a][c])
                        for (const auto& [l, cl] : table_[b][k]) acc[l] -= sgn_ab * ck * cl;
                    for (const auto& v : acc)
                        if (sgn(v) != 0)
                            return "super Jacobi fails for " + label(a).name + ", " + label(b).name + ", " +
                                   label(c).name;
                }
        return {};
    }

private:
    std::vector<LieBasisLabel> basis_;
    std::vector<std::vector<SparseVector>> table_;
};

/// Parity |i| of an index of gl_{p+m|q+n}: even on {1..p} and {p+q+1..p+q+m}.
struct GlShape {
    int p = 0, q = 0, m = 0, n = 0;
    int size() const { return p + q + m + n; }
    bool odd(int i) const { return !((i >= 1 && i <= p) || (i > p + q && i <= p + q + m)); }
    /// Basis position of E^i_j.
    int index(int i, int j) const { return (i - 1) * size() + (j - 1); }
};

inline LieSuperData make_gl_with_prefix(const GlShape& sh, const std::string& prefix)
{
    const int N = sh.size();
    if (N < 1)
        throw std::invalid_argument("general linear superalgebra needs a nonzero size");
    std::vector<LieBasisLabel> basis;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            LieBasisLabel l;
            l.name = prefix + std::to_string(i) + "," + std::to_string(j);
            l.odd = sh.odd(i) != sh.odd(j);
            l.base = sh.index(i, j);
            basis.push_back(l);
        }
    const int D = N * N;
    std::vector<std::vector<SparseVector>> table(D, std::vector<SparseVector>(D));
    // [E^i_j, E^r_s] = d_{jr} E^i_s - (-1)^{(|i|+|j|)(|r|+|s|)} d_{is} E^r_j
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int r = 1; r <= N; ++r)
                for (int s = 1; s <= N; ++s) {
                    std::vector<std::pair<int, Rational>> v;
                    Rational a1 = (j == r) ? 1 : 0;
                    int par = ((sh.odd(i) + sh.odd(j)) * (sh.odd(r) + sh.odd(s))) & 1;
                    Rational a2 = (i == s) ? (par ? 1 : -1) : 0;
                    std::vector<Rational> acc(D);
                    if (sgn(a1) != 0) acc[sh.index(i, s)] += a1;
                    if (sgn(a2) != 0) acc[sh.index(r, j)] += a2;
                    for (int k = 0; k < D; ++k)
                        if (sgn(acc[k]) != 0)
                            v.emplace_back(k, acc[k]);
                    table[sh.index(i, j)][sh.index(r, s)] = std::move(v);
                }
    return LieSuperData(std::move(basis), std::move(table));
}

inline LieSuperData make_gl(int p, int q, int m, int n)
{
    if (p < 0 || q < 0 || m < 0 || n < 0 || p + q + m + n < 1)
        throw std::invalid_argument("general linear superalgebra needs a nonzero size");
    return make_gl_with_prefix(GlShape{p, q, m, n}, "E");
}

inline LieSuperData make_gld(int d)
{
    if (d < 1)
        throw std::invalid_argument("gl_d needs d >= 1");
    return make_gl_with_prefix(GlShape{d, 0, 0, 0}, "e");
}

/// Direct sum of truncated current algebras base (x) C[t]/t^gamma_i, one per site.
/// Basis order: site, then base label, then degree.
class TakiffSum {
public:
    TakiffSum(const LieSuperData& base, std::vector<Rational> points, std::vector<int> orders)
        : base_(base), points_(std::move(points)), orders_(std::move(orders))
    {
        if (points_.empty() || points_.size() != orders_.size())
            throw std::invalid_argument("takiff sum needs matching nonempty points and orders");
        for (int g : orders_)
            if (g < 1)
                throw std::invalid_argument("takiff orders must be positive");
        std::vector<LieBasisLabel> basis;
        for (std::size_t s = 0; s < orders_.size(); ++s) {
            offsets_.push_back(static_cast<int>(basis.size()));
            for (std::size_t b = 0; b < base_.dim(); ++b)
                for (int k = 0; k < orders_[s]; ++k) {
                    LieBasisLabel l;
                    l.name = base_.label(b).name + "t" + std::to_string(k) + "@" + std::to_string(s + 1);
                    l.odd = base_.odd(b);
                    l.site = static_cast<int>(s);
                    l.base = static_cast<int>(b);
                    l.degree = k;
                    basis.push_back(l);
                }
        }
        const std::size_t D = basis.size();
        std::vector<std::vector<SparseVector>> table(D, std::vector<SparseVector>(D));
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j) {
                const auto& li = basis[i];
                const auto& lj = basis[j];
                if (li.site != lj.site)
                    continue;
                int deg = li.degree + lj.degree;
                if (deg >= orders_[li.site])
                    continue;
                SparseVector v;
                for (const auto& [k, c] : base_.bracket(li.base, lj.base))
                    v.emplace_back(index(li.site, k, deg), c);
                table[i][j] = std::move(v);
            }
        lie_ = LieSuperData(std::move(basis), std::move(table));
    }

    const LieSuperData& lie() const { return lie_; }
    const LieSuperData& base() const { return base_; }
    const std::vector<Rational>& points() const { return points_; }
    const std::vector<int>& orders() const { return orders_; }
    std::size_t sites() const { return orders_.size(); }

    int index(int site, int base_label, int degree) const
    {
        if (site < 0 || site >= static_cast<int>(orders_.size()) || degree < 0 || degree >= orders_[site])
            throw std::out_of_range("takiff label out of range");
        return offsets_[site] + base_label * orders_[site] + degree;
    }

private:
    LieSuperData base_;
    std::vector<Rational> points_;
    std::vector<int> orders_;
    std::vector<int> offsets_;
    LieSuperData lie_;
};

/// Enveloping algebra with a memoized rewriting table for right multiplication by a generator.
class PBWAlgebra {
public:
    explicit PBWAlgebra(LieSuperData lie) : lie_(std::move(lie))
    {
        if (lie_.dim() > kMaxGenerators)
            throw std::invalid_argument("Lie superalgebra too large for the PBW key format");
    }

    const LieSuperData& lie() const { return lie_; }

    /// Normal form of (monomial m) * (basis element j), cached.
    const SparseTerms& right_mul_gen(const Monomial& m, int j) const
    {
        Key key{m, j};
        {
            std::lock_guard lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end())
                return it->second;
        }
        SparseTerms r = compute(m, j);
        std::lock_guard lock(mu_);
        return cache_.try_emplace(key, std::move(r)).first->second;
    }

    std::size_t cache_size() const
    {
        std::lock_guard lock(mu_);
        return cache_.size();
    }

    int parity_of(const Monomial& m) const
    {
        int p = 0;
        for (std::size_t i = 0; i < lie_.dim(); ++i)
            if (lie_.odd(i))
                p += m[i];
        return p & 1;
    }

private:
    struct Key {
        Monomial m;
        int j;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return MonomialHash{}(k.m) * 31 + std::size_t(k.j); }
    };

    SparseTerms mul_terms_gen(const SparseTerms& t, int j) const
    {
        SparseTerms r;
        for (const auto& [m, c] : t.map())
            r.add_all(right_mul_gen(m, j), c);
        return r;
    }

    SparseTerms compute(const Monomial& m, int j) const
    {
        int last = -1;
        for (int i = static_cast<int>(lie_.dim()) - 1; i >= 0; --i)
            if (m[i]) {
                last = i;
                break;
            }
        SparseTerms r;
        if (last < j || (last == j && !lie_.odd(j))) {
            Monomial n = m;
            n.add(j, 1);
            r.add(n, 1);
            return r;
        }
        Monomial u = m;
        u.add(last, -1);
        if (last == j) {
            // x_j x_j = 1/2 [x_j, x_j] for odd x_j
            SparseTerms base;
            base.add(u, 1);
            for (const auto& [k, c] : lie_.bracket(j, j))
                r.add_all(mul_terms_gen(base, k), c / 2);
            return r;
        }
        // u x_l x_j = (-1)^{|l||j|} (u x_j) x_l + u [x_l, x_j]
        SparseTerms base;
        base.add(u, 1);
        SparseTerms uj = mul_terms_gen(base, j);
        int s = (lie_.odd(last) && lie_.odd(j)) ? -1 : 1;
        r.add_all(mul_terms_gen(uj, last), s);
        for (const auto& [k, c] : lie_.bracket(last, j))
            r.add_all(mul_terms_gen(base, k), c);
        return r;
    }

    LieSuperData lie_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Key, SparseTerms, KeyHash> cache_;
};

using PBWAlgebraPtr = std::shared_ptr<const PBWAlgebra>;

inline PBWAlgebraPtr make_pbw(LieSuperData lie) { return std::make_shared<const PBWAlgebra>(std::move(lie)); }

class PBWElement;
PBWElement pbw_mul(const PBWElement& a, const PBWElement& b);

/// Element of U(g) as a combination of ordered PBW monomials.
class PBWElement {
public:
    PBWElement() = default;
    explicit PBWElement(PBWAlgebraPtr alg) : alg_(std::move(alg)) {}
    PBWElement(PBWAlgebraPtr alg, const Rational& c) : alg_(std::move(alg)) { terms_.add(Monomial{}, c); }

    static PBWElement generator(PBWAlgebraPtr alg, int i, const Rational& c = 1)
    {
        PBWElement e(std::move(alg));
        Monomial m;
        m.exp[i] = 1;
        e.terms_.add(m, c);
        return e;
    }

    static PBWElement from_vector(PBWAlgebraPtr alg, const SparseVector& v)
    {
        PBWElement e(std::move(alg));
        for (const auto& [i, c] : v) {
            Monomial m;
            m.exp[i] = 1;
            e.terms_.add(m, c);
        }
        return e;
    }

    const PBWAlgebraPtr& algebra() const { return alg_; }
    const SparseTerms& terms() const { return terms_; }
    SparseTerms& terms() { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int parity() const
    {
        int p = -2;
        for (const auto& [m, c] : terms_.map()) {
            int q = alg_->parity_of(m);
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }

    PBWElement parity_part(int par) const
    {
        PBWElement r(alg_);
        for (const auto& [m, c] : terms_.map())
            if (alg_->parity_of(m) == par)
                r.terms_.add(m, c);
        return r;
    }

    PBWElement& operator+=(const PBWElement& o)
    {
        adopt(o);
        terms_.add_all(o.terms_);
        return *this;
    }
    PBWElement& operator-=(const PBWElement& o)
    {
        adopt(o);
        terms_.add_all(o.terms_, -1);
        return *this;
    }
    PBWElement& operator*=(const Rational& s)
    {
        terms_.scale(s);
        return *this;
    }
    friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
    friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
    friend PBWElement operator-(PBWElement a) { return a *= Rational(-1); }
    friend PBWElement operator*(PBWElement a, const Rational& s) { return a *= s; }
    friend PBWElement operator*(const Rational& s, PBWElement a) { return a *= s; }
    friend PBWElement operator*(const PBWElement& a, const PBWElement& b) { return pbw_mul(a, b); }
    friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_.sorted()) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c.get_str() << ")";
            for (std::size_t i = 0; i < alg_->lie().dim(); ++i)
                if (m[i])
                    os << "*" << alg_->lie().label(i).name << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
        }
        return os.str();
    }

private:
    void adopt(const PBWElement& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        else if (o.alg_ && alg_ != o.alg_)
            throw std::invalid_argument("PBW elements of different enveloping algebras");
    }

    PBWAlgebraPtr alg_;
    SparseTerms terms_;
};

inline PBWElement zero_like(const PBWElement& a) { return PBWElement(a.algebra()); }
inline PBWElement one_like(const PBWElement& a) { return PBWElement(a.algebra(), 1); }
inline bool is_zero(const PBWElement& a) { return a.is_zero(); }

inline PBWElement pbw_mul(const PBWElement& a, const PBWElement& b)
{
    if (a.algebra() && b.algebra() && a.algebra() != b.algebra())
        throw std::invalid_argument("PBW elements of different enveloping algebras");
    const auto& alg = a.algebra() ? a.algebra() : b.algebra();
    PBWElement r(alg);
    if (a.is_zero() || b.is_zero())
        return r;
    const std::size_t D = alg->lie().dim();
    for (const auto& [mb, cb] : b.terms().map()) {
        SparseTerms cur = a.terms();
        for (std::size_t j = 0; j < D; ++j)
            for (int e = 0; e < mb[j]; ++e) {
                SparseTerms next;
                for (const auto& [m, c] : cur.map())
                    next.add_all(alg->right_mul_gen(m, static_cast<int>(j)), c);
                cur = std::move(next);
            }
        r.terms().add_all(cur, cb);
    }
    return r;
}

inline PBWElement pbw_commutator(const PBWElement& a, const PBWElement& b)
{
    PBWElement r = zero_like(a.algebra() ? a : b);
    for (int pa = 0; pa < 2; ++pa) {
        PBWElement ap = a.parity_part(pa);
        if (ap.is_zero())
            continue;
        for (int pb = 0; pb < 2; ++pb) {
            PBWElement bp = b.parity_part(pb);
            if (bp.is_zero())
                continue;
            r += ap * bp;
            if (pa * pb)
                r += bp * ap;
            else
                r -= bp * ap;
        }
    }
    return r;
}

/// Image of A (x) t^r under the evaluation map of order gamma at the point of `site`:
/// sum_{i < gamma} C(r, i) a^{r-i} (A (x) tbar^i).
inline PBWElement evaluation_image(const PBWAlgebraPtr& alg, const TakiffSum& sum, int site, int base_label, int r)
{
    if (r < 0)
        throw std::invalid_argument("evaluation map needs a nonnegative power");
    PBWElement e(alg);
    const Rational& a = sum.points()[site];
    for (int i = 0; i <= r && i < sum.orders()[site]; ++i) {
        Rational c = Rational(binomial(r, i)) * rational_pow(a, r - i);
        if (sgn(c) != 0)
            e += PBWElement::generator(alg, sum.index(site, base_label, i), c);
    }
    return e;
}

/// Evaluation map of order gamma at all sites: the per-site images summed (coproduct then evaluation).
inline PBWElement evaluation_map(const PBWAlgebraPtr& alg, const TakiffSum& sum, int base_label, int r)
{
    PBWElement e(alg);
    for (std::size_t s = 0; s < sum.sites(); ++s)
        e += evaluation_image(alg, sum, static_cast<int>(s), base_label, r);
    return e;
}

} // namespace gaudin
