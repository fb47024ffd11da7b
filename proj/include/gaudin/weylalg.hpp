#pragma once

// The Weyl superalgebra of differential operators in the Fock variables, kept in normal order
// (multiplication operators left of derivatives), its action on the Fock space, and the symbol map.

#include "gaudin/superpoly.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

/// Shared description of one Weyl superalgebra: the profile and its phase-space alphabet.
/// Variables occupy positions [0, N) of the alphabet and their derivatives [N, 2N), aligned.
class WeylAlgebra {
public:
    explicit WeylAlgebra(const WeylProfile& pr) : profile_(pr), gens_(phase_space_generators(pr)), fock_(fock_generators(pr))
    {
        vars_ = gens_->size() / 2;
        for (std::size_t i = 0; i < vars_; ++i) {
            if (gens_->partner(i) != static_cast<int>(i + vars_))
                throw std::logic_error("phase-space alphabet is not aligned");
            if (gens_->odd(i))
                odd_vars_.push_back(static_cast<int>(i));
            else
                even_vars_.push_back(static_cast<int>(i));
        }
    }

    const WeylProfile& profile() const { return profile_; }
    const GeneratorSetPtr& generators() const { return gens_; }
    const GeneratorSetPtr& fock() const { return fock_; }
    std::size_t variable_count() const { return vars_; }
    const std::vector<int>& odd_variables() const { return odd_vars_; }
    const std::vector<int>& even_variables() const { return even_vars_; }

    int x(int a, int i) const { return gens_->index(GenKind::x, a, i); }
    int y(int a, int r) const { return gens_->index(GenKind::y, a, r); }
    int dx(int a, int i) const { return gens_->index(GenKind::px, a, i); }
    int dy(int a, int r) const { return gens_->index(GenKind::py, a, r); }

private:
    WeylProfile profile_;
    GeneratorSetPtr gens_;
    GeneratorSetPtr fock_;
    std::size_t vars_ = 0;
    std::vector<int> odd_vars_;
    std::vector<int> even_vars_;
};

using WeylAlgebraPtr = std::shared_ptr<const WeylAlgebra>;

inline WeylAlgebraPtr make_weyl_algebra(const WeylProfile& pr) { return std::make_shared<const WeylAlgebra>(pr); }

class WeylElement;
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);

/// Normal-ordered element of the Weyl superalgebra.
class WeylElement {
public:
    WeylElement() = default;
    explicit WeylElement(WeylAlgebraPtr alg) : alg_(std::move(alg)) {}
    WeylElement(WeylAlgebraPtr alg, const Rational& c) : alg_(std::move(alg)) { terms_.add(Monomial{}, c); }

    /// A single alphabet generator (variable or derivative).
    static WeylElement generator(WeylAlgebraPtr alg, int index, const Rational& c = 1)
    {
        WeylElement e(std::move(alg));
        Monomial m;
        m.exp[index] = 1;
        e.terms_.add(m, c);
        return e;
    }

    /// Element whose key is already in normal order.
    static WeylElement normal_monomial(WeylAlgebraPtr alg, const Monomial& m, const Rational& c = 1)
    {
        WeylElement e(alg);
        for (std::size_t i = 0; i < alg->generators()->size(); ++i)
            if (alg->generators()->odd(i) && m[i] > 1)
                return e;
        e.terms_.add(m, c);
        return e;
    }

    const WeylAlgebraPtr& algebra() const { return alg_; }
    const SparseTerms& terms() const { return terms_; }
    SparseTerms& terms() { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int parity_of(const Monomial& m) const { return detail::monomial_parity(*alg_->generators(), m); }

    int parity() const
    {
        int p = -2;
        for (const auto& [m, c] : terms_.map()) {
            int q = parity_of(m);
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }

    WeylElement parity_part(int par) const
    {
        WeylElement r(alg_);
        for (const auto& [m, c] : terms_.map())
            if (parity_of(m) == par)
                r.terms_.add(m, c);
        return r;
    }

    /// Maximal total generator degree (the filtration level), -1 for zero.
    int filtration_degree() const
    {
        int d = -1;
        for (const auto& [m, c] : terms_.map())
            d = std::max(d, m.degree());
        return d;
    }

    WeylElement& operator+=(const WeylElement& o)
    {
        adopt(o);
        terms_.add_all(o.terms_);
        return *this;
    }
    WeylElement& operator-=(const WeylElement& o)
    {
        adopt(o);
        terms_.add_all(o.terms_, -1);
        return *this;
    }
    WeylElement& operator*=(const Rational& s)
    {
        terms_.scale(s);
        return *this;
    }
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator-(WeylElement a) { return a *= Rational(-1); }
    friend WeylElement operator*(WeylElement a, const Rational& s) { return a *= s; }
    friend WeylElement operator*(const Rational& s, WeylElement a) { return a *= s; }
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) { return weyl_mul(a, b); }
    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        const auto& gs = *alg_->generators();
        for (const auto& [m, c] : terms_.sorted()) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c.get_str() << ")";
            for (std::size_t i = 0; i < gs.size(); ++i)
                if (m[i])
                    os << "*" << gs[i].name() << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
        }
        return os.str();
    }

private:
    void adopt(const WeylElement& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        else if (o.alg_ && alg_ != o.alg_ && !(alg_->profile() == o.alg_->profile()))
            throw std::invalid_argument("Weyl elements of different profiles");
    }

    WeylAlgebraPtr alg_;
    SparseTerms terms_;
};

inline WeylElement zero_like(const WeylElement& a) { return WeylElement(a.algebra()); }
inline WeylElement one_like(const WeylElement& a) { return WeylElement(a.algebra(), 1); }
inline bool is_zero(const WeylElement& a) { return a.is_zero(); }

namespace detail {

/// Accumulates the normal-ordered product of two normal-ordered monomials into out, scaled by coeff.
/// Uses the super Wick expansion: every choice of contracted (derivative, variable) pairs between
/// the derivative block of a and the variable block of b contributes one normal-ordered term.
inline void weyl_monomial_product(const WeylAlgebra& alg, const Monomial& a, const Monomial& b, const Rational& coeff,
                                  SparseTerms& out)
{
    const std::size_t n = alg.variable_count();
    const auto& gs = *alg.generators();

    // Contractible positions.
    struct Even {
        int v;
        int hi;
    };
    thread_local std::vector<Even> evens;
    thread_local std::vector<int> odds;
    evens.clear();
    odds.clear();
    for (int v : alg.even_variables()) {
        int hi = std::min<int>(a[n + v], b[v]);
        if (hi > 0)
            evens.push_back({v, hi});
    }
    for (int v : alg.odd_variables())
        if (a[n + v] && b[v])
            odds.push_back(v);

    // Odd derivative letters of a and odd variable letters of b, in order.
    thread_local std::vector<int> dlist;
    thread_local std::vector<int> xlist;
    dlist.clear();
    xlist.clear();
    for (int v : alg.odd_variables()) {
        if (a[n + v]) dlist.push_back(v);
        if (b[v]) xlist.push_back(v);
    }

    const std::size_t nodd = odds.size();
    thread_local std::vector<int> kval;
    kval.assign(evens.size(), 0);

    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nodd); ++mask) {
        // Sign of bringing contracted odd pairs together and of the remaining reordering.
        int sign_exp = 0;
        int kc = 0;
        {
            // positions after/before
            int removed_after = 0;
            for (std::size_t t = dlist.size(); t-- > 0;) {
                int v = dlist[t];
                bool contracted = false;
                for (std::size_t u = 0; u < nodd; ++u)
                    if ((mask >> u & 1) && odds[u] == v)
                        contracted = true;
                if (contracted)
                    sign_exp += removed_after;
                else
                    ++removed_after;
            }
            int kept_before = 0;
            for (std::size_t t = 0; t < xlist.size(); ++t) {
                int v = xlist[t];
                bool contracted = false;
                for (std::size_t u = 0; u < nodd; ++u)
                    if ((mask >> u & 1) && odds[u] == v)
                        contracted = true;
                if (contracted)
                    sign_exp += kept_before;
                else
                    ++kept_before;
            }
            kc = std::popcount(mask);
            sign_exp += kc * (kc - 1) / 2;
            int d_rest = static_cast<int>(dlist.size()) - kc;
            int x_rest = static_cast<int>(xlist.size()) - kc;
            sign_exp += d_rest * x_rest;
        }

        // Enumerate bosonic contraction multiplicities.
        std::fill(kval.begin(), kval.end(), 0);
        while (true) {
            Monomial m;
            bool zero = false;
            Integer mult = 1;
            for (std::size_t i = 0; i < n && !zero; ++i) {
                int bx = b[i];
                int ad = a[n + i];
                m.exp[i] = static_cast<std::uint8_t>(a[i] + bx);
                m.exp[n + i] = static_cast<std::uint8_t>(ad + b[n + i]);
            }
            for (std::size_t u = 0; u < evens.size(); ++u) {
                int v = evens[u].v;
                int k = kval[u];
                if (k) {
                    m.exp[v] -= static_cast<std::uint8_t>(k);
                    m.exp[n + v] -= static_cast<std::uint8_t>(k);
                    mult *= reorder_coefficient(a[n + v], b[v], k);
                }
            }
            for (std::size_t u = 0; u < nodd; ++u) {
                if (mask >> u & 1) {
                    int v = odds[u];
                    m.exp[v] -= 1;
                    m.exp[n + v] -= 1;
                }
            }
            int merge = 0;
            // Odd letters must not repeat; merge signs inside each block.
            int above_x = 0;
            int above_d = 0;
            for (std::size_t t = alg.odd_variables().size(); t-- > 0;) {
                int v = alg.odd_variables()[t];
                if (m[v] > 1 || m[n + v] > 1) {
                    zero = true;
                    break;
                }
                int bx_rest = m[v] - a[v];       // letter contributed by b's variable block
                int ad_rest = m[n + v] - b[n + v]; // letter contributed by a's derivative block
                merge += above_x * bx_rest;
                above_x += a[v];
                merge += above_d * b[n + v];
                above_d += ad_rest;
            }
            if (!zero) {
                Rational c = coeff * Rational(mult);
                if ((sign_exp + merge) & 1)
                    c = -c;
                out.add(m, c);
            }
            // next multi-index
            std::size_t u = 0;
            while (u < evens.size()) {
                if (kval[u] < evens[u].hi) {
                    ++kval[u];
                    break;
                }
                kval[u] = 0;
                ++u;
            }
            if (u == evens.size())
                break;
        }
    }
    (void)gs;
}

} // namespace detail

inline WeylElement weyl_mul(const WeylElement& a, const WeylElement& b)
{
    const auto& alg = a.algebra() ? a.algebra() : b.algebra();
    if (a.algebra() && b.algebra() && a.algebra() != b.algebra() && !(a.algebra()->profile() == b.algebra()->profile()))
        throw std::invalid_argument("Weyl elements of different profiles");
    WeylElement r(alg);
    if (a.is_zero() || b.is_zero())
        return r;
    r.terms().reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms().map())
        for (const auto& [mb, cb] : b.terms().map())
            detail::weyl_monomial_product(*alg, ma, mb, ca * cb, r.terms());
    return r;
}

/// Supercommutator ab - (-1)^{|a||b|} ba, computed on homogeneous components.
inline WeylElement weyl_commutator(const WeylElement& a, const WeylElement& b)
{
    WeylElement r = zero_like(a.algebra() ? a : b);
    for (int pa = 0; pa < 2; ++pa) {
        WeylElement ap = a.parity_part(pa);
        if (ap.is_zero())
            continue;
        for (int pb = 0; pb < 2; ++pb) {
            WeylElement bp = b.parity_part(pb);
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

/// Embeds a Fock polynomial as a multiplication operator.
inline WeylElement multiplication_operator(const WeylAlgebraPtr& alg, const SuperPoly& f)
{
    WeylElement r(alg);
    for (const auto& [m, c] : f.terms().map())
        r.terms().add(m, c); // Fock alphabet coincides with the variable half of the phase-space alphabet
    return r;
}

/// Applies a differential operator to a Fock polynomial.
inline SuperPoly weyl_act(const WeylElement& op, const SuperPoly& f)
{
    const auto& alg = op.algebra();
    detail::require_same(alg->fock(), f.generators());
    WeylElement prod = op * multiplication_operator(alg, f);
    SuperPoly r(alg->fock());
    const std::size_t n = alg->variable_count();
    for (const auto& [m, c] : prod.terms().map()) {
        bool has_derivative = false;
        for (std::size_t i = n; i < 2 * n; ++i)
            if (m[i]) {
                has_derivative = true;
                break;
            }
        if (!has_derivative)
            r.terms().add(m, c);
    }
    return r;
}

/// Symbol of a at the given filtration level: the degree-level part read in the classical algebra.
inline SuperPoly weyl_gr(const WeylElement& a, int level)
{
    const auto& alg = a.algebra();
    SuperPoly r(alg->generators());
    for (const auto& [m, c] : a.terms().map()) {
        int deg = m.degree();
        if (deg > level)
            throw std::invalid_argument("element exceeds filtration level " + std::to_string(level));
        if (deg == level)
            r.terms().add(m, c);
    }
    return r;
}

} // namespace gaudin
