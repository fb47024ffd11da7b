#pragma once

// Supercommutative polynomial superalgebras over Q: the Fock space, symmetric algebras and the
// classical Weyl superalgebra with its Poisson bracket.

#include "gaudin/monomial.hpp"
#include "gaudin/rational.hpp"

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace gaudin {

/// Generator kinds in global order: multiplication variables first, then momenta/derivatives.
enum class GenKind : std::uint8_t { x = 0, y = 1, px = 2, py = 3, abstract = 4 };

struct Generator {
    GenKind kind = GenKind::abstract;
    int sup = 0; // superscript a in 1..d (or an arbitrary tag for abstract generators)
    int sub = 0; // subscript i or r
    bool odd = false;

    std::string name() const
    {
        std::string base;
        switch (kind) {
        case GenKind::x: base = "x"; break;
        case GenKind::y: base = "y"; break;
        case GenKind::px: base = "dx"; break;
        case GenKind::py: base = "dy"; break;
        case GenKind::abstract: base = "g"; break;
        }
        return base + "^" + std::to_string(sup) + "_" + std::to_string(sub);
    }

    auto key() const { return std::tuple(static_cast<int>(kind), sup, sub); }
};

/// Sizes (d, p, q, m, n) of the Fock space. x^a_i is even iff i <= m, y^a_r is even iff r <= p.
struct WeylProfile {
    int d = 1;
    int p = 0;
    int q = 0;
    int m = 0;
    int n = 0;

    int x_count() const { return m + n; }
    int y_count() const { return p + q; }
    bool x_odd(int i) const { return i > m; }
    bool y_odd(int r) const { return r > p; }

    void validate() const
    {
        if (d < 1 || p < 0 || q < 0 || m < 0 || n < 0)
            throw std::invalid_argument("profile needs d >= 1 and p, q, m, n >= 0");
    }

    friend bool operator==(const WeylProfile&, const WeylProfile&) = default;
};

/// An ordered generator alphabet. Order is lexicographic on (kind, superscript, subscript).
class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens))
    {
        if (gens_.size() > kMaxGenerators)
            throw std::invalid_argument("too many generators for one algebra");
        std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) { return a.key() < b.key(); });
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            auto [it, ok] = index_.emplace(gens_[i].key(), static_cast<int>(i));
            if (!ok)
                throw std::invalid_argument("duplicate generator label " + gens_[i].name());
        }
        partner_.assign(gens_.size(), -1);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const auto& g = gens_[i];
            GenKind pk = g.kind;
            if (g.kind == GenKind::x) pk = GenKind::px;
            else if (g.kind == GenKind::y) pk = GenKind::py;
            else if (g.kind == GenKind::px) pk = GenKind::x;
            else if (g.kind == GenKind::py) pk = GenKind::y;
            else continue;
            partner_[i] = find(pk, g.sup, g.sub);
        }
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    bool odd(std::size_t i) const { return gens_[i].odd; }

    /// Index of the conjugate generator (x <-> px, y <-> py), or -1.
    int partner(std::size_t i) const { return partner_[i]; }

    int find(GenKind k, int sup, int sub) const
    {
        auto it = index_.find(std::tuple(static_cast<int>(k), sup, sub));
        return it == index_.end() ? -1 : it->second;
    }

    int index(GenKind k, int sup, int sub) const
    {
        int i = find(k, sup, sub);
        if (i < 0)
            throw std::out_of_range("no generator " + Generator{k, sup, sub, false}.name());
        return i;
    }

    friend bool operator==(const GeneratorSet& a, const GeneratorSet& b)
    {
        if (a.gens_.size() != b.gens_.size())
            return false;
        for (std::size_t i = 0; i < a.gens_.size(); ++i)
            if (a.gens_[i].key() != b.gens_[i].key() || a.gens_[i].odd != b.gens_[i].odd)
                return false;
        return true;
    }

private:
    std::vector<Generator> gens_;
    std::map<std::tuple<int, int, int>, int> index_;
    std::vector<int> partner_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

/// Fock generators x^a_i, y^a_r.
inline GeneratorSetPtr fock_generators(const WeylProfile& pr)
{
    pr.validate();
    std::vector<Generator> g;
    for (int a = 1; a <= pr.d; ++a) {
        for (int i = 1; i <= pr.x_count(); ++i)
            g.push_back({GenKind::x, a, i, pr.x_odd(i)});
        for (int r = 1; r <= pr.y_count(); ++r)
            g.push_back({GenKind::y, a, r, pr.y_odd(r)});
    }
    return std::make_shared<const GeneratorSet>(std::move(g));
}

/// Variables together with their conjugates; used by both the Weyl superalgebra and its symbol algebra.
inline GeneratorSetPtr phase_space_generators(const WeylProfile& pr)
{
    pr.validate();
    std::vector<Generator> g;
    for (int a = 1; a <= pr.d; ++a) {
        for (int i = 1; i <= pr.x_count(); ++i) {
            g.push_back({GenKind::x, a, i, pr.x_odd(i)});
            g.push_back({GenKind::px, a, i, pr.x_odd(i)});
        }
        for (int r = 1; r <= pr.y_count(); ++r) {
            g.push_back({GenKind::y, a, r, pr.y_odd(r)});
            g.push_back({GenKind::py, a, r, pr.y_odd(r)});
        }
    }
    return std::make_shared<const GeneratorSet>(std::move(g));
}

namespace detail {

inline void require_same(const GeneratorSetPtr& a, const GeneratorSetPtr& b)
{
    if (a == b)
        return;
    if (!a || !b || !(*a == *b))
        throw std::invalid_argument("operands live over different generator sets");
}

/// Number of transpositions of odd letters needed to merge b into a (a's letters first).
inline int odd_merge_swaps(const GeneratorSet& gs, const Monomial& a, const Monomial& b)
{
    int swaps = 0;
    int odd_in_a_above = 0;
    for (std::size_t i = gs.size(); i-- > 0;) {
        if (!gs.odd(i))
            continue;
        swaps += odd_in_a_above * b[i];
        odd_in_a_above += a[i];
    }
    return swaps;
}

inline int monomial_parity(const GeneratorSet& gs, const Monomial& m)
{
    int p = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs.odd(i))
            p += m[i];
    return p & 1;
}

} // namespace detail

/// Element of a supercommutative polynomial superalgebra. Odd generators square to zero.
class SuperPoly {
public:
    SuperPoly() = default;
    explicit SuperPoly(GeneratorSetPtr gens) : gens_(std::move(gens)) {}
    SuperPoly(GeneratorSetPtr gens, const Rational& c) : gens_(std::move(gens)) { terms_.add(Monomial{}, c); }

    static SuperPoly generator(GeneratorSetPtr gens, std::size_t i)
    {
        SuperPoly p(gens);
        Monomial m;
        m.exp[i] = 1;
        p.terms_.add(m, 1);
        return p;
    }

    /// Monomial with coefficient; the exponents are read in global order (no reordering sign).
    static SuperPoly monomial(GeneratorSetPtr gens, const Monomial& m, const Rational& c = 1)
    {
        SuperPoly p(gens);
        for (std::size_t i = 0; i < gens->size(); ++i)
            if (gens->odd(i) && m[i] > 1)
                return p;
        p.terms_.add(m, c);
        return p;
    }

    const GeneratorSetPtr& generators() const { return gens_; }
    const SparseTerms& terms() const { return terms_; }
    SparseTerms& terms() { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int parity_of(const Monomial& m) const { return detail::monomial_parity(*gens_, m); }

    /// 0 or 1 if homogeneous, -1 if mixed; zero counts as even.
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

    SuperPoly parity_part(int par) const
    {
        SuperPoly r(gens_);
        for (const auto& [m, c] : terms_.map())
            if (parity_of(m) == par)
                r.terms_.add(m, c);
        return r;
    }

    SuperPoly& operator+=(const SuperPoly& o)
    {
        adopt(o);
        terms_.add_all(o.terms_);
        return *this;
    }
    SuperPoly& operator-=(const SuperPoly& o)
    {
        adopt(o);
        terms_.add_all(o.terms_, -1);
        return *this;
    }
    SuperPoly& operator*=(const Rational& s)
    {
        terms_.scale(s);
        return *this;
    }
    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator-(SuperPoly a) { return a *= Rational(-1); }
    friend SuperPoly operator*(SuperPoly a, const Rational& s) { return a *= s; }
    friend SuperPoly operator*(const Rational& s, SuperPoly a) { return a *= s; }

    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) { return spoly_mul(a, b); }

    friend SuperPoly spoly_mul(const SuperPoly& a, const SuperPoly& b)
    {
        const auto& gs = a.gens_ ? a.gens_ : b.gens_;
        if (a.gens_ && b.gens_)
            detail::require_same(a.gens_, b.gens_);
        SuperPoly r(gs);
        if (a.is_zero() || b.is_zero())
            return r;
        r.terms_.reserve(a.size() * b.size());
        for (const auto& [ma, ca] : a.terms_.map()) {
            for (const auto& [mb, cb] : b.terms_.map()) {
                Monomial m;
                bool zero = false;
                for (std::size_t i = 0; i < gs->size(); ++i) {
                    int e = ma[i] + mb[i];
                    if (gs->odd(i) && e > 1) {
                        zero = true;
                        break;
                    }
                    m.exp[i] = static_cast<std::uint8_t>(e);
                }
                if (zero)
                    continue;
                int swaps = detail::odd_merge_swaps(*gs, ma, mb);
                if (swaps & 1)
                    r.terms_.add_product(m, ca, -cb);
                else
                    r.terms_.add_product(m, ca, cb);
            }
        }
        return r;
    }

    friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

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
            for (std::size_t i = 0; i < gens_->size(); ++i)
                if (m[i])
                    os << "*" << (*gens_)[i].name() << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
        }
        return os.str();
    }

private:
    void adopt(const SuperPoly& o)
    {
        if (!gens_)
            gens_ = o.gens_;
        else if (o.gens_)
            detail::require_same(gens_, o.gens_);
    }

    GeneratorSetPtr gens_;
    SparseTerms terms_;
};

inline SuperPoly zero_like(const SuperPoly& a) { return SuperPoly(a.generators()); }
inline SuperPoly one_like(const SuperPoly& a) { return SuperPoly(a.generators(), 1); }
inline bool is_zero(const SuperPoly& a) { return a.is_zero(); }

/// Ordered factor list of a monomial (each generator repeated by its exponent).
inline std::vector<int> monomial_factors(const GeneratorSet& gs, const Monomial& m)
{
    std::vector<int> f;
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (int k = 0; k < m[i]; ++k)
            f.push_back(static_cast<int>(i));
    return f;
}

/// Bracket of two generators of the classical Weyl superalgebra: {p_v, v} = 1, {v, p_v} = -(-1)^{|v|}.
inline int generator_bracket(const GeneratorSet& gs, int i, int j)
{
    const auto& gi = gs[i];
    if (gs.partner(i) != j)
        return 0;
    bool i_momentum = gi.kind == GenKind::px || gi.kind == GenKind::py;
    if (i_momentum)
        return 1;
    return gi.odd ? 1 : -1;
}

/// Poisson bracket on the classical Weyl superalgebra, extended by bilinearity and the Leibniz rule.
inline SuperPoly poisson_bracket(const SuperPoly& a, const SuperPoly& b)
{
    detail::require_same(a.generators(), b.generators());
    const auto& gsp = a.generators();
    const GeneratorSet& gs = *gsp;
    SuperPoly result(gsp);
    auto factor_poly = [&](const std::vector<int>& f, std::size_t from, std::size_t to, std::size_t skip) {
        Monomial m;
        for (std::size_t k = from; k < to; ++k)
            if (k != skip)
                m.add(f[k], 1);
        return SuperPoly::monomial(gsp, m);
    };
    for (const auto& [ma, ca] : a.terms().map()) {
        auto fa = monomial_factors(gs, ma);
        int pa = detail::monomial_parity(gs, ma);
        for (const auto& [mb, cb] : b.terms().map()) {
            auto fb = monomial_factors(gs, mb);
            // {A, B} = sum_j (-1)^{|A| P(b_<j)} b_<j {A, b_j} b_>j
            int prefix_b = 0;
            for (std::size_t j = 0; j < fb.size(); ++j) {
                int bj = fb[j];
                int pbj = gs.odd(bj) ? 1 : 0;
                // {A, b} = sum_i (-1)^{|A||b| + |b| P(a_<i) + |a_i||b|} {a_i, b} (A without a_i)
                int prefix_a = 0;
                for (std::size_t i = 0; i < fa.size(); ++i) {
                    int ai = fa[i];
                    int pai = gs.odd(ai) ? 1 : 0;
                    int br = generator_bracket(gs, ai, bj);
                    if (br != 0) {
                        int sign_exp = pa * pbj + pbj * prefix_a + pai * pbj + pa * prefix_b;
                        Rational coeff = ca * cb * br * ((sign_exp & 1) ? -1 : 1);
                        SuperPoly rest_a = factor_poly(fa, 0, fa.size(), i);
                        SuperPoly left = factor_poly(fb, 0, j, fb.size());
                        SuperPoly right = factor_poly(fb, j + 1, fb.size(), fb.size());
                        result += (left * rest_a * right) * coeff;
                    }
                    prefix_a ^= pai;
                }
                prefix_b ^= pbj;
            }
        }
    }
    return result;
}

/// Splits a Fock polynomial by degree (#x factors - #y factors), the eigenvalue of the degree operator.
inline std::map<int, SuperPoly> degree_operator(const SuperPoly& f)
{
    std::map<int, SuperPoly> parts;
    const auto& gs = *f.generators();
    for (const auto& [m, c] : f.terms().map()) {
        int deg = 0;
        for (std::size_t i = 0; i < gs.size(); ++i) {
            switch (gs[i].kind) {
            case GenKind::x: deg += m[i]; break;
            case GenKind::y: deg -= m[i]; break;
            default: throw std::invalid_argument("degree operator applies to Fock generators only");
            }
        }
        auto it = parts.try_emplace(deg, f.generators()).first;
        it->second.terms().add(m, c);
    }
    return parts;
}

} // namespace gaudin
