#pragma once

// Truncated pseudo-differential operators over a coefficient superalgebra, kept in zpz order
// (powers of z on the left, powers of the derivative dz on the right), with validity windows.

#include "gaudin/rational.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace gaudin {

/// Sentinel: no lower truncation (min side) or no terms at all (max side).
inline constexpr int kUnbounded = INT_MIN / 4;

/// Thrown when a computation leaves no trustworthy coefficients.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficients are trustworthy for z-exponent >= zmin and dz-exponent >= dmin.
/// zmax and dmax bound every exponent of the true (untruncated) element.
struct ValidityWindow {
    int zmin = kUnbounded;
    int zmax = kUnbounded;
    int dmin = kUnbounded;
    int dmax = kUnbounded;

    bool contains(int i, int j) const { return i >= zmin && j >= dmin && i <= zmax && j <= dmax; }
    bool known(int i, int j) const { return i >= zmin && j >= dmin; }
    bool exact() const { return zmin == kUnbounded && dmin == kUnbounded; }
    bool zero() const { return zmax == kUnbounded || dmax == kUnbounded; }

    friend bool operator==(const ValidityWindow&, const ValidityWindow&) = default;

    std::string to_string() const
    {
        auto f = [](int v) { return v == kUnbounded ? std::string("inf") : std::to_string(v); };
        return "z[" + f(zmin) + "," + f(zmax) + "] d[" + f(dmin) + "," + f(dmax) + "]";
    }
};

/// Lowest exponents ever materialized; products never store terms below it.
struct Horizon {
    int z = -8;
    int d = -8;
    friend bool operator==(const Horizon&, const Horizon&) = default;
};

namespace detail {

/// C(i,k) C(j,k) k! as a rational, memoized for the small exponents that occur.
inline const Rational& reorder_rational(int i, int j, int k)
{
    thread_local std::map<std::tuple<int, int, int>, Rational> cache;
    auto key = std::tuple(i, j, k);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    return cache.emplace(key, Rational(reorder_coefficient(i, j, k))).first->second;
}

inline int add_bound(int a, int b)
{
    if (a == kUnbounded || b == kUnbounded)
        return kUnbounded;
    return a + b;
}

} // namespace detail

/// With Commuting = true the second symbol commutes with z and the type models the commutative
/// two-variable Laurent series ring of the classical theory.
template <class C, bool Commuting = false>
class Psdo {
public:
    using Key = std::pair<int, int>; // (z exponent, dz exponent)
    using Terms = std::map<Key, C>;

    Psdo() = default;

    /// Exact zero over the algebra of `proto`.
    Psdo(C proto, Horizon h) : proto_(zero_like(proto)), horizon_(h) {}

    /// Exact constant c.
    static Psdo constant(const C& c, Horizon h)
    {
        Psdo p(c, h);
        p.window_ = {kUnbounded, 0, kUnbounded, 0};
        if (!is_zero(c))
            p.terms_.emplace(Key{0, 0}, c);
        return p;
    }

    /// Exact monomial c z^i dz^j.
    static Psdo monomial(const C& c, int i, int j, Horizon h)
    {
        Psdo p(c, h);
        p.window_ = {kUnbounded, i, kUnbounded, j};
        if (!is_zero(c))
            p.terms_.emplace(Key{i, j}, c);
        return p;
    }

    /// Assembles an element from explicit terms and window (terms outside the known region are dropped).
    static Psdo from_terms(const C& proto, Terms terms, ValidityWindow w, Horizon h)
    {
        Psdo p(proto, h);
        p.window_ = w;
        for (auto& [k, c] : terms)
            if (!is_zero(c) && w.known(k.first, k.second)) {
                if (k.first > w.zmax || k.second > w.dmax)
                    throw std::invalid_argument("term above the declared window top");
                p.terms_.emplace(k, std::move(c));
            }
        return p;
    }

    const Terms& terms() const { return terms_; }
    const ValidityWindow& window() const { return window_; }
    const Horizon& horizon() const { return horizon_; }
    const C& proto() const { return proto_; }
    bool stored_zero() const { return terms_.empty(); }

    /// Tightens the declared upper bounds; the caller asserts no true term lies above them.
    void set_top(int zmax, int dmax)
    {
        window_.zmax = zmax;
        window_.dmax = dmax;
        for (auto it = terms_.begin(); it != terms_.end();)
            if (it->first.first > zmax || it->first.second > dmax)
                throw std::logic_error("stored term above the asserted top");
            else
                ++it;
    }

    /// Effective lower bounds of trust: the window clipped at the horizon.
    int zlow() const { return std::max(window_.zmin, horizon_.z); }
    int dlow() const { return std::max(window_.dmin, horizon_.d); }
    bool known(int i, int j) const { return i >= zlow() && j >= dlow(); }

    C coefficient(int i, int j) const
    {
        auto it = terms_.find(Key{i, j});
        return it == terms_.end() ? zero_like(proto_) : it->second;
    }

    /// Highest dz-exponent among stored terms (kUnbounded if none).
    int stored_top_d() const
    {
        int t = kUnbounded;
        for (const auto& [k, c] : terms_)
            t = std::max(t, k.second);
        return t;
    }

    Psdo& operator+=(const Psdo& o) { return accumulate(o, 1); }
    Psdo& operator-=(const Psdo& o) { return accumulate(o, -1); }
    friend Psdo operator+(Psdo a, const Psdo& b) { return a += b; }
    friend Psdo operator-(Psdo a, const Psdo& b) { return a -= b; }
    friend Psdo operator-(Psdo a)
    {
        for (auto& [k, c] : a.terms_)
            c = c * Rational(-1);
        return a;
    }
    friend Psdo operator*(Psdo a, const Rational& s)
    {
        if (sgn(s) == 0) {
            a.terms_.clear();
            return a;
        }
        for (auto& [k, c] : a.terms_)
            c = c * s;
        return a;
    }

    /// c * a with c a coefficient (central with respect to z and dz).
    friend Psdo lmul(const C& c, const Psdo& a)
    {
        Psdo r = a;
        r.terms_.clear();
        for (const auto& [k, v] : a.terms_) {
            C t = c * v;
            if (!is_zero(t))
                r.terms_.emplace(k, std::move(t));
        }
        return r;
    }

    friend Psdo rmul(const Psdo& a, const C& c)
    {
        Psdo r = a;
        r.terms_.clear();
        for (const auto& [k, v] : a.terms_) {
            C t = v * c;
            if (!is_zero(t))
                r.terms_.emplace(k, std::move(t));
        }
        return r;
    }

    friend Psdo operator*(const Psdo& a, const Psdo& b) { return psdo_mul(a, b); }

    /// Product in zpz form via dz^j z^i = sum_k C(j,k) C(i,k) k! z^{i-k} dz^{j-k}.
    friend Psdo psdo_mul(const Psdo& a, const Psdo& b)
    {
        Horizon h{std::max(a.horizon_.z, b.horizon_.z), std::max(a.horizon_.d, b.horizon_.d)};
        Psdo r(a.proto_, h);
        if (a.window_.zero() || b.window_.zero())
            return r;
        const auto& wa = a.window_;
        const auto& wb = b.window_;
        ValidityWindow w;
        w.zmax = wa.zmax + wb.zmax;
        w.dmax = wa.dmax + wb.dmax;
        w.zmin = std::max(detail::add_bound(wa.zmin, wb.zmax), detail::add_bound(wb.zmin, wa.zmax));
        w.dmin = std::max(detail::add_bound(wa.dmin, wb.dmax), detail::add_bound(wb.dmin, wa.dmax));
        const int zcut = std::max(w.zmin, h.z);
        const int dcut = std::max(w.dmin, h.d);
        bool dropped_z = false;
        bool dropped_d = false;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                const int i0 = ka.first + kb.first;
                const int j0 = ka.second + kb.second;
                if (i0 < zcut || j0 < dcut) {
                    if (i0 < h.z && i0 >= w.zmin) dropped_z = true;
                    if (j0 < h.d && j0 >= w.dmin) dropped_d = true;
                    continue;
                }
                C prod = ca * cb;
                if (is_zero(prod))
                    continue;
                const int jd = ka.second; // dz power of a passing z power of b
                const int iz = kb.first;
                for (int k = 0;; ++k) {
                    if ((jd >= 0 && k > jd) || (iz >= 0 && k > iz) || (Commuting && k > 0))
                        break;
                    const int i = i0 - k;
                    const int j = j0 - k;
                    if (i < zcut || j < dcut) {
                        if (i < h.z && i >= w.zmin) dropped_z = true;
                        if (j < h.d && j >= w.dmin) dropped_d = true;
                        break;
                    }
                    const Rational& f = detail::reorder_rational(jd, iz, k);
                    auto [it, inserted] = r.terms_.try_emplace(Key{i, j}, zero_like(a.proto_));
                    if (k == 0)
                        it->second += prod;
                    else
                        it->second += prod * f;
                    if (is_zero(it->second))
                        r.terms_.erase(it);
                }
            }
        }
        // An unbounded side stays exact only if nothing below the horizon was discarded.
        if (w.zmin < h.z && (dropped_z || w.zmin != kUnbounded)) w.zmin = h.z;
        if (w.dmin < h.d && (dropped_d || w.dmin != kUnbounded)) w.dmin = h.d;
        r.window_ = w;
        r.check_window();
        return r;
    }

    /// Applies a coefficient map (e.g. an algebra homomorphism) termwise.
    template <class F>
    auto map_coefficients(F&& f) const -> Psdo<std::decay_t<decltype(f(std::declval<const C&>()))>, Commuting>
    {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        D proto = f(proto_);
        typename Psdo<D, Commuting>::Terms t;
        for (const auto& [k, c] : terms_) {
            D v = f(c);
            if (!is_zero(v))
                t.emplace(k, std::move(v));
        }
        return Psdo<D, Commuting>::from_terms(proto, std::move(t), window_, horizon_);
    }

    /// Keeps only terms inside the given region and shrinks the window to it.
    void restrict_to(int zmin, int dmin)
    {
        window_.zmin = std::max(window_.zmin, zmin);
        window_.dmin = std::max(window_.dmin, dmin);
        for (auto it = terms_.begin(); it != terms_.end();)
            if (!window_.known(it->first.first, it->first.second))
                it = terms_.erase(it);
            else
                ++it;
    }

    Psdo restricted(int zmin, int dmin) const
    {
        Psdo r = *this;
        r.restrict_to(zmin, dmin);
        return r;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first)
                os << " + ";
            first = false;
            os << "[" << coefficient_string(it->second) << "] z^" << it->first.first << " dz^" << it->first.second;
        }
        if (first)
            os << "0";
        os << "  {" << window_.to_string() << "}";
        return os.str();
    }

private:
    template <class T>
    static std::string coefficient_string(const T& c)
    {
        if constexpr (std::is_same_v<T, Rational>)
            return c.get_str();
        else
            return c.to_string();
    }

    Psdo& accumulate(const Psdo& o, int sign)
    {
        if (o.window_.zero())
            return *this;
        if (window_.zero()) {
            Horizon h = horizon_;
            *this = o;
            if (sign < 0)
                *this = -*this;
            horizon_ = {std::max(h.z, o.horizon_.z), std::max(h.d, o.horizon_.d)};
            return *this;
        }
        window_.zmin = std::max(window_.zmin, o.window_.zmin);
        window_.dmin = std::max(window_.dmin, o.window_.dmin);
        window_.zmax = std::max(window_.zmax, o.window_.zmax);
        window_.dmax = std::max(window_.dmax, o.window_.dmax);
        horizon_ = {std::max(horizon_.z, o.horizon_.z), std::max(horizon_.d, o.horizon_.d)};
        for (const auto& [k, c] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(k, zero_like(proto_));
            if (sign > 0)
                it->second += c;
            else
                it->second -= c;
            if (is_zero(it->second))
                terms_.erase(it);
        }
        for (auto it = terms_.begin(); it != terms_.end();)
            if (!window_.known(it->first.first, it->first.second))
                it = terms_.erase(it);
            else
                ++it;
        return *this;
    }

    void check_window() const
    {
        if (std::max(window_.zmin, horizon_.z) > window_.zmax || std::max(window_.dmin, horizon_.d) > window_.dmax)
            throw PrecisionExhausted("product window is empty: " + window_.to_string());
    }

    C proto_{};
    Terms terms_;
    ValidityWindow window_{};
    Horizon horizon_{};
};

template <class C, bool K = false>
bool is_zero(const Psdo<C, K>& a)
{
    // A truncated zero still carries a window restriction and must not be skipped.
    return a.stored_zero() && (a.window().zero() || a.window().exact());
}

/// z^i dz^j with unit coefficient.
template <class C, bool K = false>
Psdo<C, K> psdo_zd(const C& proto, int i, int j, Horizon h)
{
    return Psdo<C, K>::monomial(one_like(proto), i, j, h);
}

/// Laurent expansion of 1/(z - c)^k in powers of z^{-1}, down to the horizon.
template <class C, bool K = false>
Psdo<C, K> pole_expand(const C& proto, const Rational& c, int k, Horizon h)
{
    if (k < 1)
        throw std::invalid_argument("pole order must be positive");
    typename Psdo<C, K>::Terms t;
    // z^{-k} (1 - c/z)^{-k} = sum_j C(k+j-1, j) c^j z^{-k-j}
    bool truncated = false;
    for (int j = 0;; ++j) {
        int e = -k - j;
        if (e < h.z) {
            truncated = sgn(c) != 0 || j == 0;
            break;
        }
        Rational coeff = Rational(binomial(k + j - 1, j)) * rational_pow(c, j);
        if (sgn(coeff) != 0)
            t.emplace(std::pair{e, 0}, one_like(proto) * coeff);
        if (sgn(c) == 0)
            break;
    }
    ValidityWindow w{truncated ? h.z : kUnbounded, -k, kUnbounded, 0};
    return Psdo<C, K>::from_terms(proto, std::move(t), w, h);
}

/// Same expansion in powers of dz^{-1}: 1/(dz - c)^k.
template <class C, bool K = false>
Psdo<C, K> dpole_expand(const C& proto, const Rational& c, int k, Horizon h)
{
    if (k < 1)
        throw std::invalid_argument("pole order must be positive");
    typename Psdo<C, K>::Terms t;
    bool truncated = false;
    for (int j = 0;; ++j) {
        int e = -k - j;
        if (e < h.d) {
            truncated = sgn(c) != 0 || j == 0;
            break;
        }
        Rational coeff = Rational(binomial(k + j - 1, j)) * rational_pow(c, j);
        if (sgn(coeff) != 0)
            t.emplace(std::pair{0, e}, one_like(proto) * coeff);
        if (sgn(c) == 0)
            break;
    }
    ValidityWindow w{kUnbounded, 0, truncated ? h.d : kUnbounded, -k};
    return Psdo<C, K>::from_terms(proto, std::move(t), w, h);
}

enum class Grading { d, z };

namespace detail {

template <class C>
bool is_unit_scalar(const C& c, Rational& value)
{
    if constexpr (std::is_same_v<C, Rational>) {
        value = c;
        return sgn(c) != 0;
    } else {
        if (c.terms().size() != 1)
            return false;
        const auto& [m, v] = *c.terms().map().begin();
        if (!m.is_one())
            return false;
        value = v;
        return true;
    }
}

} // namespace detail

/// Inverse of a = L (1 + N) with L = c z^i dz^j the unique leading term in the chosen grading
/// (dz-degree by default) and c an invertible scalar. Computed as the geometric series in N.
template <class C, bool K = false>
Psdo<C, K> psdo_invert(const Psdo<C, K>& a, Grading g = Grading::d)
{
    using Key = typename Psdo<C, K>::Key;
    const Horizon h = a.horizon();
    if (a.window().zero() || (a.stored_zero() && a.window().exact()))
        throw std::domain_error("cannot invert zero");
    if (a.stored_zero())
        throw PrecisionExhausted("operand vanishes on its trusted window " + a.window().to_string());
    // Leading layer in the grading.
    int top = kUnbounded;
    for (const auto& [k, c] : a.terms())
        top = std::max(top, g == Grading::d ? k.second : k.first);
    const int declared_top = g == Grading::d ? a.window().dmax : a.window().zmax;
    const int low = g == Grading::d ? a.dlow() : a.zlow();
    if (top != declared_top || top < low)
        throw PrecisionExhausted("leading layer of the operand is not known on " + a.window().to_string());
    std::vector<std::pair<Key, C>> lead;
    for (const auto& [k, c] : a.terms())
        if ((g == Grading::d ? k.second : k.first) == top)
            lead.emplace_back(k, c);
    Rational scalar;
    if (lead.size() != 1 || !detail::is_unit_scalar(lead[0].second, scalar))
        throw std::domain_error("no invertible leading monomial");
    const int li = lead[0].first.first;
    const int lj = lead[0].first.second;
    // The other symbol must also be bounded by the leading term for the series to converge.
    const C one = one_like(a.proto());
    Psdo<C, K> linv = psdo_mul(Psdo<C, K>::monomial(one * (1 / scalar), 0, -lj, h), Psdo<C, K>::monomial(one, -li, 0, h));
    Psdo<C, K> rest = a - Psdo<C, K>::monomial(lead[0].second, li, lj, h);
    if (g == Grading::d)
        rest.set_top(rest.window().zmax, top - 1);
    else
        rest.set_top(top - 1, rest.window().dmax);
    Psdo<C, K> n = psdo_mul(linv, rest);
    Psdo<C, K> minus_n = -n;
    Psdo<C, K> sum = linv;
    Psdo<C, K> term = linv;
    for (int iter = 0;; ++iter) {
        if (iter > 4096)
            throw PrecisionExhausted("inverse series did not terminate");
        if (term.window().zero() || minus_n.window().zero())
            break;
        const int ttop = g == Grading::d ? term.window().dmax + minus_n.window().dmax
                                         : term.window().zmax + minus_n.window().zmax;
        const int slow = g == Grading::d ? sum.dlow() : sum.zlow();
        if (ttop < slow) {
            // The untouched tail lies entirely below ttop + 1.
            if (g == Grading::d)
                sum.restrict_to(sum.window().zmin, std::max(sum.window().dmin, ttop + 1));
            else
                sum.restrict_to(std::max(sum.window().zmin, ttop + 1), sum.window().dmin);
            break;
        }
        term = psdo_mul(minus_n, term);
        sum += term;
    }
    return sum;
}

/// The isomorphism z -> dz, dz -> -z, re-expressed in zpz form.
template <class C, bool K = false>
Psdo<C, K> omega(const Psdo<C, K>& a)
{
    const Horizon h = a.horizon();
    Psdo<C, K> r(a.proto(), h);
    if (a.window().zero())
        return r;
    const auto& w = a.window();
    ValidityWindow out{w.dmin, w.dmax, w.zmin, w.zmax};
    typename Psdo<C, K>::Terms t;
    // c z^i dz^j  ->  c (-1)^j dz^i z^j = c (-1)^j sum_k C(i,k) C(j,k) k! z^{j-k} dz^{i-k}
    bool dropped_z = false, dropped_d = false;
    const int zcut = std::max(out.zmin, h.z);
    const int dcut = std::max(out.dmin, h.d);
    for (const auto& [k, c] : a.terms()) {
        const int i = k.first;
        const int j = k.second;
        C base = (j % 2 == 0) ? c : c * Rational(-1);
        for (int s = 0;; ++s) {
            if ((i >= 0 && s > i) || (j >= 0 && s > j))
                break;
            int zi = j - s;
            int dj = i - s;
            if (zi < zcut || dj < dcut) {
                if (zi < h.z) dropped_z = true;
                if (dj < h.d) dropped_d = true;
                break;
            }
            C v = base * detail::reorder_rational(i, j, s);
            auto [it, ins] = t.try_emplace(std::pair{zi, dj}, zero_like(a.proto()));
            it->second += v;
        }
    }
    if (dropped_z) out.zmin = std::max(out.zmin, h.z);
    if (dropped_d) out.dmin = std::max(out.dmin, h.d);
    return Psdo<C, K>::from_terms(a.proto(), std::move(t), out, h);
}

/// Sign automorphism z -> -z, dz -> -dz (omega applied twice).
template <class C, bool K = false>
Psdo<C, K> parity_flip(const Psdo<C, K>& a)
{
    typename Psdo<C, K>::Terms t;
    for (const auto& [k, c] : a.terms())
        t.emplace(k, ((k.first + k.second) % 2 == 0) ? c : c * Rational(-1));
    return Psdo<C, K>::from_terms(a.proto(), std::move(t), a.window(), a.horizon());
}

} // namespace gaudin

namespace gaudin {

template <class C, bool K>
Psdo<C, K> zero_like(const Psdo<C, K>& a)
{
    return Psdo<C, K>(a.proto(), a.horizon());
}

template <class C, bool K>
Psdo<C, K> one_like(const Psdo<C, K>& a)
{
    return Psdo<C, K>::constant(one_like(a.proto()), a.horizon());
}

/// Equality of two truncated elements on the region where both are trustworthy.
template <class C, bool K>
bool agree(const Psdo<C, K>& a, const Psdo<C, K>& b)
{
    const int zl = std::max(a.zlow(), b.zlow());
    const int dl = std::max(a.dlow(), b.dlow());
    for (const auto& [k, c] : a.terms())
        if (k.first >= zl && k.second >= dl && !(c == b.coefficient(k.first, k.second)))
            return false;
    for (const auto& [k, c] : b.terms())
        if (k.first >= zl && k.second >= dl && !(c == a.coefficient(k.first, k.second)))
            return false;
    return true;
}

/// First disagreeing exponent pair on the joint window, if any.
template <class C, bool K>
std::optional<std::pair<int, int>> first_disagreement(const Psdo<C, K>& a, const Psdo<C, K>& b)
{
    const int zl = std::max(a.zlow(), b.zlow());
    const int dl = std::max(a.dlow(), b.dlow());
    std::optional<std::pair<int, int>> best;
    auto consider = [&](const std::pair<int, int>& k) {
        if (!best || k > *best)
            best = k;
    };
    for (const auto& [k, c] : a.terms())
        if (k.first >= zl && k.second >= dl && !(c == b.coefficient(k.first, k.second)))
            consider(k);
    for (const auto& [k, c] : b.terms())
        if (k.first >= zl && k.second >= dl && !(c == a.coefficient(k.first, k.second)))
            consider(k);
    return best;
}

} // namespace gaudin
