#pragma once

// Matrices over a superalgebra: column/row determinants, quasideterminants,
// Berezinians of a given type, the Manin predicate and block factorizations.

#include "gaudin/psdo.hpp"
#include "gaudin/rational.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

/// Raised when a required inverse does not exist in the working ring.
struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

inline Rational invert(const Rational& a, Grading = Grading::d)
{
    if (sgn(a) == 0)
        throw NotInvertible("zero has no inverse");
    return 1 / a;
}

template <class C, bool K>
Psdo<C, K> invert(const Psdo<C, K>& a, Grading g = Grading::d)
{
    try {
        return psdo_invert(a, g);
    } catch (const PrecisionExhausted&) {
        throw;
    } catch (const std::domain_error& e) {
        throw NotInvertible(e.what());
    }
}

template <class T>
bool agree(const T& a, const T& b)
{
    return a == b;
}

inline int element_parity(const Rational&) { return 0; }

template <class T>
int element_parity(const T& a)
{
    return a.parity();
}

template <class C, bool K>
int element_parity(const Psdo<C, K>& a)
{
    int p = -2;
    for (const auto& [k, c] : a.terms()) {
        int q = element_parity(c);
        if (q < 0)
            return -1;
        if (p == -2)
            p = q;
        else if (p != q)
            return -1;
    }
    return p == -2 ? 0 : p;
}

/// Square matrix with a 0/1 type sequence; entry (i,j) is expected to have parity s_i + s_j.
template <class T>
class TypedMatrix {
public:
    TypedMatrix() = default;
    TypedMatrix(std::vector<int> type, const T& zero) : type_(std::move(type)), e_(type_.size() * type_.size(), zero) {}

    std::size_t size() const { return type_.size(); }
    const std::vector<int>& type() const { return type_; }
    T& operator()(std::size_t i, std::size_t j) { return e_[i * size() + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * size() + j]; }

    /// Entry parity implied by the type.
    int parity(std::size_t i, std::size_t j) const { return (type_[i] + type_[j]) & 1; }

    /// First entry whose parity disagrees with the type, if any.
    std::optional<std::pair<std::size_t, std::size_t>> type_violation() const
    {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (!is_zero((*this)(i, j)) && element_parity((*this)(i, j)) != parity(i, j))
                    return std::pair{i, j};
        return std::nullopt;
    }

    /// Submatrix on the given row/column index list, type restricted accordingly.
    TypedMatrix sub(const std::vector<std::size_t>& idx) const
    {
        std::vector<int> t;
        for (auto i : idx)
            t.push_back(type_[i]);
        TypedMatrix r(t, e_.front());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                r(a, b) = (*this)(idx[a], idx[b]);
        return r;
    }

    TypedMatrix transpose() const
    {
        TypedMatrix r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                r(i, j) = (*this)(j, i);
        return r;
    }

    template <class F>
    auto map(F&& f) const -> TypedMatrix<std::decay_t<decltype(f(std::declval<const T&>()))>>
    {
        using D = std::decay_t<decltype(f(std::declval<const T&>()))>;
        TypedMatrix<D> r(type_, f(e_.front()));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    std::vector<int> type_;
    std::vector<T> e_;
};

/// Rectangular block helper used by the factorization routines.
template <class T>
struct Block {
    std::size_t rows = 0, cols = 0;
    std::vector<T> e;
    T& operator()(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& perm)
{
    int s = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0)
            s = -s;
    }
    return s;
}

template <class T>
Block<T> block_of(const TypedMatrix<T>& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1)
{
    Block<T> b{r1 - r0, c1 - c0, {}};
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j)
            b.e.push_back(a(i, j));
    return b;
}

template <class T>
Block<T> block_mul(const Block<T>& a, const Block<T>& b, const T& zero)
{
    Block<T> r{a.rows, b.cols, std::vector<T>(a.rows * b.cols, zero)};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (is_zero(a(i, k)))
                continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (!is_zero(b(k, j)))
                    r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

} // namespace detail

/// Column determinant: sum over permutations of sgn * a_{s(1),1} ... a_{s(k),k}.
template <class T>
T cdet(const TypedMatrix<T>& a)
{
    const std::size_t k = a.size();
    if (k == 0)
        throw std::invalid_argument("empty matrix");
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    T total = zero_like(a(0, 0));
    do {
        T term = a(perm[0], 0);
        for (std::size_t c = 1; c < k && !is_zero(term); ++c)
            term = term * a(perm[c], c);
        if (is_zero(term))
            continue;
        if (detail::permutation_sign(perm) > 0)
            total += term;
        else
            total -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Row determinant: factors ordered by row index.
template <class T>
T rdet(const TypedMatrix<T>& a)
{
    const std::size_t k = a.size();
    if (k == 0)
        throw std::invalid_argument("empty matrix");
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    T total = zero_like(a(0, 0));
    do {
        T term = a(0, perm[0]);
        for (std::size_t r = 1; r < k && !is_zero(term); ++r)
            term = term * a(r, perm[r]);
        if (is_zero(term))
            continue;
        if (detail::permutation_sign(perm) > 0)
            total += term;
        else
            total -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Two-sided inverse by Gauss-Jordan elimination; rows are swapped only when a pivot fails to invert.
template <class T>
TypedMatrix<T> matrix_inverse(const TypedMatrix<T>& a, Grading g = Grading::d)
{
    const std::size_t k = a.size();
    TypedMatrix<T> m = a;
    TypedMatrix<T> inv(a.type(), zero_like(a(0, 0)));
    for (std::size_t i = 0; i < k; ++i)
        inv(i, i) = one_like(a(0, 0));
    for (std::size_t c = 0; c < k; ++c) {
        std::optional<T> pinv;
        for (std::size_t r = c; r < k && !pinv; ++r) {
            try {
                pinv = invert(m(r, c), g);
            } catch (const NotInvertible&) {
                if (r + 1 == k)
                    throw;
                continue;
            }
            if (r != c)
                for (std::size_t j = 0; j < k; ++j) {
                    std::swap(m(r, j), m(c, j));
                    std::swap(inv(r, j), inv(c, j));
                }
        }
        const T& p = *pinv;
        for (std::size_t j = 0; j < k; ++j) {
            if (!is_zero(m(c, j)))
                m(c, j) = p * m(c, j);
            if (!is_zero(inv(c, j)))
                inv(c, j) = p * inv(c, j);
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || is_zero(m(r, c)))
                continue;
            T f = m(r, c);
            for (std::size_t j = 0; j < k; ++j) {
                if (!is_zero(m(c, j)))
                    m(r, j) -= f * m(c, j);
                if (!is_zero(inv(c, j)))
                    inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// |A|_{ij} = a_ij - r_i^j (A^{ij})^{-1} c_j^i.
template <class T>
T quasideterminant(const TypedMatrix<T>& a, std::size_t i, std::size_t j, Grading g = Grading::d)
{
    const std::size_t k = a.size();
    if (k == 1)
        return a(0, 0);
    std::vector<std::size_t> rows, cols;
    for (std::size_t t = 0; t < k; ++t) {
        if (t != i) rows.push_back(t);
        if (t != j) cols.push_back(t);
    }
    TypedMatrix<T> minor(std::vector<int>(k - 1, 0), a(0, 0));
    for (std::size_t r = 0; r < k - 1; ++r)
        for (std::size_t c = 0; c < k - 1; ++c)
            minor(r, c) = a(rows[r], cols[c]);
    TypedMatrix<T> mi = matrix_inverse(minor, g);
    T result = a(i, j);
    for (std::size_t c = 0; c < k - 1; ++c) {
        if (is_zero(a(i, cols[c])))
            continue;
        T left = zero_like(a(0, 0));
        for (std::size_t r = 0; r < k - 1; ++r)
            if (!is_zero(mi(c, r)) && !is_zero(a(rows[r], j)))
                left += mi(c, r) * a(rows[r], j);
        if (!is_zero(left))
            result -= a(i, cols[c]) * left;
    }
    return result;
}

/// Principal quasiminors d_1(A), ..., d_k(A) by iterated Schur complements.
template <class T>
std::vector<T> principal_quasiminors(const TypedMatrix<T>& a, Grading g = Grading::d)
{
    const std::size_t k = a.size();
    std::vector<T> d;
    std::vector<T> cur;
    for (std::size_t i = 0; i < k * k; ++i)
        cur.push_back(a(i / k, i % k));
    for (std::size_t n = k; n > 0; --n) {
        d.push_back(cur[0]);
        if (n == 1)
            break;
        T inv;
        try {
            inv = invert(cur[0], g);
        } catch (const NotInvertible& e) {
            throw NotInvertible("quasiminor d_" + std::to_string(k - n + 1) + " is not invertible: " + e.what());
        }
        std::vector<T> left(n - 1, zero_like(cur[0]));
        for (std::size_t r = 1; r < n; ++r)
            if (!is_zero(cur[r * n]))
                left[r - 1] = cur[r * n] * inv;
        std::vector<T> next;
        next.reserve((n - 1) * (n - 1));
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 1; c < n; ++c) {
                T v = cur[r * n + c];
                if (!is_zero(left[r - 1]) && !is_zero(cur[c]))
                    v -= left[r - 1] * cur[c];
                next.push_back(std::move(v));
            }
        cur = std::move(next);
    }
    return d;
}

/// Ber^s(A) = d_1^{(-1)^{s_1}} ... d_k^{(-1)^{s_k}}, multiplied left to right.
template <class T>
T berezinian(const TypedMatrix<T>& a, Grading g = Grading::d)
{
    auto d = principal_quasiminors(a, g);
    T result = one_like(a(0, 0));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (a.type()[i] == 0) {
            result = result * d[i];
        } else {
            try {
                result = result * invert(d[i], g);
            } catch (const NotInvertible& e) {
                throw NotInvertible("quasiminor d_" + std::to_string(i + 1) + " is not invertible: " + e.what());
            }
        }
    }
    return result;
}

/// Witness of a failed Manin relation: indices (i, j, k, l), zero-based.
using ManinWitness = std::array<std::size_t, 4>;

/// Checks [a_ij, a_kl] = (-1)^{s_i s_j + s_i s_k + s_j s_k} [a_kj, a_il] for all index quadruples,
/// with entry parities read from the type.
template <class T>
std::optional<ManinWitness> manin_violation(const TypedMatrix<T>& a)
{
    const std::size_t k = a.size();
    const auto& s = a.type();
    auto bracket = [&](std::size_t i, std::size_t j, std::size_t r, std::size_t c) {
        const T& x = a(i, j);
        const T& y = a(r, c);
        T xy = x * y;
        T yx = y * x;
        return (a.parity(i, j) & a.parity(r, c)) ? xy + yx : xy - yx;
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) {
                    T lhs = bracket(i, j, r, c);
                    T rhs = bracket(r, j, i, c);
                    if ((s[i] * s[j] + s[i] * s[r] + s[j] * s[r]) & 1)
                        rhs = -rhs;
                    if (!agree(lhs, rhs))
                        return ManinWitness{i, j, r, c};
                }
    return std::nullopt;
}

template <class T>
bool is_manin(const TypedMatrix<T>& a)
{
    return !manin_violation(a).has_value();
}

/// Splits A = [[W, X], [Y, Z]] with W of size k; returns (Ber W, Ber(Z - Y W^{-1} X)).
template <class T>
std::pair<T, T> schur_factor_lower(const TypedMatrix<T>& a, std::size_t k, Grading g = Grading::d)
{
    const std::size_t n = a.size();
    if (k < 1 || k >= n)
        throw std::invalid_argument("block size out of range");
    std::vector<std::size_t> head(k), tail(n - k);
    std::iota(head.begin(), head.end(), 0);
    std::iota(tail.begin(), tail.end(), k);
    TypedMatrix<T> w = a.sub(head);
    TypedMatrix<T> z = a.sub(tail);
    const T zero = zero_like(a(0, 0));
    auto x = detail::block_of(a, 0, k, k, n);
    auto y = detail::block_of(a, k, n, 0, k);
    TypedMatrix<T> wi = matrix_inverse(w, g);
    Block<T> wib{k, k, {}};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            wib.e.push_back(wi(i, j));
    auto corr = detail::block_mul(detail::block_mul(y, wib, zero), x, zero);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j)
            z(i, j) -= corr(i, j);
    return {berezinian(w, g), berezinian(z, g)};
}

/// Same split; returns (Ber Z, Ber(W - X Z^{-1} Y)).
template <class T>
std::pair<T, T> schur_factor_upper(const TypedMatrix<T>& a, std::size_t k, Grading g = Grading::d)
{
    const std::size_t n = a.size();
    if (k < 1 || k >= n)
        throw std::invalid_argument("block size out of range");
    std::vector<std::size_t> head(k), tail(n - k);
    std::iota(head.begin(), head.end(), 0);
    std::iota(tail.begin(), tail.end(), k);
    TypedMatrix<T> w = a.sub(head);
    TypedMatrix<T> z = a.sub(tail);
    const T zero = zero_like(a(0, 0));
    auto x = detail::block_of(a, 0, k, k, n);
    auto y = detail::block_of(a, k, n, 0, k);
    TypedMatrix<T> zi = matrix_inverse(z, g);
    Block<T> zib{n - k, n - k, {}};
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j)
            zib.e.push_back(zi(i, j));
    auto corr = detail::block_mul(detail::block_mul(x, zib, zero), y, zero);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            w(i, j) -= corr(i, j);
    return {berezinian(z, g), berezinian(w, g)};
}

/// A^sigma = [a_{sigma^{-1}(i), sigma^{-1}(j)}] with type s^sigma_i = s_{sigma^{-1}(i)}.
/// `sigma[i]` is the image of i.
template <class T>
TypedMatrix<T> permute(const TypedMatrix<T>& a, const std::vector<std::size_t>& sigma)
{
    const std::size_t k = a.size();
    if (sigma.size() != k)
        throw std::invalid_argument("permutation size mismatch");
    std::vector<std::size_t> inv(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (sigma[i] >= k || inv[sigma[i]] != k)
            throw std::invalid_argument("not a permutation");
        inv[sigma[i]] = i;
    }
    std::vector<int> t(k);
    for (std::size_t i = 0; i < k; ++i)
        t[i] = a.type()[inv[i]];
    TypedMatrix<T> r(t, a(0, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            r(i, j) = a(inv[i], inv[j]);
    return r;
}

} // namespace gaudin
