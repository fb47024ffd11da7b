#pragma once

// Exponent-vector monomial keys and the sparse term map shared by every algebra in the library.

#include "gaudin/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gaudin {

inline constexpr std::size_t kMaxGenerators = 64;

/// Exponents indexed by generator position in the owning algebra's global order.
struct Monomial {
    std::array<std::uint8_t, kMaxGenerators> exp{};

    std::uint8_t operator[](std::size_t i) const { return exp[i]; }

    void add(std::size_t i, int by)
    {
        int v = int(exp[i]) + by;
        if (v < 0 || v > 255)
            throw std::overflow_error("monomial exponent out of range");
        exp[i] = static_cast<std::uint8_t>(v);
    }

    int degree() const
    {
        int d = 0;
        for (auto e : exp)
            d += e;
        return d;
    }

    bool is_one() const
    {
        return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
    }

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return std::memcmp(a.exp.data(), b.exp.data(), kMaxGenerators) == 0;
    }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        int c = std::memcmp(a.exp.data(), b.exp.data(), kMaxGenerators);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::size_t i = 0; i < kMaxGenerators; i += 8) {
            std::uint64_t w;
            std::memcpy(&w, m.exp.data() + i, 8);
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

/// Sparse map monomial -> nonzero rational. Zero coefficients are never stored.
class SparseTerms {
public:
    using Map = std::unordered_map<Monomial, Rational, MonomialHash>;

    SparseTerms() = default;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const Map& map() const { return map_; }
    void reserve(std::size_t n) { map_.reserve(n); }

    void add(const Monomial& m, const Rational& c)
    {
        if (sgn(c) == 0)
            return;
        auto [it, inserted] = map_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                map_.erase(it);
        }
    }

    void add_product(const Monomial& m, const Rational& a, const Rational& b)
    {
        auto [it, inserted] = map_.try_emplace(m);
        if (inserted) {
            mpq_mul(it->second.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
            if (sgn(it->second) == 0)
                map_.erase(it);
            return;
        }
        Rational t;
        mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        it->second += t;
        if (sgn(it->second) == 0)
            map_.erase(it);
    }

    void add_all(const SparseTerms& other, const Rational& scale = 1)
    {
        for (const auto& [m, c] : other.map_)
            add_product(m, c, scale);
    }

    Rational coefficient(const Monomial& m) const
    {
        auto it = map_.find(m);
        return it == map_.end() ? Rational(0) : it->second;
    }

    void scale(const Rational& s)
    {
        if (sgn(s) == 0) {
            map_.clear();
            return;
        }
        for (auto& [m, c] : map_)
            c *= s;
    }

    /// Terms sorted by key; the canonical iteration order for printing and hashing.
    std::vector<std::pair<Monomial, Rational>> sorted() const
    {
        std::vector<std::pair<Monomial, Rational>> v(map_.begin(), map_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

    friend bool operator==(const SparseTerms& a, const SparseTerms& b) { return a.map_ == b.map_; }

private:
    Map map_;
};

} // namespace gaudin
