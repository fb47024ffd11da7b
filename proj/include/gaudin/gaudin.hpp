#pragma once

// Gaudin matrices with irregular singularities and the extraction of their generator families.

#include "gaudin/envalg.hpp"
#include "gaudin/ncmatrix.hpp"
#include "gaudin/psdo.hpp"
#include "gaudin/weylalg.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

/// Points z_1..z_l with orders gamma_1..gamma_l.
struct SingularityData {
    std::vector<Rational> points;
    std::vector<int> orders;

    void validate() const
    {
        if (points.empty() || points.size() != orders.size())
            throw std::invalid_argument("singularity data needs matching nonempty points and orders");
        for (int g : orders)
            if (g < 1)
                throw std::invalid_argument("singularity orders must be positive");
        std::set<Rational> seen(points.begin(), points.end());
        if (seen.size() != points.size())
            throw std::invalid_argument("singular points must be pairwise distinct");
    }
};

/// Linear functional on the base algebra, keyed by basis position; absent entries are zero.
using Character = std::map<int, Rational>;

inline Rational character_value(const Character& mu, int label)
{
    auto it = mu.find(label);
    return it == mu.end() ? Rational(0) : it->second;
}

/// Direct sum of Jordan blocks J_{orders_a}(points_a), as a dense matrix.
inline std::vector<std::vector<Rational>> jordan_matrix(const std::vector<Rational>& points, const std::vector<int>& orders)
{
    int n = 0;
    for (int g : orders)
        n += g;
    std::vector<std::vector<Rational>> j(n, std::vector<Rational>(n, Rational(0)));
    int off = 0;
    for (std::size_t a = 0; a < orders.size(); ++a) {
        for (int t = 0; t < orders[a]; ++t) {
            j[off + t][off + t] = points[a];
            if (t + 1 < orders[a])
                j[off + t][off + t + 1] = 1;
        }
        off += orders[a];
    }
    return j;
}

/// mu(e_ab) = -J_xi(w)_{ab}.
inline Character jordan_mu(int d, const std::vector<Rational>& w, const std::vector<int>& xi)
{
    SingularityData{w, xi}.validate();
    int total = 0;
    for (int x : xi)
        total += x;
    if (total != d)
        throw std::invalid_argument("the composition xi must sum to d");
    auto j = jordan_matrix(w, xi);
    GlShape sh{d, 0, 0, 0};
    Character mu;
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            if (sgn(j[a - 1][b - 1]) != 0)
                mu[sh.index(a, b)] = -j[a - 1][b - 1];
    return mu;
}

/// Block counts (p', q', m', n') of a composition gamma compatible with (p, q, m, n).
struct BlockCounts {
    int p = 0, q = 0, m = 0, n = 0;
};

inline BlockCounts composition_blocks(const GlShape& sh, const std::vector<int>& gamma)
{
    std::vector<int> prefix{0};
    for (int g : gamma) {
        if (g < 1)
            throw std::invalid_argument("composition parts must be positive");
        prefix.push_back(prefix.back() + g);
    }
    auto position = [&](int target) {
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (prefix[i] == target)
                return static_cast<int>(i);
        throw std::invalid_argument("composition gamma does not split into blocks summing to p, q, m, n");
    };
    if (prefix.back() != sh.size())
        throw std::invalid_argument("composition gamma does not split into blocks summing to p, q, m, n");
    int a = position(sh.p);
    int b = position(sh.p + sh.q);
    int c = position(sh.p + sh.q + sh.m);
    return {a, b - a, c - b, static_cast<int>(gamma.size()) - c};
}

/// nu(E^i_j) = (-1)^{|i|+1} J_gamma(z)_{ij}.
inline Character jordan_nu(const GlShape& sh, const std::vector<Rational>& z, const std::vector<int>& gamma)
{
    SingularityData{z, gamma}.validate();
    composition_blocks(sh, gamma);
    auto j = jordan_matrix(z, gamma);
    Character nu;
    for (int i = 1; i <= sh.size(); ++i)
        for (int k = 1; k <= sh.size(); ++k)
            if (sgn(j[i - 1][k - 1]) != 0) {
                if (sh.odd(i) != sh.odd(k))
                    throw std::logic_error("Jordan block straddles a parity boundary");
                nu[sh.index(i, k)] = sh.odd(i) ? j[i - 1][k - 1] : Rational(-j[i - 1][k - 1]);
            }
    return nu;
}

/// Image of A (x) tbar^k at a site, in whichever coefficient algebra the matrix is built over.
template <class C>
using TakiffImage = std::function<C(int site, int base_label, int degree)>;

/// Generators of U(g(z, gamma)) for a Takiff sum.
inline TakiffImage<PBWElement> pbw_images(const PBWAlgebraPtr& alg, const TakiffSum& sum)
{
    return [alg, &sum](int site, int base, int k) { return PBWElement::generator(alg, sum.index(site, base, k)); };
}

/// Psi(A (x) t^{-1}) = - sum_i sum_k (A (x) tbar^k_i) / (z - z_i)^{k+1} + mu(A), poles expanded in z^{-1}.
template <class C>
Psdo<C> psi_mu(int base_label, const Character& mu, const SingularityData& sd, const TakiffImage<C>& img, const C& proto,
               Horizon h)
{
    Psdo<C> r = Psdo<C>::constant(one_like(proto) * character_value(mu, base_label), h);
    for (std::size_t i = 0; i < sd.points.size(); ++i)
        for (int k = 0; k < sd.orders[i]; ++k) {
            C a = img(static_cast<int>(i), base_label, k);
            if (is_zero(a))
                continue;
            r -= lmul(a, pole_expand<C>(proto, sd.points[i], k + 1, h));
        }
    return r;
}

/// L_d = [delta_ij dz + Psi(e_ij (x) t^{-1})].
template <class C>
TypedMatrix<Psdo<C>> build_Ld(int d, const Character& mu, const SingularityData& sd, const TakiffImage<C>& img,
                              const C& proto, Horizon h)
{
    GlShape sh{d, 0, 0, 0};
    TypedMatrix<Psdo<C>> l(std::vector<int>(d, 0), Psdo<C>(proto, h));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            Psdo<C> e = psi_mu(sh.index(i, j), mu, sd, img, proto, h);
            if (i == j)
                e += Psdo<C>::monomial(one_like(proto), 0, 1, h);
            l(i - 1, j - 1) = e;
        }
    return l;
}

/// Hat L_d = -[omega(delta_ij dz - Psi(e_ji (x) t^{-1}))].
template <class C>
TypedMatrix<Psdo<C>> build_Ld_hat(int d, const Character& mu, const SingularityData& sd, const TakiffImage<C>& img,
                                  const C& proto, Horizon h)
{
    GlShape sh{d, 0, 0, 0};
    TypedMatrix<Psdo<C>> l(std::vector<int>(d, 0), Psdo<C>(proto, h));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            Psdo<C> e = -psi_mu(sh.index(j, i), mu, sd, img, proto, h);
            if (i == j)
                e += Psdo<C>::monomial(one_like(proto), 0, 1, h);
            l(i - 1, j - 1) = -omega(e);
        }
    return l;
}

/// Alternate form J^t - [sum_i sum_k e_ab (x) tbar^k_i / (dz - z_i)^{k+1}]^t with J = (+) -J_{xi_a}(w_a - z),
/// valid for the Jordan character mu^w_xi.
template <class C>
TypedMatrix<Psdo<C>> build_Ld_hat_jordan(int d, const std::vector<Rational>& w, const std::vector<int>& xi,
                                         const SingularityData& sd, const TakiffImage<C>& img, const C& proto, Horizon h)
{
    GlShape sh{d, 0, 0, 0};
    auto jw = jordan_matrix(w, xi);
    const C one = one_like(proto);
    TypedMatrix<Psdo<C>> l(std::vector<int>(d, 0), Psdo<C>(proto, h));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            // (J^t)_{ij} = delta_ij z - J_xi(w)_{ji}
            Psdo<C> e = Psdo<C>::constant(one * Rational(-jw[j - 1][i - 1]), h);
            if (i == j)
                e += Psdo<C>::monomial(one, 1, 0, h);
            for (std::size_t s = 0; s < sd.points.size(); ++s)
                for (int k = 0; k < sd.orders[s]; ++k) {
                    C a = img(static_cast<int>(s), sh.index(j, i), k);
                    if (!is_zero(a))
                        e -= lmul(a, dpole_expand<C>(proto, sd.points[s], k + 1, h));
                }
            l(i - 1, j - 1) = e;
        }
    return l;
}

/// Type (0^p, 1^q, 0^m, 1^n).
inline std::vector<int> standard_type(const GlShape& sh)
{
    std::vector<int> t;
    for (int i = 1; i <= sh.size(); ++i)
        t.push_back(sh.odd(i) ? 1 : 0);
    return t;
}

/// L_s = [Psi(delta_ij tau + (-1)^{|i|} E^i_j (x) t^{-1})], of the standard type.
template <class C>
TypedMatrix<Psdo<C>> build_Ls(const GlShape& sh, const Character& mu, const SingularityData& sd,
                              const TakiffImage<C>& img, const C& proto, Horizon h)
{
    const int N = sh.size();
    TypedMatrix<Psdo<C>> l(standard_type(sh), Psdo<C>(proto, h));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            Psdo<C> e = psi_mu(sh.index(i, j), mu, sd, img, proto, h);
            if (sh.odd(i))
                e = -e;
            if (i == j)
                e += Psdo<C>::monomial(one_like(proto), 0, 1, h);
            l(i - 1, j - 1) = e;
        }
    return l;
}

/// Alternate form J' - [(-1)^{|i|} sum_a sum_k E^i_j (x) tbar^k_a / (z - w_a)^{k+1}] with
/// J' = (+) -J_{gamma_i}(z_i - dz), valid for the Jordan character nu^z_gamma.
template <class C>
TypedMatrix<Psdo<C>> build_Ls_jordan(const GlShape& sh, const std::vector<Rational>& z, const std::vector<int>& gamma,
                                     const SingularityData& sd, const TakiffImage<C>& img, const C& proto, Horizon h)
{
    const int N = sh.size();
    auto jz = jordan_matrix(z, gamma);
    const C one = one_like(proto);
    TypedMatrix<Psdo<C>> l(standard_type(sh), Psdo<C>(proto, h));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            Psdo<C> e = Psdo<C>::constant(one * Rational(-jz[i - 1][j - 1]), h);
            if (i == j)
                e += Psdo<C>::monomial(one, 0, 1, h);
            for (std::size_t a = 0; a < sd.points.size(); ++a)
                for (int k = 0; k < sd.orders[a]; ++k) {
                    C g = img(static_cast<int>(a), sh.index(i, j), k);
                    if (is_zero(g))
                        continue;
                    Psdo<C> t = lmul(g, pole_expand<C>(proto, sd.points[a], k + 1, h));
                    if (sh.odd(i))
                        e += t;
                    else
                        e -= t;
                }
            l(i - 1, j - 1) = e;
        }
    return l;
}

/// One coefficient of a generating series together with the exponents it sits at.
template <class C>
struct SeriesCoefficient {
    int zexp = 0;
    int dexp = 0;
    C value;
};

/// All nonzero coefficients inside the trusted window, highest exponents first.
template <class C, bool K>
std::vector<SeriesCoefficient<C>> extract_generators(const Psdo<C, K>& series)
{
    std::vector<SeriesCoefficient<C>> out;
    for (auto it = series.terms().rbegin(); it != series.terms().rend(); ++it)
        if (series.known(it->first.first, it->first.second))
            out.push_back({it->first.first, it->first.second, it->second});
    return out;
}

/// Supercommutator in any of the element algebras.
inline PBWElement supercommutator(const PBWElement& a, const PBWElement& b) { return pbw_commutator(a, b); }
inline WeylElement supercommutator(const WeylElement& a, const WeylElement& b) { return weyl_commutator(a, b); }

/// First pair (by position) of family members whose supercommutator is nonzero.
template <class C>
std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair(const std::vector<SeriesCoefficient<C>>& fam)
{
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (!is_zero(supercommutator(fam[i].value, fam[j].value)))
                return std::pair{i, j};
    return std::nullopt;
}

} // namespace gaudin

namespace gaudin {

/// Classical L_d = [delta_ij w + Phi(e_ij (x) t^{-1}) + mu(e_ij)] with commuting symbols (z, w) = (first, second).
template <class C>
TypedMatrix<Psdo<C, true>> build_Ld_classical(int d, const Character& mu, const SingularityData& sd,
                                              const TakiffImage<C>& img, const C& proto, Horizon h)
{
    using P = Psdo<C, true>;
    GlShape sh{d, 0, 0, 0};
    const C one = one_like(proto);
    TypedMatrix<P> l(std::vector<int>(d, 0), P(proto, h));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            const int label = sh.index(i, j);
            P e = P::constant(one * character_value(mu, label), h);
            if (i == j)
                e += P::monomial(one, 0, 1, h);
            for (std::size_t s = 0; s < sd.points.size(); ++s)
                for (int k = 0; k < sd.orders[s]; ++k) {
                    C a = img(static_cast<int>(s), label, k);
                    if (!is_zero(a))
                        e -= lmul(a, pole_expand<C, true>(proto, sd.points[s], k + 1, h));
                }
            l(i - 1, j - 1) = e;
        }
    return l;
}

/// Classical L_s = [delta_ij z + (-1)^{|i|} (Phi_w(E^i_j (x) t^{-1}) + mu(E^i_j))]; poles in w.
template <class C>
TypedMatrix<Psdo<C, true>> build_Ls_classical(const GlShape& sh, const Character& mu, const SingularityData& sd,
                                              const TakiffImage<C>& img, const C& proto, Horizon h)
{
    using P = Psdo<C, true>;
    const int N = sh.size();
    const C one = one_like(proto);
    TypedMatrix<P> l(standard_type(sh), P(proto, h));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const int label = sh.index(i, j);
            P e = P::constant(one * character_value(mu, label), h);
            for (std::size_t a = 0; a < sd.points.size(); ++a)
                for (int k = 0; k < sd.orders[a]; ++k) {
                    C g = img(static_cast<int>(a), label, k);
                    if (!is_zero(g))
                        e -= lmul(g, dpole_expand<C, true>(proto, sd.points[a], k + 1, h));
                }
            if (sh.odd(i))
                e = -e;
            if (i == j)
                e += P::monomial(one, 1, 0, h);
            l(i - 1, j - 1) = e;
        }
    return l;
}

} // namespace gaudin
