#pragma once

// Oscillator realizations of both Takiff sums and the engines that check the quantum and
// classical duality identities coefficient by coefficient.

#include "gaudin/envalg.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/ncmatrix.hpp"
#include "gaudin/psdo.hpp"
#include "gaudin/superpoly.hpp"
#include "gaudin/weylalg.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace gaudin {

/// Full input of one duality check. The d-side lives on the points z with orders gamma,
/// the s-side on the points w with orders xi.
struct DualityScenario {
    std::string name;
    int d = 1, p = 0, q = 0, m = 0, n = 0;
    std::vector<int> xi;
    std::vector<int> gamma;
    std::vector<Rational> w;
    std::vector<Rational> z;
    int zmin = -8, zmax = 0, dmin = -8, dmax = 0; // maxima default to d + 2

    GlShape shape() const { return {p, q, m, n}; }
    WeylProfile profile() const { return {d, p, q, m, n}; }
    SingularityData d_sites() const { return {z, gamma}; }
    SingularityData s_sites() const { return {w, xi}; }
    Horizon horizon() const { return {zmin, dmin}; }
    BlockCounts blocks() const { return composition_blocks(shape(), gamma); }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const
    {
        if (d < 1 || p < 0 || q < 0 || m < 0 || n < 0 || p + q + m + n < 1)
            throw std::invalid_argument("sizes need d >= 1, p, q, m, n >= 0 and p + q + m + n >= 1");
        int total = 0;
        for (int x : xi) {
            if (x < 1)
                throw std::invalid_argument("xi parts must be positive");
            total += x;
        }
        if (total != d)
            throw std::invalid_argument("composition xi must sum to d");
        if (w.size() != xi.size())
            throw std::invalid_argument("w needs one point per part of xi");
        if (z.size() != gamma.size())
            throw std::invalid_argument("z needs one point per part of gamma");
        composition_blocks(shape(), gamma);
        SingularityData{w, xi}.validate();
        SingularityData{z, gamma}.validate();
        if (zmin > zmax || dmin > dmax)
            throw std::invalid_argument("empty verification window");
    }

    /// Exponents [gamma_i]: positive on the p- and m-blocks, negative otherwise.
    std::vector<int> signed_orders() const
    {
        auto b = blocks();
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(gamma.size()); ++i) {
            bool plus = i < b.p || (i >= b.p + b.q && i < b.p + b.q + b.m);
            out.push_back(plus ? gamma[i] : -gamma[i]);
        }
        return out;
    }
};

/// Which quadrant of the s-side realization gets a flipped sign (falsification control).
enum class Quadrant { none, yy, yx, xy, xx };

/// The realizations phi_d, phi_s and their symbols, as short sums of ordered pairs of phase-space generators.
class DualityMaps {
public:
    using Pair = std::tuple<Rational, int, int>; // coefficient, first factor, second factor

    explicit DualityMaps(const DualityScenario& sc) : sc_(sc), alg_(make_weyl_algebra(sc.profile()))
    {
        sc_.validate();
        l_.push_back(0);
        for (int g : sc_.gamma)
            l_.push_back(l_.back() + g);
        da_.push_back(0);
        for (int x : sc_.xi)
            da_.push_back(da_.back() + x);
        yq_ = sc_.blocks().p + sc_.blocks().q;
    }

    const DualityScenario& scenario() const { return sc_; }
    const WeylAlgebraPtr& weyl() const { return alg_; }
    const GeneratorSetPtr& phase_space() const { return alg_->generators(); }

    /// e_ab (x) tbar^k at d-side site i.
    std::vector<Pair> d_pairs(int site, int label, int k) const
    {
        const int a = label / sc_.d + 1;
        const int b = label % sc_.d + 1;
        if (site < 0 || site >= static_cast<int>(sc_.gamma.size()) || k < 0 || k >= sc_.gamma[site])
            throw std::out_of_range("d-side generator out of range");
        std::vector<Pair> out;
        const int pq = sc_.p + sc_.q;
        if (site < yq_) {
            for (int r = l_[site] + 1; r <= l_[site + 1] - k; ++r)
                out.emplace_back(Rational(-1), alg_->y(b, r), alg_->dy(a, r + k));
        } else {
            for (int r = l_[site] + 1 - pq; r <= l_[site + 1] - k - pq; ++r)
                out.emplace_back(Rational(sc_.profile().x_odd(r) ? -1 : 1), alg_->dx(b, r), alg_->x(a, r + k));
        }
        return out;
    }

    /// E^I_J (x) tbar^k at s-side site a.
    std::vector<Pair> s_pairs(int site, int label, int k, Quadrant mutate = Quadrant::none) const
    {
        const GlShape sh = sc_.shape();
        const int N = sh.size();
        const int I = label / N + 1;
        const int J = label % N + 1;
        if (site < 0 || site >= static_cast<int>(sc_.xi.size()) || k < 0 || k >= sc_.xi[site])
            throw std::out_of_range("s-side generator out of range");
        const int pq = sc_.p + sc_.q;
        const auto pr = sc_.profile();
        Quadrant quad = I <= pq ? (J <= pq ? Quadrant::yy : Quadrant::yx) : (J <= pq ? Quadrant::xy : Quadrant::xx);
        const Rational flip = quad == mutate ? -1 : 1;
        std::vector<Pair> out;
        for (int al = da_[site] + 1; al <= da_[site + 1] - k; ++al) {
            switch (quad) {
            case Quadrant::yy: {
                Rational sgn = pr.y_odd(J) ? 1 : -1; // (-1)^{|s|+1}
                out.emplace_back(flip * sgn, alg_->dy(al + k, I), alg_->y(al, J));
                break;
            }
            case Quadrant::yx:
                out.emplace_back(flip, alg_->dy(al + k, I), alg_->dx(al, J - pq));
                break;
            case Quadrant::xy: {
                Rational sgn = pr.y_odd(J) ? 1 : -1;
                out.emplace_back(flip * sgn, alg_->x(al + k, I - pq), alg_->y(al, J));
                break;
            }
            default:
                out.emplace_back(flip, alg_->x(al + k, I - pq), alg_->dx(al, J - pq));
            }
        }
        return out;
    }

    WeylElement quantum(const std::vector<Pair>& pairs) const
    {
        WeylElement r(alg_);
        for (const auto& [c, f, g] : pairs)
            r += WeylElement::generator(alg_, f, c) * WeylElement::generator(alg_, g);
        return r;
    }

    SuperPoly classical(const std::vector<Pair>& pairs) const
    {
        SuperPoly r(phase_space());
        for (const auto& [c, f, g] : pairs)
            r += SuperPoly::generator(phase_space(), f) * SuperPoly::generator(phase_space(), g) * c;
        return r;
    }

    WeylElement phi_d(int site, int label, int k) const { return quantum(d_pairs(site, label, k)); }
    WeylElement phi_s(int site, int label, int k, Quadrant mutate = Quadrant::none) const
    {
        return quantum(s_pairs(site, label, k, mutate));
    }
    SuperPoly phi_d_classical(int site, int label, int k) const { return classical(d_pairs(site, label, k)); }
    SuperPoly phi_s_classical(int site, int label, int k) const { return classical(s_pairs(site, label, k)); }

    TakiffImage<WeylElement> d_image() const
    {
        return [this](int s, int b, int k) { return phi_d(s, b, k); };
    }
    TakiffImage<WeylElement> s_image(Quadrant mutate = Quadrant::none) const
    {
        return [this, mutate](int s, int b, int k) { return phi_s(s, b, k, mutate); };
    }
    TakiffImage<SuperPoly> d_image_classical() const
    {
        return [this](int s, int b, int k) { return phi_d_classical(s, b, k); };
    }
    TakiffImage<SuperPoly> s_image_classical() const
    {
        return [this](int s, int b, int k) { return phi_s_classical(s, b, k); };
    }

private:
    DualityScenario sc_;
    WeylAlgebraPtr alg_;
    std::vector<int> l_;
    std::vector<int> da_;
    int yq_ = 0;
};

/// FNV-1a over a canonical rendering; stable across runs and platforms.
inline std::string stable_hash(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

template <class T>
std::string render(const T& v)
{
    if constexpr (std::is_same_v<T, Rational>)
        return v.get_str();
    else
        return v.to_string();
}

struct CoefficientOutcome {
    int zexp = 0;
    int dexp = 0;
    std::string lhs_hash;
    std::string rhs_hash;
    bool equal = true;
};

struct Witness {
    int zexp = 0;
    int dexp = 0;
    std::string lhs;
    std::string rhs;
};

/// Result of comparing two truncated series on a box of exponents.
struct SeriesComparison {
    bool pass = true;
    int zlow = 0, zhigh = 0, dlow = 0, dhigh = 0; // joint box actually compared
    bool covered = false;                         // the box reaches the requested lower corner
    std::size_t positions = 0;                    // exponent pairs compared, zeros included
    std::vector<CoefficientOutcome> outcomes;     // pairs where either side is nonzero
    std::optional<Witness> witness;               // highest mismatching pair
};

inline std::string clip(const std::string& s, std::size_t n = 240)
{
    return s.size() <= n ? s : s.substr(0, n) + "...";
}

/// Compares two series on [zmin, zmax] x [dmin, dmax] intersected with the region where both are trusted.
template <class C, bool K>
SeriesComparison compare_series(const Psdo<C, K>& lhs, const Psdo<C, K>& rhs, int zmin, int zmax, int dmin, int dmax)
{
    SeriesComparison out;
    out.zlow = std::max({zmin, lhs.zlow(), rhs.zlow()});
    out.dlow = std::max({dmin, lhs.dlow(), rhs.dlow()});
    out.zhigh = zmax;
    out.dhigh = dmax;
    if (out.zlow > out.zhigh || out.dlow > out.dhigh)
        throw PrecisionExhausted("no jointly trusted coefficients in the comparison window");
    out.covered = out.zlow == zmin && out.dlow == dmin;
    // Terms above the requested box must not exist on either side.
    auto above = [&](const Psdo<C, K>& s) {
        for (const auto& [k, c] : s.terms())
            if ((k.first > zmax && k.second >= out.dlow) || (k.second > dmax && k.first >= out.zlow))
                return std::optional<std::pair<int, int>>(k);
        return std::optional<std::pair<int, int>>();
    };
    for (int i = out.zhigh; i >= out.zlow; --i)
        for (int j = out.dhigh; j >= out.dlow; --j) {
            ++out.positions;
            C a = lhs.coefficient(i, j);
            C b = rhs.coefficient(i, j);
            if (is_zero(a) && is_zero(b))
                continue;
            CoefficientOutcome o{i, j, stable_hash(render(a)), stable_hash(render(b)), a == b};
            if (!o.equal && !out.witness)
                out.witness = Witness{i, j, clip(render(a)), clip(render(b))};
            out.pass = out.pass && o.equal;
            out.outcomes.push_back(std::move(o));
        }
    for (const auto* s : {&lhs, &rhs}) {
        if (auto k = above(*s)) {
            out.pass = false;
            if (!out.witness) {
                C a = lhs.coefficient(k->first, k->second);
                C b = rhs.coefficient(k->first, k->second);
                out.witness = Witness{k->first, k->second, clip(render(a)), clip(render(b))};
            }
        }
    }
    return out;
}

/// (sym - c)^e in one symbol (second symbol when `second` is set); negative e expands in inverse powers.
template <class C, bool K>
Psdo<C, K> linear_power(const C& proto, const Rational& c, int e, bool second, Horizon h)
{
    using P = Psdo<C, K>;
    const C one = one_like(proto);
    if (e < 0)
        return second ? dpole_expand<C, K>(proto, c, -e, h) : pole_expand<C, K>(proto, c, -e, h);
    P base = (second ? P::monomial(one, 0, 1, h) : P::monomial(one, 1, 0, h)) - P::constant(one * c, h);
    P r = P::constant(one, h);
    for (int t = 0; t < e; ++t)
        r = r * base;
    return r;
}

/// Both sides of the quantum identity, and the pieces the evidence checks reuse.
struct QuantumSides {
    Psdo<WeylElement> cdet_d; // phi_d(cdet hat L_d)
    Psdo<WeylElement> ber_s;  // phi_s(Ber L_s)
    Psdo<WeylElement> lhs;    // prod (z - w_a)^{-xi_a} prod (dz - z_i)^{[gamma_i]} * cdet_d
    Psdo<WeylElement> rhs;    // ber_s
};

inline int default_max(const DualityScenario& sc, int v) { return v != 0 ? v : sc.d + 2; }

/// Total dz degree of the factors with negative exponent.
inline int cleared_degree(const DualityScenario& sc)
{
    int extra = 0;
    for (int e : sc.signed_orders())
        if (e < 0)
            extra -= e;
    return extra;
}

/// Horizon of the d-side. It is cheap, so it goes deep enough that the prefactors keep the window trusted.
inline Horizon d_side_horizon(const DualityScenario& sc)
{
    int total = 0;
    for (int e : sc.signed_orders())
        total += std::abs(e);
    return {sc.zmin - sc.d - 2, sc.dmin - total - 2};
}

/// Horizon of the s-side. The Berezinian gives up one dz order, so it starts one below the window.
inline Horizon s_side_horizon(const DualityScenario& sc) { return {sc.zmin, sc.dmin - 1}; }

/// prod (dz - z_i)^{e_i}; `positive_only` drops the factors with negative exponent, `negative_flipped`
/// raises those to the opposite power instead.
inline Psdo<WeylElement> dz_prefactor(const DualityMaps& maps, bool positive_only, bool negative_flipped, Horizon h)
{
    const auto& sc = maps.scenario();
    const WeylElement proto(maps.weyl());
    auto orders = sc.signed_orders();
    Psdo<WeylElement> r = Psdo<WeylElement>::constant(one_like(proto), h);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        int e = orders[i];
        if (e < 0 && positive_only)
            continue;
        if (e < 0 && negative_flipped)
            e = -e;
        r = r * linear_power<WeylElement, false>(proto, sc.z[i], e, true, h);
    }
    return r;
}

/// prod (z - w_a)^{sign * xi_a}.
inline Psdo<WeylElement> z_prefactor(const DualityMaps& maps, int sign, Horizon h)
{
    const auto& sc = maps.scenario();
    const WeylElement proto(maps.weyl());
    Psdo<WeylElement> r = Psdo<WeylElement>::constant(one_like(proto), h);
    for (std::size_t a = 0; a < sc.xi.size(); ++a)
        r = r * linear_power<WeylElement, false>(proto, sc.w[a], sign * sc.xi[a], false, h);
    return r;
}

/// Compares prod (z - w_a)^{-xi_a} P phi_d(cdet) with phi_s(Ber): the identity multiplied on the left by
/// the inverse of its z prefactor, so the expensive side needs no extra z depth.
inline QuantumSides quantum_sides(const DualityMaps& maps, Quadrant mutate = Quadrant::none)
{
    const auto& sc = maps.scenario();
    const Horizon hd = d_side_horizon(sc), hs = s_side_horizon(sc);
    const WeylElement proto(maps.weyl());
    auto mu = jordan_mu(sc.d, sc.w, sc.xi);
    auto nu = jordan_nu(sc.shape(), sc.z, sc.gamma);
    QuantumSides s;
    s.cdet_d = cdet(build_Ld_hat(sc.d, mu, sc.d_sites(), maps.d_image(), proto, hd));
    s.ber_s = berezinian(build_Ls(sc.shape(), nu, sc.s_sites(), maps.s_image(mutate), proto, hs));
    s.lhs = z_prefactor(maps, -1, hd) * (dz_prefactor(maps, false, false, hd) * s.cdet_d);
    s.rhs = s.ber_s;
    return s;
}

struct DualityOutcome {
    bool pass = false;
    SeriesComparison main;    // with inverted prefactors
    SeriesComparison cleared; // inverse-free comparison
    bool cleared_pass = false;
};

/// Quantum identity on the scenario window, in both comparison modes.
inline DualityOutcome verify_quantum_duality(const DualityMaps& maps, const QuantumSides& s)
{
    const auto& sc = maps.scenario();
    const int zmax = default_max(sc, sc.zmax), dmax = default_max(sc, sc.dmax);
    DualityOutcome out;
    out.main = compare_series(s.lhs, s.rhs, sc.zmin, zmax, sc.dmin, dmax);
    // Inverse-free form: only polynomial prefactors on either side. They raise the degrees by d in z and
    // by the cleared degree in dz, and the window moves with them.
    const Horizon hd = d_side_horizon(sc);
    const int extra = cleared_degree(sc);
    Psdo<WeylElement> lhs2 = dz_prefactor(maps, true, false, hd) * s.cdet_d;
    Psdo<WeylElement> cleared = Psdo<WeylElement>::constant(one_like(WeylElement(maps.weyl())), hd);
    auto orders = sc.signed_orders();
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] < 0)
            cleared = cleared * linear_power<WeylElement, false>(WeylElement(maps.weyl()), sc.z[i], -orders[i], true, hd);
    Psdo<WeylElement> rhs2 = cleared * (z_prefactor(maps, 1, hd) * s.ber_s);
    out.cleared = compare_series(lhs2, rhs2, sc.zmin + sc.d, zmax + sc.d, sc.dmin + extra, dmax + extra);
    out.cleared_pass = out.cleared.pass && out.cleared.covered;
    out.pass = out.main.pass && out.main.covered && out.cleared_pass;
    return out;
}

inline DualityOutcome verify_quantum_duality(const DualityMaps& maps, Quadrant mutate = Quadrant::none)
{
    return verify_quantum_duality(maps, quantum_sides(maps, mutate));
}

/// Evidence for equality of the image algebras.
struct EvidenceOutcome {
    bool pass = false;
    SeriesComparison reconstruction; // s-family series rebuilt from the d-family through the identity
    std::size_t d_family = 0, s_family = 0, pairs_checked = 0;
    std::optional<std::pair<std::string, std::string>> witness; // labels of a noncommuting pair
};

inline std::string family_label(char side, int zexp, int dexp)
{
    return std::string(1, side) + "[z^" + std::to_string(zexp) + " dz^" + std::to_string(dexp) + "]";
}

/// Generators of a series inside the scenario window.
inline std::vector<SeriesCoefficient<WeylElement>> window_generators(const Psdo<WeylElement>& series,
                                                                     const DualityScenario& sc)
{
    auto all = extract_generators(series);
    std::vector<SeriesCoefficient<WeylElement>> out;
    for (auto& c : all)
        if (c.zexp >= sc.zmin && c.dexp >= sc.dmin)
            out.push_back(std::move(c));
    return out;
}

inline EvidenceOutcome verify_image_equality_evidence(const DualityMaps& maps, const QuantumSides& s)
{
    const auto& sc = maps.scenario();
    EvidenceOutcome out;
    out.reconstruction = compare_series(s.lhs, s.rhs, sc.zmin, default_max(sc, sc.zmax), sc.dmin, default_max(sc, sc.dmax));
    const WeylElement one = one_like(WeylElement(maps.weyl()));
    auto fd = window_generators(s.cdet_d, sc);
    auto fs = window_generators(s.ber_s, sc);
    out.d_family = fd.size();
    out.s_family = fs.size();
    std::vector<std::pair<std::string, WeylElement>> all;
    for (const auto& c : fd)
        if (!(c.value == one))
            all.emplace_back(family_label('d', c.zexp, c.dexp), c.value);
    for (const auto& c : fs)
        if (!(c.value == one))
            all.emplace_back(family_label('s', c.zexp, c.dexp), c.value);
    bool commute = true;
    for (std::size_t i = 0; i < all.size() && commute; ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            ++out.pairs_checked;
            if (!weyl_commutator(all[i].second, all[j].second).is_zero()) {
                commute = false;
                out.witness = std::pair{all[i].first, all[j].first};
                break;
            }
        }
    out.pass = out.reconstruction.pass && out.reconstruction.covered && commute;
    return out;
}

inline EvidenceOutcome verify_image_equality_evidence(const DualityMaps& maps, Quadrant mutate = Quadrant::none)
{
    return verify_image_equality_evidence(maps, quantum_sides(maps, mutate));
}

/// Classical identity with commuting symbols (z, w).
struct ClassicalOutcome {
    bool pass = false;
    SeriesComparison main;
    bool transpose_invariant = false;
};

inline ClassicalOutcome verify_classical_duality(const DualityMaps& maps)
{
    using P = Psdo<SuperPoly, true>;
    const auto& sc = maps.scenario();
    // As in the quantum case the w prefactor moves to the determinant side as its inverse. That side is
    // cheap and goes deep; the Berezinian starts one order below the window.
    int total = 0;
    for (int e : sc.signed_orders())
        total += std::abs(e);
    const Horizon hd{sc.zmin - total - 2, sc.dmin - sc.d - 2}, hs{sc.zmin - 1, sc.dmin - 1};
    const SuperPoly proto(maps.phase_space());
    auto mu = jordan_mu(sc.d, sc.w, sc.xi);
    auto nu = jordan_nu(sc.shape(), sc.z, sc.gamma);
    auto ld = build_Ld_classical(sc.d, mu, sc.d_sites(), maps.d_image_classical(), proto, hd);
    auto ls = build_Ls_classical(sc.shape(), nu, sc.s_sites(), maps.s_image_classical(), proto, hs);
    P det_d = cdet(ld);
    ClassicalOutcome out;
    out.transpose_invariant = agree(det_d, cdet(ld.transpose())) && agree(det_d, rdet(ld));
    P lhs = P::constant(one_like(proto), hd);
    auto orders = sc.signed_orders();
    for (std::size_t i = 0; i < orders.size(); ++i)
        lhs = lhs * linear_power<SuperPoly, true>(proto, sc.z[i], orders[i], false, hd);
    for (std::size_t a = 0; a < sc.xi.size(); ++a)
        lhs = lhs * linear_power<SuperPoly, true>(proto, sc.w[a], -sc.xi[a], true, hd);
    lhs = lhs * det_d;
    P rhs = berezinian(ls, Grading::z);
    out.main = compare_series(lhs, rhs, sc.zmin, default_max(sc, sc.zmax), sc.dmin, default_max(sc, sc.dmax));
    out.pass = out.main.pass && out.main.covered && out.transpose_invariant;
    return out;
}

/// Bracket-compatibility sweep over all basis pairs.
struct HomSweep {
    std::string name;
    std::size_t pairs = 0;
    std::size_t failures = 0;
    std::optional<std::pair<std::string, std::string>> witness;
    bool informational = false; // reported but not part of the verdict
    bool pass() const { return failures == 0; }
};

namespace detail {

template <class Img, class Bracket, class Zero>
HomSweep sweep_homomorphism(const std::string& name, const LieSuperData& lie, Img img, Bracket bracket, Zero zero)
{
    HomSweep out{name};
    std::vector<decltype(img(0))> images;
    for (std::size_t i = 0; i < lie.dim(); ++i)
        images.push_back(img(static_cast<int>(i)));
    for (std::size_t i = 0; i < lie.dim(); ++i)
        for (std::size_t j = 0; j < lie.dim(); ++j) {
            ++out.pairs;
            auto lhs = zero();
            for (const auto& [k, c] : lie.bracket(i, j))
                lhs += images[k] * c;
            auto rhs = bracket(images[i], images[j]);
            if (!(lhs == rhs)) {
                ++out.failures;
                if (!out.witness)
                    out.witness = std::pair{lie.label(i).name, lie.label(j).name};
            }
        }
    return out;
}

} // namespace detail

/// Takiff sums of both sides for a scenario.
struct ScenarioAlgebras {
    TakiffSum d_side;
    TakiffSum s_side;
    explicit ScenarioAlgebras(const DualityScenario& sc)
        : d_side(make_gld(sc.d), sc.z, sc.gamma), s_side(make_gl(sc.p, sc.q, sc.m, sc.n), sc.w, sc.xi)
    {
    }
};

inline std::vector<HomSweep> verify_homomorphisms(const DualityMaps& maps)
{
    ScenarioAlgebras algs(maps.scenario());
    const auto& dl = algs.d_side.lie();
    const auto& sl = algs.s_side.lie();
    auto dq = [&](int i) { const auto& l = dl.label(i); return maps.phi_d(l.site, l.base, l.degree); };
    auto sq = [&](int i) { const auto& l = sl.label(i); return maps.phi_s(l.site, l.base, l.degree); };
    auto dc = [&](int i) { const auto& l = dl.label(i); return maps.phi_d_classical(l.site, l.base, l.degree); };
    auto scl = [&](int i) { const auto& l = sl.label(i); return maps.phi_s_classical(l.site, l.base, l.degree); };
    auto wz = [&] { return WeylElement(maps.weyl()); };
    auto pz = [&] { return SuperPoly(maps.phase_space()); };
    auto wb = [](const WeylElement& a, const WeylElement& b) { return weyl_commutator(a, b); };
    auto pb = [](const SuperPoly& a, const SuperPoly& b) { return poisson_bracket(a, b); };
    std::vector<HomSweep> out;
    out.push_back(detail::sweep_homomorphism("phi_d", dl, dq, wb, wz));
    out.push_back(detail::sweep_homomorphism("phi_s", sl, sq, wb, wz));
    out.push_back(detail::sweep_homomorphism("phi_d_classical", dl, dc, pb, pz));
    out.push_back(detail::sweep_homomorphism("phi_s_classical", sl, scl, pb, pz));
    // Howe pair: the diagonal degree-zero actions of both sides supercommute.
    const auto& sc = maps.scenario();
    const int D = sc.d * sc.d;
    const int S = sc.shape().size() * sc.shape().size();
    auto diag_d = [&](int b) {
        WeylElement r(maps.weyl());
        for (int s = 0; s < static_cast<int>(sc.gamma.size()); ++s)
            r += maps.phi_d(s, b, 0);
        return r;
    };
    auto diag_s = [&](int b) {
        WeylElement r(maps.weyl());
        for (int s = 0; s < static_cast<int>(sc.xi.size()); ++s)
            r += maps.phi_s(s, b, 0);
        return r;
    };
    auto diag_dc = [&](int b) {
        SuperPoly r(maps.phase_space());
        for (int s = 0; s < static_cast<int>(sc.gamma.size()); ++s)
            r += maps.phi_d_classical(s, b, 0);
        return r;
    };
    auto diag_sc = [&](int b) {
        SuperPoly r(maps.phase_space());
        for (int s = 0; s < static_cast<int>(sc.xi.size()); ++s)
            r += maps.phi_s_classical(s, b, 0);
        return r;
    };
    const auto gd = make_gld(sc.d);
    const auto gs = make_gl(sc.p, sc.q, sc.m, sc.n);
    HomSweep howe{"howe_quantum"}, howe_c{"howe_classical"};
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < S; ++j) {
            ++howe.pairs;
            ++howe_c.pairs;
            if (!weyl_commutator(diag_d(i), diag_s(j)).is_zero() && !howe.failures++)
                howe.witness = std::pair{gd.label(i).name, gs.label(j).name};
            if (!poisson_bracket(diag_dc(i), diag_sc(j)).is_zero() && !howe_c.failures++)
                howe_c.witness = std::pair{gd.label(i).name, gs.label(j).name};
        }
    out.push_back(howe);
    out.push_back(howe_c);
    // Site-resolved Takiff images, all pairs. These need not commute once a side has several sites.
    HomSweep cross{"takiff_cross_quantum"};
    cross.informational = true;
    for (std::size_t i = 0; i < dl.dim(); ++i)
        for (std::size_t j = 0; j < sl.dim(); ++j) {
            ++cross.pairs;
            if (!weyl_commutator(dq(static_cast<int>(i)), sq(static_cast<int>(j))).is_zero() && !cross.failures++)
                cross.witness = std::pair{dl.label(i).name, sl.label(j).name};
        }
    out.push_back(cross);
    return out;
}

} // namespace gaudin
