#pragma once

// Suite orchestration: configuration wire format, the verification suites, and JSON reports.

#include "gaudin/duality.hpp"
#include "gaudin/fockrep.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_suites()
{
    static const std::vector<std::string> s{"duality", "classical", "homs", "commute", "spectrum", "berezinian"};
    return s;
}

/// Scenario plus run options, as read from the wire.
struct GaudinConfig {
    DualityScenario scenario;
    bool has_scenario = false;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    int trials = 50;
    int spaces = 3;
};

inline Rational rational_from_json(const json& v, const std::string& field)
{
    try {
        if (v.is_number_integer())
            return Rational(v.get<long>());
        if (v.is_string())
            return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
    throw ConfigError("field " + field + " needs rationals written as integers or \"num/den\" strings");
}

inline std::vector<int> ints_from_json(const json& v, const std::string& field)
{
    if (!v.is_array())
        throw ConfigError("field " + field + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer())
            throw ConfigError("field " + field + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

/// Parses "zmin,zmax,dmin,dmax".
inline void apply_window(DualityScenario& sc, const std::string& text)
{
    std::vector<int> v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t c = text.find(',', pos);
        std::string part = text.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size())
                throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("window must be four integers zmin,zmax,dmin,dmax");
        }
        if (c == std::string::npos)
            break;
        pos = c + 1;
    }
    if (v.size() != 4)
        throw ConfigError("window must be four integers zmin,zmax,dmin,dmax");
    sc.zmin = v[0];
    sc.zmax = v[1];
    sc.dmin = v[2];
    sc.dmax = v[3];
}

inline GaudinConfig parse_config(const json& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> allowed{"name", "d", "p", "q", "m", "n", "xi", "gamma", "w", "z",
                                                  "window", "suites", "seed", "trials", "spaces"};
    for (const auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("unknown config field " + k);
    GaudinConfig cfg;
    auto& sc = cfg.scenario;
    auto get_int = [&](const char* key, int dflt) {
        if (!j.contains(key))
            return dflt;
        if (!j[key].is_number_integer())
            throw ConfigError(std::string("field ") + key + " must be an integer");
        return j[key].get<int>();
    };
    cfg.has_scenario = j.contains("d");
    if (cfg.has_scenario) {
        sc.name = j.value("name", std::string());
        sc.d = get_int("d", 1);
        sc.p = get_int("p", 0);
        sc.q = get_int("q", 0);
        sc.m = get_int("m", 0);
        sc.n = get_int("n", 0);
        for (const char* key : {"xi", "gamma", "w", "z"})
            if (!j.contains(key))
                throw ConfigError(std::string("missing field ") + key);
        sc.xi = ints_from_json(j["xi"], "xi");
        sc.gamma = ints_from_json(j["gamma"], "gamma");
        if (!j["w"].is_array() || !j["z"].is_array())
            throw ConfigError("fields w and z must be arrays");
        for (const auto& v : j["w"])
            sc.w.push_back(rational_from_json(v, "w"));
        for (const auto& v : j["z"])
            sc.z.push_back(rational_from_json(v, "z"));
        sc.zmax = sc.dmax = sc.d + 2;
        if (j.contains("window")) {
            const auto& w = j["window"];
            if (!w.is_object())
                throw ConfigError("window must be an object with zmin, zmax, dmin, dmax");
            auto field = [&](const char* key, int& out) {
                if (w.contains(key)) {
                    if (!w[key].is_number_integer())
                        throw ConfigError(std::string("window.") + key + " must be an integer");
                    out = w[key].get<int>();
                }
            };
            field("zmin", sc.zmin);
            field("zmax", sc.zmax);
            field("dmin", sc.dmin);
            field("dmax", sc.dmax);
        }
        try {
            sc.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid scenario: ") + e.what() +
                              " (compositions must satisfy sum(xi) = d and gamma splitting into blocks of sizes p, q, m, n)");
        }
    }
    if (j.contains("suites")) {
        if (!j["suites"].is_array())
            throw ConfigError("suites must be an array of names");
        for (const auto& s : j["suites"]) {
            if (!s.is_string() ||
                std::find(known_suites().begin(), known_suites().end(), s.get<std::string>()) == known_suites().end())
                throw ConfigError("unknown suite " + s.dump());
            cfg.suites.push_back(s.get<std::string>());
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw ConfigError("seed must be a nonnegative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    cfg.trials = get_int("trials", cfg.trials);
    cfg.spaces = get_int("spaces", cfg.spaces);
    if (cfg.trials < 1 || cfg.spaces < 1)
        throw ConfigError("trials and spaces must be positive");
    return cfg;
}

inline json rationals_json(const std::vector<Rational>& v)
{
    json a = json::array();
    for (const auto& r : v)
        a.push_back(r.get_str());
    return a;
}

inline json scenario_json(const DualityScenario& sc)
{
    json j;
    j["name"] = sc.name;
    j["d"] = sc.d;
    j["p"] = sc.p;
    j["q"] = sc.q;
    j["m"] = sc.m;
    j["n"] = sc.n;
    j["xi"] = sc.xi;
    j["gamma"] = sc.gamma;
    j["w"] = rationals_json(sc.w);
    j["z"] = rationals_json(sc.z);
    j["window"] = {{"zmin", sc.zmin}, {"zmax", default_max(sc, sc.zmax)}, {"dmin", sc.dmin}, {"dmax", default_max(sc, sc.dmax)}};
    return j;
}

inline json comparison_json(const SeriesComparison& c)
{
    json j;
    j["pass"] = c.pass && c.covered;
    j["covered"] = c.covered;
    j["box"] = {{"zmin", c.zlow}, {"zmax", c.zhigh}, {"dmin", c.dlow}, {"dmax", c.dhigh}};
    j["positions"] = c.positions;
    json coeffs = json::array();
    for (const auto& o : c.outcomes)
        coeffs.push_back({{"z", o.zexp}, {"dz", o.dexp}, {"lhs", o.lhs_hash}, {"rhs", o.rhs_hash}, {"equal", o.equal}});
    j["coefficients"] = coeffs;
    if (c.witness)
        j["witness"] = {{"z", c.witness->zexp}, {"dz", c.witness->dexp}, {"lhs", c.witness->lhs}, {"rhs", c.witness->rhs}};
    return j;
}

// ---------------------------------------------------------------------------
// Suites. Each returns a JSON section with a top-level "pass".

inline json duality_suite(const DualityScenario& sc, Quadrant mutate = Quadrant::none)
{
    DualityMaps maps(sc);
    auto sides = quantum_sides(maps, mutate);
    auto q = verify_quantum_duality(maps, sides);
    json j;
    j["quantum"] = comparison_json(q.main);
    j["inverse_free"] = comparison_json(q.cleared);
    auto ev = verify_image_equality_evidence(maps, sides);
    json e;
    e["level"] = "evidence";
    e["reconstruction"] = comparison_json(ev.reconstruction);
    e["d_family"] = ev.d_family;
    e["s_family"] = ev.s_family;
    e["pairs_checked"] = ev.pairs_checked;
    e["pass"] = ev.pass;
    if (ev.witness)
        e["witness"] = {ev.witness->first, ev.witness->second};
    j["image_equality"] = e;
    j["pass"] = q.pass && ev.pass;
    return j;
}

inline json classical_suite(const DualityScenario& sc)
{
    DualityMaps maps(sc);
    auto c = verify_classical_duality(maps);
    json j;
    j["identity"] = comparison_json(c.main);
    j["transpose_invariant"] = c.transpose_invariant;
    j["pass"] = c.pass;
    return j;
}

inline json homs_suite(const DualityScenario& sc)
{
    DualityMaps maps(sc);
    json j;
    bool pass = true;
    json sweeps = json::array();
    for (const auto& s : verify_homomorphisms(maps)) {
        json e{{"name", s.name}, {"pairs", s.pairs}, {"failures", s.failures}, {"pass", s.pass()}};
        if (s.informational)
            e["informational"] = true;
        if (s.witness)
            e["witness"] = {s.witness->first, s.witness->second};
        if (!s.informational)
            pass = pass && s.pass();
        sweeps.push_back(e);
    }
    j["sweeps"] = sweeps;
    j["pass"] = pass;
    return j;
}

inline json spectrum_suite(const DualityScenario& sc, std::uint64_t seed, int spaces)
{
    auto r = run_weight_space_suite(sc, seed, static_cast<std::size_t>(spaces));
    json j;
    j["seed"] = r.seed;
    j["w"] = rationals_json(r.w);
    j["z"] = rationals_json(r.z);
    j["gamma"] = std::vector<int>(sc.shape().size(), 1);
    j["xi"] = std::vector<int>(sc.d, 1);
    json arr = json::array();
    for (const auto& s : r.spaces) {
        json e;
        e["k"] = s.weight.k;
        e["mu"] = rationals_json(s.weight.mu);
        e["mubar"] = rationals_json(s.mubar);
        e["dim"] = s.dim;
        e["bases_agree"] = s.bases_agree;
        e["no_leakage"] = s.no_leakage;
        e["commute"] = s.spectral.commute && s.families_commute;
        e["cyclic_vector"] = s.spectral.cyclic_vector;
        e["simple_spectrum"] = s.spectral.simple;
        e["resamples"] = s.spectral.resamples;
        e["combinations"] = s.spectral.combinations;
        e["algebra_dims"] = {s.algebra_dim_s, s.algebra_dim_d, s.algebra_dim_joint};
        if (!s.error.empty())
            e["error"] = s.error;
        e["pass"] = s.pass();
        arr.push_back(e);
    }
    j["spaces"] = arr;
    j["requested"] = spaces;
    // Shapes whose weight spaces are all one-dimensional have nothing to check.
    if (r.spaces.empty())
        j["vacuous"] = true;
    j["pass"] = r.spaces.empty() || r.pass();
    return j;
}

/// Pairwise supercommutators over a window-extracted family; the first failure is kept.
template <class C>
json family_commutation(const std::vector<SeriesCoefficient<C>>& fam, const std::vector<char>& side)
{
    std::size_t pairs = 0;
    json j;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t k = i + 1; k < fam.size(); ++k) {
            ++pairs;
            if (!j.contains("witness") && !is_zero(supercommutator(fam[i].value, fam[k].value)))
                j["witness"] = {family_label(side[i], fam[i].zexp, fam[i].dexp),
                                family_label(side[k], fam[k].zexp, fam[k].dexp)};
        }
    j["generators"] = fam.size();
    j["pairs"] = pairs;
    j["pass"] = !j.contains("witness");
    return j;
}

/// Commutativity of the Gaudin generators: the d-side family in the enveloping algebra of the Takiff
/// algebra when d <= 2, and both image families jointly in the Weyl algebra.
inline json commutativity_suite(const DualityScenario& sc)
{
    const Horizon uh = sc.horizon();
    json j;
    bool pass = true;
    if (sc.d <= 2) {
        TakiffSum sum(make_gld(sc.d), sc.z, sc.gamma);
        auto alg = make_pbw(sum.lie());
        auto fam = extract_generators(
            cdet(build_Ld_hat(sc.d, jordan_mu(sc.d, sc.w, sc.xi), sc.d_sites(), pbw_images(alg, sum), PBWElement(alg), uh)));
        json u = family_commutation(fam, std::vector<char>(fam.size(), 'd'));
        pass = pass && u["pass"].get<bool>();
        j["enveloping"] = u;
    }
    DualityMaps maps(sc);
    auto s = quantum_sides(maps);
    auto fam = window_generators(s.cdet_d, sc);
    std::vector<char> side(fam.size(), 'd');
    for (auto& g : window_generators(s.ber_s, sc)) {
        fam.push_back(std::move(g));
        side.push_back('s');
    }
    json w = family_commutation(fam, side);
    pass = pass && w["pass"].get<bool>();
    j["weyl"] = w;
    j["pass"] = pass;
    return j;
}

// ---------------------------------------------------------------------------
// Randomized Berezinian structure suite.

struct PropTally {
    std::size_t pass = 0, total = 0;
    std::vector<std::string> witnesses;
    void record(bool ok, const std::string& what)
    {
        ++total;
        if (ok)
            ++pass;
        else if (witnesses.size() < 5)
            witnesses.push_back(what);
    }
    json to_json() const
    {
        json j{{"pass", pass}, {"total", total}};
        if (!witnesses.empty())
            j["witnesses"] = witnesses;
        return j;
    }
};

namespace detail {

using SP = Psdo<SuperPoly, true>;
using WP = Psdo<WeylElement>;

/// Random supercommutative matrix of the given type over series in the Fock polynomials.
inline TypedMatrix<SP> random_super_matrix(std::mt19937_64& rng, const GeneratorSetPtr& gens, const std::vector<int>& type,
                                           Horizon h)
{
    std::uniform_int_distribution<int> c(-3, 3), ze(-1, 0);
    std::vector<SuperPoly> even{SuperPoly(gens, 1)}, odd;
    for (std::size_t i = 0; i < gens->size(); ++i)
        (gens->odd(i) ? odd : even).push_back(SuperPoly::generator(gens, i));
    const std::size_t base_even = even.size(), base_odd = odd.size();
    for (std::size_t i = 0; i < base_odd; ++i)
        for (std::size_t j = i + 1; j < base_odd; ++j)
            even.push_back(odd[i] * odd[j]);
    for (std::size_t i = 1; i < base_even; ++i)
        for (std::size_t j = 0; j < base_odd; ++j)
            odd.push_back(even[i] * odd[j]);
    auto pick = [&](const std::vector<SuperPoly>& pool) {
        SuperPoly r(gens);
        for (int t = 0; t < 3; ++t)
            r += pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)] * Rational(c(rng));
        return r;
    };
    const std::size_t k = type.size();
    TypedMatrix<SP> a(type, SP(SuperPoly(gens), h));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            bool par = (type[i] + type[j]) & 1;
            SP e = SP::monomial(pick(par ? odd : even), ze(rng), 0, h);
            if (i == j)
                e += SP::monomial(SuperPoly(gens, 1), 0, 1, h) + SP::constant(SuperPoly(gens, c(rng)), h);
            a(i, j) = e;
        }
    return a;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t k)
{
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i)
        s[i] = i;
    std::shuffle(s.begin(), s.end(), rng);
    return s;
}

inline std::vector<int> random_mixed_type(std::mt19937_64& rng, std::size_t k)
{
    std::vector<int> t(k);
    do {
        for (auto& v : t)
            v = static_cast<int>(rng() & 1);
    } while (k > 1 && std::count(t.begin(), t.end(), 0) % static_cast<long>(k) == 0);
    return t;
}

/// Noncommutative Manin matrix: the oscillator image of the super L-matrix with a random even character.
inline TypedMatrix<WP> random_weyl_manin(std::mt19937_64& rng, std::size_t k, Horizon h, std::string& label)
{
    std::uniform_int_distribution<int> c(-4, 4);
    int counts[4] = {0, 0, 0, 0};
    do {
        for (auto& v : counts)
            v = 0;
        for (std::size_t i = 0; i < k; ++i)
            ++counts[rng() % 4];
    } while (counts[0] + counts[2] == 0 || counts[1] + counts[3] == 0);
    DualityScenario sc;
    sc.p = counts[0];
    sc.q = counts[1];
    sc.m = counts[2];
    sc.n = counts[3];
    sc.d = 1 + static_cast<int>(rng() % 2);
    sc.xi = sc.d == 2 && (rng() & 1) ? std::vector<int>{2} : std::vector<int>(sc.d, 1);
    for (std::size_t a = 0; a < sc.xi.size(); ++a)
        sc.w.push_back(fraction(2 * static_cast<long>(a) + 1 + c(rng) * 10, 3));
    sc.gamma.clear();
    for (int b : {sc.p, sc.q, sc.m, sc.n})
        if (b)
            sc.gamma.push_back(b);
    for (std::size_t i = 0; i < sc.gamma.size(); ++i)
        sc.z.push_back(Rational(static_cast<long>(i)));
    sc.zmin = h.z;
    sc.dmin = h.d;
    DualityMaps maps(sc);
    GlShape sh = sc.shape();
    Character mu;
    for (int i = 1; i <= sh.size(); ++i)
        for (int j = 1; j <= sh.size(); ++j)
            if (sh.odd(i) == sh.odd(j))
                if (int v = c(rng))
                    mu[sh.index(i, j)] = Rational(v);
    label = "gl(" + std::to_string(sc.p) + "," + std::to_string(sc.q) + "|" + std::to_string(sc.m) + "," +
            std::to_string(sc.n) + ") d=" + std::to_string(sc.d);
    return build_Ls(sh, mu, sc.s_sites(), maps.s_image(), WeylElement(maps.weyl()), h);
}

template <class T>
void check_structure(const TypedMatrix<T>& a, std::mt19937_64& rng, const std::string& label, PropTally& manin,
                     PropTally& lower, PropTally& upper, PropTally& perm, PropTally& sub)
{
    manin.record(is_manin(a), label);
    T ber = berezinian(a);
    for (std::size_t k = 1; k < a.size(); ++k) {
        auto [w, s] = schur_factor_lower(a, k);
        lower.record(agree(w * s, ber), label + " split " + std::to_string(k));
        auto [z, s2] = schur_factor_upper(a, k);
        upper.record(agree(z * s2, ber), label + " split " + std::to_string(k));
    }
    auto sigma = random_permutation(rng, a.size());
    perm.record(agree(berezinian(permute(a, sigma)), ber), label);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng() & 1)
            idx.push_back(i);
    if (!idx.empty())
        sub.record(is_manin(a.sub(idx)), label);
}

} // namespace detail

/// Randomized checks of the factorization, permutation and specialization properties of the Berezinian.
inline json berezinian_suite(std::uint64_t seed, int trials)
{
    std::mt19937_64 rng(seed);
    const Horizon h{-3, -3}, hs{-8, -8};
    auto gens = fock_generators(WeylProfile{1, 0, 0, 2, 2});
    PropTally manin, lower, upper, perm, sub, even_cdet, odd_det, jordan;
    for (int t = 0; t < trials; ++t) {
        const std::size_t k = 2 + static_cast<std::size_t>(rng() % 3);
        std::string label = "trial " + std::to_string(t);
        if (t % 2 == 0) {
            auto type = detail::random_mixed_type(rng, k);
            auto a = detail::random_super_matrix(rng, gens, type, h);
            detail::check_structure(a, rng, label + " supercommutative", manin, lower, upper, perm, sub);
        } else {
            std::string what;
            auto a = detail::random_weyl_manin(rng, k, h, what);
            detail::check_structure(a, rng, label + " " + what, manin, lower, upper, perm, sub);
        }
        // Specializations: type 0^k gives cdet, type 1^k with commuting entries gives 1/det.
        auto e = detail::random_super_matrix(rng, gens, std::vector<int>(k, 0), hs);
        even_cdet.record(agree(berezinian(e), cdet(e)), label);
        auto o = detail::random_super_matrix(rng, gens, std::vector<int>(k, 1), hs);
        odd_det.record(agree(berezinian(o) * cdet(o), one_like(cdet(o))), label);
        // Jordan inverse over Q and over Laurent series in z.
        std::uniform_int_distribution<long> lam(-9, 9);
        long lv = 0;
        while (lv == 0)
            lv = lam(rng);
        Rational l = fraction(lv, 1 + static_cast<long>(rng() % 4));
        TypedMatrix<Rational> jm(std::vector<int>(k, 0), Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            jm(i, i) = l;
            if (i + 1 < k)
                jm(i, i + 1) = -1;
        }
        auto inv = matrix_inverse(jm);
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                ok = ok && inv(i, j) == (j >= i ? rational_pow(l, -static_cast<long>(j - i) - 1) : Rational(0));
        jordan.record(ok, label + " lambda " + l.get_str());
        using RP = Psdo<Rational, true>;
        TypedMatrix<RP> js(std::vector<int>(k, 0), RP(Rational(0), hs));
        for (std::size_t i = 0; i < k; ++i) {
            js(i, i) = RP::monomial(Rational(1), 1, 0, hs) - RP::constant(l, hs);
            if (i + 1 < k)
                js(i, i + 1) = RP::constant(Rational(-1), hs);
        }
        auto sinv = matrix_inverse(js, Grading::z);
        bool sok = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                RP expect = j >= i ? pole_expand<Rational, true>(Rational(0), l, static_cast<int>(j - i) + 1, hs)
                                   : RP(Rational(0), hs);
                sok = sok && agree(sinv(i, j), expect);
            }
        jordan.record(sok, label + " series lambda = z - " + l.get_str());
    }
    json j;
    j["seed"] = seed;
    j["trials"] = trials;
    j["manin_inputs"] = manin.to_json();
    j["lower_factorization"] = lower.to_json();
    j["upper_factorization"] = upper.to_json();
    j["permutation_invariance"] = perm.to_json();
    j["standard_submatrix_manin"] = sub.to_json();
    j["even_type_cdet"] = even_cdet.to_json();
    j["odd_type_inverse_det"] = odd_det.to_json();
    j["jordan_inverse"] = jordan.to_json();
    bool pass = true;
    for (const auto* t : {&manin, &lower, &upper, &perm, &sub, &even_cdet, &odd_det, &jordan})
        pass = pass && t->pass == t->total;
    j["pass"] = pass;
    return j;
}

} // namespace gaudin

namespace gaudin {

// ---------------------------------------------------------------------------
// Orchestration.

struct RunOptions {
    std::string command;
    std::vector<std::string> suites;
    int jobs = 1;
    bool timing = false;
};

struct RunResult {
    json report;
    bool pass = false;
    bool exhausted = false;
};

inline bool needs_scenario(const std::string& suite) { return suite != "berezinian"; }

/// Runs the selected suites, possibly concurrently, and merges their sections in a fixed order.
inline RunResult run_suites(const GaudinConfig& cfg, const RunOptions& opt)
{
    std::vector<std::string> names;
    for (const auto& s : known_suites())
        if (std::find(opt.suites.begin(), opt.suites.end(), s) != opt.suites.end())
            names.push_back(s);
    for (const auto& s : names)
        if (needs_scenario(s) && !cfg.has_scenario)
            throw ConfigError("suite " + s + " needs a scenario config");
    auto body = [&cfg](const std::string& s) -> json {
        const auto& sc = cfg.scenario;
        if (s == "duality")
            return duality_suite(sc);
        if (s == "classical")
            return classical_suite(sc);
        if (s == "homs")
            return homs_suite(sc);
        if (s == "commute")
            return commutativity_suite(sc);
        if (s == "spectrum")
            return spectrum_suite(sc, cfg.seed, cfg.spaces);
        return berezinian_suite(cfg.seed, cfg.trials);
    };
    struct Section {
        json body;
        bool exhausted = false;
        double seconds = 0;
    };
    auto guarded = [&body](const std::string& s) {
        Section out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            out.body = body(s);
        } catch (const PrecisionExhausted& e) {
            out.body = {{"pass", false}, {"precision_exhausted", e.what()}};
            out.exhausted = true;
        } catch (const std::exception& e) {
            out.body = {{"pass", false}, {"error", e.what()}};
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    };
    std::vector<Section> sections(names.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
    for (std::size_t start = 0; start < names.size(); start += jobs) {
        std::vector<std::future<Section>> batch;
        for (std::size_t i = start; i < std::min(names.size(), start + jobs); ++i)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, guarded, names[i]));
        for (std::size_t i = 0; i < batch.size(); ++i)
            sections[start + i] = batch[i].get();
    }
    RunResult r;
    r.pass = true;
    json& j = r.report;
    j["command"] = opt.command;
    if (cfg.has_scenario)
        j["scenario"] = scenario_json(cfg.scenario);
    j["options"] = {{"seed", cfg.seed}, {"trials", cfg.trials}, {"spaces", cfg.spaces}};
    json checks = json::object();
    json timing = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
        checks[names[i]] = sections[i].body;
        r.pass = r.pass && sections[i].body["pass"].get<bool>();
        r.exhausted = r.exhausted || sections[i].exhausted;
        timing[names[i]] = sections[i].seconds;
    }
    j["checks"] = checks;
    j["pass"] = r.pass;
    j["precision_exhausted"] = r.exhausted;
    if (opt.timing)
        j["timing_seconds"] = timing;
    return r;
}

/// First witness found anywhere in a section, for the human summary.
inline const json* first_witness(const json& j)
{
    if (j.is_object()) {
        if (j.contains("witness"))
            return &j["witness"];
        for (const auto& [k, v] : j.items())
            if (const json* w = first_witness(v))
                return w;
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (const json* w = first_witness(v))
                return w;
    }
    return nullptr;
}

inline std::string summary(const RunResult& r)
{
    std::string out;
    const auto& rep = r.report;
    if (rep.contains("scenario"))
        out += "scenario " + rep["scenario"]["name"].get<std::string>() + "\n";
    for (const auto& [name, sec] : rep["checks"].items()) {
        std::string line = "  " + name + std::string(name.size() < 12 ? 12 - name.size() : 1, ' ') +
                           (sec["pass"].get<bool>() ? "pass" : "FAIL");
        if (sec.contains("vacuous"))
            line += " (no weight space in range)";
        if (!sec["pass"].get<bool>()) {
            if (sec.contains("precision_exhausted"))
                line += "  precision exhausted: " + sec["precision_exhausted"].get<std::string>();
            else if (sec.contains("error"))
                line += "  " + sec["error"].get<std::string>();
            else if (const json* w = first_witness(sec))
                line += "  witness " + w->dump();
        }
        out += line + "\n";
    }
    out += std::string("overall ") + (r.pass ? "pass" : "FAIL") + "\n";
    return out;
}

} // namespace gaudin
