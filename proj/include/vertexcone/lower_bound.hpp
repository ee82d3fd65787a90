#pragma once

// Unit-fraction instances whose full generator g sits just below the
// Sylvester reciprocals 1/S_i. For such instances K g has exactly one
// packing into K bins for K <= S_d - 2, which forces Dist = K in the lifted
// cone.

#include "vertexcone/cone_group.hpp"
#include "vertexcone/level_shift.hpp"

#include <functional>
#include <mutex>
#include <thread>

namespace vcone {

struct Premise {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct SylvesterInstance {
    std::int64_t d = 0;
    Rational epsilon;
    std::vector<BigInt> a;
    std::vector<BigInt> m; // window numerators: m_i / a_i sits in the i-th window
    GroupElement g;
    BigInt det;
    bool window_last = true;
    std::vector<Premise> premises;

    DiagonalBasis basis() const { return DiagonalBasis(a); }

    bool premises_hold() const {
        return std::all_of(premises.begin(), premises.end(), [](const Premise& p) { return p.holds; });
    }

    Instance instance(Point multiplicities = {}, std::string name = {}) const {
        std::vector<Rational> sizes;
        for (const auto& v : a)
            sizes.emplace_back(BigInt(1), v);
        return Instance(std::move(sizes), std::move(multiplicities), std::move(name));
    }
};

/// 1/((S_d - 1)^2 + 1).
inline Rational default_epsilon(std::int64_t d) {
    BigInt s = sylvester(d) - 1;
    return Rational(BigInt(1), s * s + 1);
}

namespace detail {

inline bool in_window(const Rational& x, const BigInt& S, const Rational& eps) {
    return (Rational(1) - eps) * Rational(BigInt(1), S) <= x && x < Rational(BigInt(1), S);
}

inline BigInt product(const std::vector<BigInt>& v, std::size_t from, std::size_t to) {
    BigInt p = 1;
    for (std::size_t j = from; j < to; ++j)
        p *= v[j];
    return p;
}

} // namespace detail

struct LongRunReport {
    bool windows = false;            // (1-eps)/S_i <= x_i < 1/S_i for i < d
    bool slack = false;              // x_0, x_d < 1/(S_d - 2)
    std::vector<Rational> coords;    // x_0 = 1 - sum x_i, then x_i = g_i / a_i
    std::vector<bool> window_holds;  // per i < d
};

inline LongRunReport long_run_report(const GroupElement& g, const std::vector<BigInt>& a, const Rational& eps) {
    const std::size_t d = a.size();
    if (g.residues.size() != d)
        fail(ErrorKind::InvalidInput, "generator and denominators differ in length");
    auto S = sylvester_prefix(static_cast<std::int64_t>(d));
    LongRunReport r;
    Rational total;
    std::vector<Rational> x;
    for (std::size_t i = 0; i < d; ++i) {
        x.emplace_back(g.residues[i], a[i]);
        total += x.back();
    }
    r.coords.push_back(Rational(1) - total);
    r.coords.insert(r.coords.end(), x.begin(), x.end());
    r.windows = true;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        r.window_holds.push_back(detail::in_window(x[i], S[i], eps));
        r.windows = r.windows && r.window_holds.back();
    }
    if (d >= 3) {
        Rational bound(BigInt(1), S[d - 1] - 2);
        r.slack = r.coords.front() < bound && x.back() < bound && r.coords.front().sign() >= 0;
    }
    return r;
}

inline bool check_long_run(const GroupElement& g, const std::vector<BigInt>& a, const Rational& eps) {
    return long_run_report(g, a, eps).windows;
}

struct OrbitWitness {
    std::int64_t K = 0;
    GroupElement element;
    Rational size;
};

struct UniquenessReport {
    bool unique = true;
    std::int64_t K_max = 0;
    std::vector<OrbitWitness> witness;
};

/// [K g] is no configuration (Size > 1) for K = 2..K_max.
inline UniquenessReport check_uniqueness(const DiagonalBasis& basis, const GroupElement& g, std::int64_t K_max) {
    if (size_of(g, basis) > Rational(1))
        fail(ErrorKind::PreconditionViolated, "g is not a configuration");
    UniquenessReport r;
    r.K_max = K_max;
    for (std::int64_t K = 2; K <= K_max; ++K) {
        GroupElement e;
        for (std::size_t i = 0; i < basis.dimension(); ++i)
            e.residues.push_back(mod(g.residues[i] * K, basis.denominators()[i]));
        Rational s = size_of(e, basis);
        r.witness.push_back({K, e, s});
        if (s <= Rational(1))
            r.unique = false;
    }
    return r;
}

inline UniquenessReport check_uniqueness(const SylvesterInstance& inst, std::optional<std::int64_t> K_max = {}) {
    std::int64_t k = K_max ? *K_max : to_int64(sylvester(inst.d) - 2);
    return check_uniqueness(inst.basis(), inst.g, k);
}

/// Re-derives the premises from a, m, g and eps. The per-index conditions
/// and successor congruences of the construction are included only with
/// `construction` set; searched instances fix a through g alone.
inline std::vector<Premise> verify_premises(const SylvesterInstance& inst, bool construction = true) {
    std::vector<Premise> out;
    const std::size_t d = inst.a.size();
    auto S = sylvester_prefix(static_cast<std::int64_t>(d));
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };
    BigInt sd1 = S[d - 1] - 1;
    add("epsilon-below-bound", inst.epsilon.sign() > 0 && inst.epsilon < Rational(BigInt(1), sd1 * sd1),
        inst.epsilon.str() + " < 1/" + BigInt(sd1 * sd1).get_str());
    add("pairwise-coprime", pairwise_coprime(inst.a));
    for (std::size_t i = 0; i < d && construction; ++i) {
        const std::string k = std::to_string(i + 1);
        const bool windowed = i + 1 < d || inst.window_last;
        if (!windowed)
            continue;
        add("a" + k + "-not-multiple-of-S" + k, mod(inst.a[i], S[i]) != 0);
        add("a" + k + "-above-S" + k + "/eps", Rational(inst.a[i]) > Rational(S[i]) / inst.epsilon);
        add("m" + k + "-coprime-a" + k, gcd(inst.m[i], inst.a[i]) == 1);
        add("window-" + k, detail::in_window(Rational(inst.m[i], inst.a[i]), S[i], inst.epsilon),
            Rational(inst.m[i], inst.a[i]).str());
    }
    for (std::size_t i = 1; i < d && construction; ++i) {
        // a_{i+1} = (a_1 ... a_{i-1})^{-1} (-m_i)^{-1} (mod a_i), 1-based.
        const BigInt& ai = inst.a[i - 1];
        BigInt pre = detail::product(inst.a, 0, i - 1);
        bool ok = false;
        try {
            BigInt want = mod(mod_inverse(pre, ai).value * mod_inverse(-inst.m[i - 1], ai).value, ai);
            ok = mod(inst.a[i], ai) == want;
        } catch (const Error&) {
            ok = false;
        }
        add("a" + std::to_string(i + 1) + "-inverse-congruence", ok);
        for (std::size_t j = 0; j + 1 < i; ++j)
            add("a" + std::to_string(i + 1) + "-one-mod-a" + std::to_string(j + 1), mod(inst.a[i], inst.a[j]) == 1);
    }
    auto basis = DiagonalBasis(inst.a);
    bool gen_ok = basis.coprime() && full_generator(basis) == inst.g;
    add("generator-by-congruence", gen_ok, inst.g.str());
    if (construction) {
        bool claim1 = true;
        for (std::size_t i = 0; i + 1 < d; ++i)
            claim1 = claim1 && inst.g.residues[i] == inst.m[i];
        add("generator-equals-windows", claim1);
    }
    Rational size = size_of(inst.g, basis);
    add("generator-size", size == Rational(inst.det - 1, inst.det), size.str());
    add("generator-is-configuration", size <= Rational(1));
    add("long-run", check_long_run(inst.g, inst.a, inst.epsilon));
    return out;
}

/// Smallest-admissible construction: a_1 is the least integer > S_1/eps,
/// not a multiple of S_1, with gcd(floor(a_1/S_1), a_1) = 1; each later
/// a_{i+1} is the least integer > S_{i+1}/eps in the residue class fixed by
/// the two congruences that also has an admissible window
/// m_{i+1} = floor(a_{i+1}/S_{i+1}). With window_last false the last
/// window is not enforced.
inline SylvesterInstance construct_sylvester_instance(std::int64_t d, const Rational& eps, bool window_last = true,
                                                      std::uint64_t step_cap = 10'000'000) {
    if (d < 2)
        fail(ErrorKind::InvalidInput, "construction needs d >= 2");
    auto S = sylvester_prefix(d);
    BigInt sd1 = S.back() - 1;
    if (eps.sign() <= 0 || eps >= Rational(BigInt(1), sd1 * sd1))
        fail(ErrorKind::InvalidInput, "epsilon must lie in (0, 1/(S_d-1)^2)");
    SylvesterInstance out;
    out.d = d;
    out.epsilon = eps;
    out.window_last = window_last;
    auto admissible = [&](const BigInt& x, std::size_t i, bool windowed) {
        if (mod(x, S[i]) == 0)
            return false;
        BigInt m = floor_div(x, S[i]);
        if (gcd(m, x) != 1)
            return false;
        return !windowed || detail::in_window(Rational(m, x), S[i], eps);
    };
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
        const bool windowed = i + 1 < static_cast<std::size_t>(d) || window_last;
        BigInt lo = (Rational(S[i]) / eps).floor() + 1;
        BigInt x, step;
        if (i == 0) {
            x = lo;
            step = 1;
        } else {
            const BigInt& prev = out.a[i - 1];
            BigInt pre = detail::product(out.a, 0, i - 1);
            std::vector<Residue> conds{
                Residue(mod_inverse(pre, prev).value * mod_inverse(-out.m[i - 1], prev).value, prev)};
            for (std::size_t j = 0; j + 1 < i; ++j)
                conds.emplace_back(BigInt(1), out.a[j]);
            Residue base = crt_solve(conds);
            step = base.modulus;
            x = base.value;
            if (x < lo)
                x += ((lo - x + step - 1) / step) * step;
        }
        std::uint64_t tries = 0;
        while (!admissible(x, i, windowed)) {
            if (++tries > step_cap)
                fail(ErrorKind::ResourceLimit,
                     "no admissible a_" + std::to_string(i + 1) + " within " + std::to_string(step_cap) + " candidates");
            x += step;
        }
        out.a.push_back(x);
        out.m.push_back(floor_div(x, S[i]));
    }
    out.det = detail::product(out.a, 0, out.a.size());
    out.g = full_generator(out.basis());
    out.premises = verify_premises(out);
    return out;
}

/// Jump schedule of g's barycentric coordinates up to K = S_d - 2:
/// components 0 and d never wrap, component i < d wraps exactly at
/// K = 1 + j S_i.
inline bool check_jump_schedule(const SylvesterInstance& inst) {
    auto x = long_run_report(inst.g, inst.a, inst.epsilon).coords;
    const std::size_t d = inst.a.size();
    auto S = sylvester_prefix(static_cast<std::int64_t>(d));
    const std::int64_t K_max = to_int64(S.back() - 2);
    for (std::int64_t K = 2; K <= K_max; ++K) {
        auto J = jumps_at(x, K);
        std::vector<std::size_t> want;
        for (std::size_t i = 1; i < d; ++i)
            if (mod(BigInt(static_cast<long>(K - 1)), S[i - 1]) == 0)
                want.push_back(i);
        if (J != want)
            return false;
    }
    return true;
}

struct DistCertificate {
    std::int64_t K = 0;
    std::int64_t dist = 0;
    /// The lifted target (K, K g): a count row followed by K g.
    std::vector<BigInt> lifted_target;
    Rational free_space; // K / det
    std::vector<Premise> premises;
};

/// Dist((K, K g)) = K in the lifted cone: K copies of (1, g) are the only
/// representation once g is a configuration and [2g], ..., [Kg] are not.
inline DistCertificate dist_certificate(const SylvesterInstance& inst, std::int64_t K) {
    if (inst.d < 3)
        fail(ErrorKind::NoCertificate, "certificates need d >= 3");
    if (K < 1)
        fail(ErrorKind::InvalidInput, "K must be >= 1");
    DistCertificate c;
    c.K = K;
    c.premises = verify_premises(inst, false);
    auto uniq = check_uniqueness(inst, K);
    c.premises.push_back({"unique-up-to-" + std::to_string(K), uniq.unique, {}});
    const BigInt bound = sylvester(inst.d) - 2;
    c.premises.push_back({"K-at-most-S_d-2", BigInt(static_cast<long>(K)) <= bound, bound.get_str()});
    for (const auto& p : c.premises)
        if (!p.holds)
            fail(ErrorKind::NoCertificate, "premise " + p.name + " fails");
    c.dist = K;
    c.lifted_target.emplace_back(static_cast<long>(K));
    for (const auto& gi : inst.g.residues)
        c.lifted_target.push_back(gi * K);
    c.free_space = Rational(BigInt(static_cast<long>(K)), inst.det);
    return c;
}

namespace detail {

inline std::int64_t inverse64(std::int64_t x, std::int64_t m) {
    std::int64_t old_r = ((x % m) + m) % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1)
        return -1;
    return ((old_s % m) + m) % m;
}

inline bool window_possible(std::int64_t a, std::int64_t S, const Rational& eps) {
    // Some integer m with (1-eps) a / S <= m < a / S.
    BigInt m = (Rational(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(S))) * (Rational(1) - eps)).ceil();
    return Rational(m) < Rational(static_cast<long>(a), static_cast<long>(S));
}

} // namespace detail

/// Pairwise coprime a (all a_i >= 2, det <= det_bound) of least determinant,
/// ties broken lexicographically, whose full generator is a configuration
/// with g_i / a_i in the i-th window for i < d.
inline std::optional<SylvesterInstance> search_min_instance(std::int64_t d, const Rational& eps,
                                                            std::int64_t det_bound, const Limits& limits = {}) {
    if (d < 2)
        fail(ErrorKind::InvalidInput, "search needs d >= 2");
    if (d > 8)
        fail(ErrorKind::InvalidInput, "search supports d <= 8");
    auto Sbig = sylvester_prefix(d);
    std::vector<std::int64_t> S;
    for (const auto& s : Sbig)
        S.push_back(fits_int64(s) ? s.get_si() : INT64_MAX);
    const auto du = static_cast<std::size_t>(d);

    struct Best {
        std::int64_t det = INT64_MAX;
        std::vector<std::int64_t> a;
    };
    auto better = [](std::int64_t det, const std::vector<std::int64_t>& a, const Best& b) {
        return det < b.det || (det == b.det && a < b.a);
    };

    auto test_tuple = [&](const std::vector<std::int64_t>& a, std::int64_t det) {
        // g_i / a_i, exactly, in the windows; then sum g_i / a_i <= 1.
        Rational size;
        for (std::size_t i = 0; i < du; ++i) {
            std::int64_t R = det / a[i];
            std::int64_t inv = detail::inverse64(R % a[i], a[i]);
            std::int64_t gi = (a[i] - inv) % a[i];
            Rational x(static_cast<long>(gi), static_cast<long>(a[i]));
            if (i + 1 < du && !detail::in_window(x, Sbig[i], eps))
                return false;
            size += x;
        }
        return size <= Rational(1);
    };

    // Candidates for position i: window-feasible values for i < d-1.
    std::vector<std::vector<std::int64_t>> cand(du);
    for (std::size_t i = 0; i < du; ++i)
        for (std::int64_t x = 2; x <= det_bound; ++x)
            if (i + 1 == du || detail::window_possible(x, S[i], eps))
                cand[i].push_back(x);

    auto search_from = [&](std::int64_t a1, Best& best, std::uint64_t& nodes) {
        std::vector<std::int64_t> a{a1};
        auto rec = [&](auto&& self, std::int64_t det) -> void {
            if (++nodes > limits.node_cap)
                fail(ErrorKind::ResourceLimit, "instance search exceeded node cap");
            const std::size_t i = a.size();
            if (i == du) {
                if (better(det, a, best) && test_tuple(a, det)) {
                    best.det = det;
                    best.a = a;
                }
                return;
            }
            // Remaining positions each need a value >= 2.
            const std::int64_t rest = std::int64_t{1} << (du - i - 1);
            for (auto x : cand[i]) {
                if (det > det_bound / x / rest || det * x > best.det)
                    break;
                bool coprime = true;
                for (auto y : a)
                    coprime = coprime && std::gcd(x, y) == 1;
                if (!coprime)
                    continue;
                a.push_back(x);
                self(self, det * x);
                a.pop_back();
            }
        };
        rec(rec, a1);
    };

    const unsigned workers = std::max(1u, limits.threads);
    std::vector<Best> bests(workers);
    std::vector<std::uint64_t> nodes(workers, 0);
    auto work = [&](unsigned w) {
        for (std::size_t k = w; k < cand[0].size(); k += workers) {
            const std::int64_t a1 = cand[0][k];
            if (a1 > det_bound >> (du - 1))
                break;
            search_from(a1, bests[w], nodes[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        work(w);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    Best best;
    for (const auto& b : bests)
        if (!b.a.empty() && better(b.det, b.a, best))
            best = b;
    if (best.a.empty())
        return std::nullopt;

    SylvesterInstance out;
    out.d = d;
    out.epsilon = eps;
    out.window_last = false;
    for (auto x : best.a)
        out.a.emplace_back(static_cast<long>(x));
    out.det = BigInt(static_cast<long>(best.det));
    out.g = full_generator(out.basis());
    out.m = out.g.residues;
    out.premises = verify_premises(out, false);
    return out;
}

} // namespace vcone
