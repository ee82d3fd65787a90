#pragma once

// Level and jump machinery on barycentric coordinates, the weight shift
// that moves K copies of a non-vertex configuration onto the vertices of
// its simplex, support reduction, and the structure decomposition built
// from both.

#include "vertexcone/hull.hpp"
#include "vertexcone/weights.hpp"

#include <set>

namespace vcone {

namespace detail {

inline void check_barycentric(const std::vector<Rational>& x) {
    if (x.empty())
        fail(ErrorKind::InvalidInput, "empty coordinate vector");
    Rational s;
    for (const auto& c : x) {
        if (c.sign() < 0 || c > Rational(1))
            fail(ErrorKind::InvalidInput, "coordinate " + c.str() + " outside [0,1]");
        s += c;
    }
    if (s != Rational(1))
        fail(ErrorKind::InvalidInput, "coordinates sum to " + s.str() + ", not 1");
}

} // namespace detail

/// Level(Kx) = sum_i {K x_i}.
inline std::int64_t level(const std::vector<Rational>& x, std::int64_t K) {
    detail::check_barycentric(x);
    if (K < 1)
        fail(ErrorKind::InvalidInput, "level needs K >= 1");
    Rational s;
    for (const auto& c : x)
        s += (c * Rational(static_cast<long>(K))).frac();
    return to_int64(s.num());
}

inline std::int64_t level(const SimplexCoords& x, std::int64_t K) { return level(x.coords, K); }

/// Indices whose fractional part wraps between K-1 and K:
/// floor(K x_i) > floor((K-1) x_i).
inline std::vector<std::size_t> jumps_at(const std::vector<Rational>& x, std::int64_t K) {
    detail::check_barycentric(x);
    if (K < 2)
        fail(ErrorKind::InvalidInput, "jumps need K >= 2");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if ((x[i] * Rational(static_cast<long>(K))).floor() > (x[i] * Rational(static_cast<long>(K - 1))).floor())
            out.push_back(i);
    return out;
}

/// Ceiling form ceil(K x_i) > ceil((K-1) x_i). It misses the wrap when
/// (K-1) x_i is a positive integer, e.g. x_i = 1/2 at K = 2.
inline std::vector<std::size_t> jumps_at_ceiling(const std::vector<Rational>& x, std::int64_t K) {
    detail::check_barycentric(x);
    if (K < 2)
        fail(ErrorKind::InvalidInput, "jumps need K >= 2");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if ((x[i] * Rational(static_cast<long>(K))).ceil() > (x[i] * Rational(static_cast<long>(K - 1))).ceil())
            out.push_back(i);
    return out;
}

enum class JumpRule { Wrap, Ceiling };

struct RecurrenceCheck {
    bool holds = true;
    std::int64_t first_failure = 0; // K of the first violation, 0 if none
};

/// Level(Kx) = Level((K-1)x) + 1 - J for 2 <= K <= K_max.
inline RecurrenceCheck check_level_recurrence(const std::vector<Rational>& x, std::int64_t K_max,
                                              JumpRule rule = JumpRule::Wrap) {
    RecurrenceCheck out;
    std::int64_t prev = level(x, 1);
    for (std::int64_t K = 2; K <= K_max; ++K) {
        std::int64_t cur = level(x, K);
        auto J = static_cast<std::int64_t>(rule == JumpRule::Wrap ? jumps_at(x, K).size()
                                                                 : jumps_at_ceiling(x, K).size());
        if (cur != prev + 1 - J) {
            out.holds = false;
            out.first_failure = K;
            return out;
        }
        prev = cur;
    }
    return out;
}

inline bool verify_level_recurrence(const std::vector<Rational>& x, std::int64_t K_max) {
    return check_level_recurrence(x, K_max).holds;
}

struct LevelProfile {
    std::vector<Rational> coords;
    std::int64_t K = 1;
    std::int64_t level = 0;
    std::vector<bool> jumps;
};

inline LevelProfile level_profile(const std::vector<Rational>& x, std::int64_t K) {
    LevelProfile p{x, K, level(x, K), std::vector<bool>(x.size(), false)};
    if (K >= 2)
        for (auto i : jumps_at(x, K))
            p.jumps[i] = true;
    return p;
}

/// Common denominator of the coordinates; at this K the level is 0.
inline std::int64_t default_shift_cap(const std::vector<Rational>& x) {
    BigInt l = 1;
    for (const auto& c : x)
        l = lcm(l, c.den());
    return std::max<std::int64_t>(2, to_int64(l));
}

/// Smallest K >= 2 with Level(Kx) <= 1.
inline std::int64_t find_shift_multiplicity(const std::vector<Rational>& x, std::int64_t cap) {
    detail::check_barycentric(x);
    if (cap < 2)
        fail(ErrorKind::InvalidInput, "shift cap must be >= 2");
    for (std::int64_t K = 2; K <= cap; ++K)
        if (level(x, K) <= 1)
            return K;
    fail(ErrorKind::ResourceLimit, "no K in [2, " + std::to_string(cap) + "] with level <= 1");
}

inline std::int64_t find_shift_multiplicity(const std::vector<Rational>& x) {
    return find_shift_multiplicity(x, default_shift_cap(x));
}

/// K gamma = delta + sum Lambda_i B_i.
struct MultipleDecomposition {
    Configuration delta;
    std::vector<std::int64_t> Lambda;
    std::int64_t level = 0;
    SimplexCoords coords;
};

inline MultipleDecomposition decompose_multiple(const Configuration& gamma, std::int64_t K,
                                                const std::vector<Configuration>& basis) {
    if (K < 1)
        fail(ErrorKind::InvalidInput, "multiplicity must be >= 1");
    MultipleDecomposition out;
    out.coords = barycentric(gamma, basis);
    out.level = level(out.coords, K);
    if (out.level > 1)
        fail(ErrorKind::PreconditionViolated,
             "level " + std::to_string(out.level) + " > 1 at K = " + std::to_string(K));
    const std::size_t d = gamma.size();
    out.delta = scaled(gamma, K);
    std::vector<Rational> frac_sum(d);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Rational kx = out.coords.coords[j] * Rational(static_cast<long>(K));
        out.Lambda.push_back(to_int64(kx.floor()));
        Rational f = kx.frac();
        for (std::size_t i = 0; i < d; ++i) {
            out.delta[i] = narrow(static_cast<i128>(out.delta[i]) -
                                      static_cast<i128>(out.Lambda.back()) * basis[j][i], "delta");
            frac_sum[i] += f * Rational(static_cast<long>(basis[j][i]));
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        if (frac_sum[i] != Rational(static_cast<long>(out.delta[i])))
            fail(ErrorKind::PreconditionViolated, "fractional remainder is not integral");
    return out;
}

struct ShiftResult {
    Weights weights;
    std::int64_t K = 0;
    MultipleDecomposition decomposition;
};

/// Replaces K copies of gamma by delta plus the vertex multiples of its
/// simplex. Uses the given basis, or the first simplex of V_I containing
/// gamma.
inline ShiftResult shift_weight(const Weights& lambda, const Configuration& gamma, const VertexSet& v,
                                std::vector<Configuration> basis = {}) {
    if (v.contains(gamma))
        fail(ErrorKind::InvalidInput, to_string(gamma) + " is a vertex");
    const std::int64_t have = lambda.at(gamma);
    if (have == 0)
        fail(ErrorKind::InvalidInput, to_string(gamma) + " is not in the support");
    if (basis.empty())
        basis = containing_simplex(gamma, v);
    auto x = barycentric(gamma, basis);
    ShiftResult out;
    out.K = find_shift_multiplicity(x.coords);
    if (have < out.K)
        fail(ErrorKind::InsufficientWeight,
             "weight " + std::to_string(have) + " of " + to_string(gamma) + " is below K = " + std::to_string(out.K));
    out.decomposition = decompose_multiple(gamma, out.K, basis);
    out.weights = lambda;
    out.weights.add(gamma, -out.K);
    out.weights.add(out.decomposition.delta, 1);
    for (std::size_t j = 0; j < basis.size(); ++j)
        out.weights.add(basis[j], out.decomposition.Lambda[j]);
    return out;
}

struct SupportReduction {
    Weights weights;
    bool reduced = true;
    std::uint64_t exchanges = 0;
};

namespace detail {

inline std::uint64_t parity_class(const Point& p) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        c |= static_cast<std::uint64_t>(p[i] & 1) << i;
    return c;
}

// Midpoint exchange: for two support points p != q with p = q (mod 2),
// m = min(lambda_p, lambda_q) copies of each are replaced by 2m copies of
// the configuration (p+q)/2. The total weight is unchanged and sum lambda_p |p|^2 drops
// by m |p-q|^2 / 2, so the loop ends; once no two eligible points share a
// parity class there are at most 2^d of them.
template <class Eligible>
SupportReduction parity_reduce(Weights lambda, Eligible eligible, std::size_t bound, const Limits& limits) {
    SupportReduction out;
    const std::size_t d = lambda.dimension();
    Deadline deadline(limits);
    for (;;) {
        std::map<std::uint64_t, Configuration> seen;
        std::size_t count = 0;
        std::optional<std::pair<Configuration, Configuration>> pair;
        for (const auto& [p, w] : lambda.entries()) {
            if (!eligible(p))
                continue;
            ++count;
            auto [it, fresh] = seen.emplace(parity_class(p), p);
            if (!fresh && !pair)
                pair.emplace(it->second, p);
        }
        if (count <= bound || !pair)
            break;
        if (++out.exchanges > limits.node_cap || deadline.expired()) {
            out.reduced = false;
            break;
        }
        const auto& [p, q] = *pair;
        std::int64_t m = std::min(lambda.at(p), lambda.at(q));
        Configuration mid(d);
        for (std::size_t i = 0; i < d; ++i)
            mid[i] = (p[i] + q[i]) / 2;
        lambda.add(p, -m);
        lambda.add(q, -m);
        lambda.add(mid, 2 * m);
    }
    out.weights = std::move(lambda);
    return out;
}

} // namespace detail

/// Brings the non-vertex support down to at most 2^d, keeping the target
/// vector and the total weight.
inline SupportReduction support_reduce(const Weights& lambda, const VertexSet& v, const Limits& limits = {}) {
    const std::size_t bound = std::size_t{1} << lambda.dimension();
    return detail::parity_reduce(lambda, [&](const Configuration& p) { return !v.contains(p); }, bound, limits);
}

/// Shift data for one non-vertex configuration of a simplex block.
struct ShiftEntry {
    Configuration gamma;
    std::int64_t weight = 0;
    std::int64_t K = 0;
};

/// One simplex S = Conv(B_0 = 0, B_1, ..., B_d) of the decomposition and
/// the non-vertex weight it carries.
struct SimplexBlock {
    std::vector<Configuration> basis;
    std::vector<ShiftEntry> entries;
};

struct StructureReport {
    Weights weights;
    std::vector<SimplexBlock> blocks;
    std::int64_t initial_non_vertex_mass = 0;
    std::int64_t non_vertex_mass = 0; // an upper bound on Dist(b)
    std::size_t vertex_support = 0;
    std::size_t non_vertex_support = 0;
    std::uint64_t shifts = 0;
    std::uint64_t merges = 0;
    bool support_reduced = true;
};

namespace detail {

// Replaces m copies each of two non-vertex points p, q of a simplex by m
// copies of p + q when that sum still lies in the simplex; the non-vertex
// mass drops by at least m.
inline bool merge_pair(Weights& local, const std::vector<Configuration>& basis,
                       const std::set<Configuration>& basis_set) {
    std::vector<std::pair<Configuration, std::int64_t>> pts;
    for (const auto& [p, w] : local.entries())
        if (!basis_set.count(p))
            pts.emplace_back(p, w);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            std::int64_t m = i == j ? pts[i].second / 2 : std::min(pts[i].second, pts[j].second);
            if (m == 0)
                continue;
            Configuration sum = add(pts[i].first, pts[j].first);
            auto x = affine_coords(sum, basis);
            if (!x || std::any_of(x->begin(), x->end(), [](const Rational& c) { return c.sign() < 0; }))
                continue;
            local.add(pts[i].first, -m);
            local.add(pts[j].first, -m);
            local.add(sum, m);
            return true;
        }
    return false;
}

} // namespace detail

/// Decomposes b = sum lambda_p p such that, inside each simplex block,
/// every non-vertex gamma has lambda_gamma below its shift multiplicity.
/// The support is first reduced to 2^d points; each point fixes one
/// simplex of V_I through the origin, and shifting happens inside it, so
/// at most d 2^d vertices and 2^d * 2^d non-vertices are used. Once no
/// shift applies, pairs whose sum stays in the simplex are merged.
inline StructureReport structure_decompose(const Instance& inst, const VertexSet& v,
                                           std::optional<Weights> start = std::nullopt, const Limits& limits = {}) {
    const std::size_t d = inst.dimension();
    Weights lambda = start ? *start : unit_decomposition(inst);
    if (lambda.dimension() != d && !lambda.empty())
        fail(ErrorKind::InvalidInput, "start weights have wrong dimension");
    for (const auto& [p, w] : lambda.entries())
        if (!is_config(inst, p))
            fail(ErrorKind::InvalidInput, to_string(p) + " is not a configuration");
    Point have = lambda.empty() ? Point(d, 0) : lambda.target();
    if (have != inst.multiplicities())
        fail(ErrorKind::NoDecomposition, "start weights do not represent b");

    StructureReport report;
    report.initial_non_vertex_mass = lambda.non_vertex_mass(v);
    const std::size_t cap = std::size_t{1} << d;
    auto first = detail::parity_reduce(lambda, [](const Configuration&) { return true; }, cap, limits);
    report.support_reduced = first.reduced;

    Weights result(d);
    Deadline deadline(limits);
    for (const auto& [gamma, w0] : first.weights.entries()) {
        if (v.contains(gamma)) {
            result.add(gamma, w0);
            continue;
        }
        SimplexBlock block{containing_simplex(gamma, v, limits), {}};
        std::set<Configuration> basis_set(block.basis.begin(), block.basis.end());
        Weights local(d);
        local.add(gamma, w0);
        std::map<Configuration, std::int64_t> K_of;
        auto K_for = [&](const Configuration& p) {
            auto it = K_of.find(p);
            if (it == K_of.end())
                it = K_of.emplace(p, find_shift_multiplicity(barycentric(p, block.basis).coords)).first;
            return it->second;
        };
        for (;;) {
            deadline.check("structure_decompose");
            const Configuration* pick = nullptr;
            std::int64_t best = 0;
            for (const auto& [p, w] : local.entries())
                if (!basis_set.count(p) && w >= K_for(p) && w > best) {
                    pick = &p;
                    best = w;
                }
            if (!pick) {
                if (!detail::merge_pair(local, block.basis, basis_set))
                    break;
                ++report.merges;
                continue;
            }
            auto shifted = shift_weight(local, *pick, v, block.basis);
            local = std::move(shifted.weights);
            ++report.shifts;
            auto red = detail::parity_reduce(
                std::move(local), [&](const Configuration& p) { return !basis_set.count(p); }, cap, limits);
            report.support_reduced = report.support_reduced && red.reduced;
            local = std::move(red.weights);
        }
        for (const auto& [p, w] : local.entries()) {
            result.add(p, w);
            if (!basis_set.count(p))
                block.entries.push_back({p, w, K_for(p)});
        }
        report.blocks.push_back(std::move(block));
    }
    if (result.target() != inst.multiplicities())
        fail(ErrorKind::NoDecomposition, "internal error: decomposition lost its target");
    report.non_vertex_mass = result.non_vertex_mass(v);
    report.vertex_support = result.vertex_support(v);
    report.non_vertex_support = result.non_vertex_support(v);
    report.weights = std::move(result);
    return report;
}

} // namespace vcone
