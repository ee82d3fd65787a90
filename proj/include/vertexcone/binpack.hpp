#pragma once

#include "vertexcone/cone_group.hpp"
#include "vertexcone/hull.hpp"
#include "vertexcone/lp.hpp"
#include "vertexcone/weights.hpp"

#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

namespace vcone {

struct Packing {
    Weights weights;
    std::int64_t bins = 0;
    /// ceil of the LP value; the optimum equals it or every smaller count
    /// was refuted by exhaustive search.
    std::int64_t lp_bound = 0;
    std::uint64_t nodes = 0;
};

namespace detail {

// First fit decreasing on the expanded item list.
inline std::vector<Configuration> first_fit_decreasing(const Instance& inst) {
    const std::size_t d = inst.dimension();
    const KnapsackRow& row = inst.row();
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row.weights[a] > row.weights[b]; });
    std::vector<Configuration> bins;
    std::vector<std::int64_t> load;
    for (auto i : order)
        for (std::int64_t c = 0; c < inst.multiplicities()[i]; ++c) {
            std::size_t k = 0;
            while (k < bins.size() && load[k] + row.weights[i] > row.capacity)
                ++k;
            if (k == bins.size()) {
                bins.emplace_back(d, 0);
                load.push_back(0);
            }
            ++bins[k][i];
            load[k] += row.weights[i];
        }
    return bins;
}

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto v : p)
            h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

class PackSearch {
public:
    PackSearch(const Instance& inst, const Limits& limits) : inst_(inst), row_(inst.row()), limits_(limits), deadline_(limits) {}

    std::optional<std::vector<Configuration>> pack(const Point& r, std::int64_t k) {
        if (is_zero(r))
            return std::vector<Configuration>{};
        if (k <= 0)
            return std::nullopt;
        if (++nodes_ > limits_.node_cap)
            fail(ErrorKind::ResourceLimit, "ILP search exceeded node cap " + std::to_string(limits_.node_cap));
        if ((nodes_ & 1023) == 0)
            deadline_.check("solve_ilp");
        if (row_.load(r) > static_cast<i128>(row_.capacity) * k)
            return std::nullopt;
        if (k == 1) {
            if (row_.fits(r))
                return std::vector<Configuration>{r};
            return std::nullopt;
        }
        auto it = refuted_.find(r);
        if (it != refuted_.end() && it->second >= k)
            return std::nullopt;
        if (k >= 3 && inst_.dimension() > 1) {
            auto lp = solve_lp(inst_.with_multiplicities(r), limits_);
            if (lp.value.ceil() > k) {
                refute(r, k);
                return std::nullopt;
            }
        }
        std::size_t first = 0;
        while (r[first] == 0)
            ++first;
        for (const auto& c : maximal_configs(r, first)) {
            auto rest = pack(sub(r, c), k - 1);
            if (rest) {
                rest->push_back(c);
                return rest;
            }
        }
        refute(r, k);
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    void refute(const Point& r, std::int64_t k) {
        auto& slot = refuted_[r];
        slot = std::max(slot, k);
    }

    // Configurations c <= r with c_first >= 1 to which no further item of r
    // fits, in lexicographically decreasing order.
    std::vector<Configuration> maximal_configs(const Point& r, std::size_t first) const {
        const std::size_t d = r.size();
        std::vector<Configuration> out;
        Configuration cur(d, 0);
        auto rec = [&](auto&& self, std::size_t i, std::int64_t room) -> void {
            if (i == d) {
                if (cur[first] == 0)
                    return;
                for (std::size_t j = 0; j < d; ++j)
                    if (cur[j] < r[j] && row_.weights[j] <= room)
                        return;
                out.push_back(cur);
                return;
            }
            std::int64_t most = std::min(r[i], room / row_.weights[i]);
            for (std::int64_t c = most; c >= 0; --c) {
                cur[i] = c;
                self(self, i + 1, room - c * row_.weights[i]);
            }
            cur[i] = 0;
        };
        rec(rec, 0, row_.capacity);
        return out;
    }

    const Instance& inst_;
    const KnapsackRow& row_;
    const Limits& limits_;
    Deadline deadline_;
    std::uint64_t nodes_ = 0;
    std::unordered_map<Point, std::int64_t, PointHash> refuted_;
};

} // namespace detail

/// Minimum number of bins. Counts k = ceil(LP), ceil(LP)+1, ... are tried in
/// turn; each failed count is refuted exhaustively (branching on maximal
/// configurations that hold the first remaining item type, pruned by the
/// volume and LP bounds), and first fit decreasing caps the search.
inline Packing solve_ilp(const Instance& inst, const Limits& limits = {}) {
    Packing out;
    out.weights = Weights(inst.dimension());
    const Point& b = inst.multiplicities();
    if (is_zero(b))
        return out;
    auto lp = solve_lp(inst, limits);
    out.lp_bound = to_int64(lp.value.ceil());
    auto ffd = detail::first_fit_decreasing(inst);
    detail::PackSearch search(inst, limits);
    for (std::int64_t k = out.lp_bound;; ++k) {
        std::optional<std::vector<Configuration>> found;
        if (k >= static_cast<std::int64_t>(ffd.size()))
            found = ffd;
        else
            found = search.pack(b, k);
        if (found) {
            for (const auto& c : *found)
                out.weights.add(c, 1);
            out.bins = static_cast<std::int64_t>(found->size());
            out.nodes = search.nodes();
            return out;
        }
    }
}

struct GapReport {
    std::int64_t ilp_opt = 0;
    Rational lp_opt;
    Rational gap;
    bool irup = true;
    bool mirup = true;
};

inline GapReport gap_report(const Instance& inst, const Limits& limits = {}) {
    GapReport g;
    g.lp_opt = solve_lp(inst, limits).value;
    g.ilp_opt = solve_ilp(inst, limits).bins;
    const std::int64_t up = to_int64(g.lp_opt.ceil());
    g.gap = Rational(static_cast<long>(g.ilp_opt)) - g.lp_opt;
    g.irup = g.ilp_opt <= up;
    g.mirup = g.ilp_opt <= up + 1;
    return g;
}

struct DistanceResult {
    std::int64_t value = 0;
    Weights witness;
    std::optional<std::int64_t> bins; // set for the lifted formulation
    std::uint64_t cells = 0;
};

namespace detail {

struct Box {
    Point upper;
    std::vector<std::size_t> stride;
    std::size_t cells = 1;

    Box(const Point& u, const Limits& limits) : upper(u), stride(u.size()) {
        for (std::size_t i = u.size(); i-- > 0;) {
            stride[i] = cells;
            if (static_cast<std::uint64_t>(u[i] + 1) > limits.box_cap / cells)
                fail(ErrorKind::ResourceLimit, "search box exceeds cap " + std::to_string(limits.box_cap));
            cells *= static_cast<std::size_t>(u[i] + 1);
        }
    }

    std::size_t index(const Point& p) const {
        std::size_t k = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            k += static_cast<std::size_t>(p[i]) * stride[i];
        return k;
    }

    // Calls f(idx) for every cell r with lo <= r <= upper, increasing index.
    template <class F>
    void for_each_from(const Point& lo, F f) const {
        const std::size_t d = upper.size();
        Point cur = lo;
        std::size_t idx = index(lo);
        for (;;) {
            f(idx);
            std::size_t k = d;
            for (;;) {
                if (k == 0)
                    return;
                --k;
                if (cur[k] < upper[k]) {
                    ++cur[k];
                    idx += stride[k];
                    break;
                }
                idx -= static_cast<std::size_t>(cur[k] - lo[k]) * stride[k];
                cur[k] = lo[k];
            }
        }
    }
};

constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 2;

} // namespace detail

/// Dist(b): fewest non-vertex configurations over all decompositions of b.
/// Solved as a shortest path on the box [0, b]: cost 0 for vertices and 1
/// otherwise, one pass per configuration (unbounded knapsack order).
///
/// With `bins` set, the lifted cone over {(1, p)} is used instead: exactly
/// `bins` configurations (the zero configuration included) must sum to b.
inline DistanceResult vertex_distance(const Instance& inst, const VertexSet& v,
                                      std::optional<std::int64_t> bins = std::nullopt, const Limits& limits = {}) {
    const Point& b = inst.multiplicities();
    const std::size_t d = inst.dimension();
    detail::Box box(b, limits);
    auto configs = enumerate_configs(inst, b, limits);
    std::vector<Configuration> items;
    std::vector<std::int32_t> cost;
    for (const auto& p : configs)
        if (!is_zero(p)) {
            items.push_back(p);
            cost.push_back(v.contains(p) ? 0 : 1);
        }
    Deadline deadline(limits);
    DistanceResult out;
    out.bins = bins;
    out.witness = Weights(d);

    if (!bins) {
        std::vector<std::int32_t> f(box.cells, detail::kInf);
        std::vector<std::int32_t> choice(box.cells, -1);
        f[0] = 0;
        for (std::size_t j = 0; j < items.size(); ++j) {
            deadline.check("vertex_distance");
            const std::size_t shift = box.index(items[j]);
            box.for_each_from(items[j], [&](std::size_t idx) {
                std::int32_t cand = f[idx - shift] + cost[j];
                if (cand < f[idx]) {
                    f[idx] = cand;
                    choice[idx] = static_cast<std::int32_t>(j);
                }
            });
            out.cells += box.cells;
        }
        std::size_t at = box.cells - 1;
        if (f[at] >= detail::kInf)
            fail(ErrorKind::NoDecomposition, "b is not in the integer cone");
        out.value = f[at];
        Point r = b;
        while (!is_zero(r)) {
            const auto& p = items[static_cast<std::size_t>(choice[box.index(r)])];
            out.witness.add(p, 1);
            r = sub(r, p);
        }
        return out;
    }

    if (*bins < 0)
        fail(ErrorKind::InvalidInput, "bin count must be >= 0");
    // Layer k holds the best cost using exactly k configurations.
    std::vector<std::int32_t> prev(box.cells, detail::kInf), cur;
    std::vector<std::vector<std::int32_t>> choice;
    prev[0] = 0;
    for (std::int64_t k = 1; k <= *bins; ++k) {
        deadline.check("vertex_distance");
        cur = prev;
        std::vector<std::int32_t> ch(box.cells, -1);
        for (std::size_t j = 0; j < items.size(); ++j) {
            const std::size_t shift = box.index(items[j]);
            box.for_each_from(items[j], [&](std::size_t idx) {
                std::int32_t base = prev[idx - shift];
                if (base >= detail::kInf)
                    return;
                std::int32_t cand = base + cost[j];
                if (cand < cur[idx]) {
                    cur[idx] = cand;
                    ch[idx] = static_cast<std::int32_t>(j);
                }
            });
            out.cells += box.cells;
        }
        choice.push_back(std::move(ch));
        prev.swap(cur);
    }
    std::size_t at = box.cells - 1;
    if (prev[at] >= detail::kInf)
        fail(ErrorKind::NoDecomposition, "b needs more than " + std::to_string(*bins) + " configurations");
    out.value = prev[at];
    Point r = b;
    for (std::int64_t k = *bins; k >= 1; --k) {
        auto c = choice[static_cast<std::size_t>(k - 1)][box.index(r)];
        if (c < 0)
            continue; // the zero configuration fills this bin
        const auto& p = items[static_cast<std::size_t>(c)];
        out.witness.add(p, 1);
        r = sub(r, p);
    }
    return out;
}

/// Whether b is a nonnegative integer combination of V_I, by depth-first
/// search over vertex multiplicities with memoized failures.
inline bool in_vertex_cone(const Point& b, const VertexSet& v, const Limits& limits = {}) {
    std::vector<Configuration> verts;
    for (const auto& p : v.vertices)
        if (!is_zero(p))
            verts.push_back(p);
    std::unordered_map<Point, bool, detail::PointHash> memo;
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, const Point& r, std::size_t from) -> bool {
        if (is_zero(r))
            return true;
        if (++nodes > limits.node_cap)
            fail(ErrorKind::ResourceLimit, "cone membership exceeded node cap");
        // The first positive coordinate must be covered by some vertex j >= from.
        Point key = r;
        key.push_back(static_cast<std::int64_t>(from));
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool ok = false;
        for (std::size_t j = from; j < verts.size() && !ok; ++j)
            if (leq(verts[j], r))
                ok = self(self, sub(r, verts[j]), j);
        memo.emplace(std::move(key), ok);
        return ok;
    };
    return rec(rec, b, 0);
}

/// [K1 gamma] != [K2 gamma].
inline bool residues_distinct(const Configuration& gamma, std::int64_t K1, std::int64_t K2,
                              const DiagonalBasis& basis) {
    if (K1 >= K2)
        fail(ErrorKind::InvalidInput, "residues_distinct needs K1 < K2");
    return orbit_of(gamma, big(K1), basis) != orbit_of(gamma, big(K2), basis);
}

struct FamilyMember {
    std::int64_t K = 0;
    Point residue;
    std::optional<GapReport> report;
    std::string status; // "irup-fails", "irup-holds" or the resource-limit message
};

struct FamilyReport {
    std::vector<FamilyMember> members;
    bool residues_distinct = true;
    bool complete = true;    // every member has a finished exact verdict
    bool divergence = false; // some member satisfies the IRUP
};

/// The residue instances [(d+1) gamma], ..., [(d+Z) gamma] with exact gap
/// reports.
inline FamilyReport irup_family(const Instance& inst, const Configuration& gamma, std::int64_t Z,
                                const VertexSet& v, const Limits& limits = {}) {
    if (Z < 0)
        fail(ErrorKind::InvalidInput, "Z must be >= 0");
    if (v.contains(gamma))
        fail(ErrorKind::PreconditionViolated, to_string(gamma) + " is a vertex");
    if (!is_config(inst, gamma))
        fail(ErrorKind::InvalidInput, to_string(gamma) + " is not a configuration");
    auto basis = DiagonalBasis::of(inst);
    const auto d = static_cast<std::int64_t>(inst.dimension());
    FamilyReport out;
    for (std::int64_t K = d + 1; K <= d + Z; ++K) {
        FamilyMember m;
        m.K = K;
        m.residue = orbit_of(gamma, big(K), basis).point();
        try {
            m.report = gap_report(inst.with_multiplicities(m.residue), limits);
            m.status = m.report->irup ? "irup-holds" : "irup-fails";
            out.divergence = out.divergence || m.report->irup;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ResourceLimit)
                throw;
            m.status = e.what();
            out.complete = false;
        }
        out.members.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < out.members.size(); ++i)
        for (std::size_t j = i + 1; j < out.members.size(); ++j)
            if (out.members[i].residue == out.members[j].residue)
                out.residues_distinct = false;
    return out;
}

} // namespace vcone
