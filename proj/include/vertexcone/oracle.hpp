#pragma once

// Brute-force counterparts of the exact solvers. Exponential; meant for
// small instances in tests and for the CLI's --oracle diff.

#include "vertexcone/binpack.hpp"
#include "vertexcone/cone_group.hpp"
#include "vertexcone/hull.hpp"
#include "vertexcone/linalg.hpp"

namespace vcone::oracle {

/// Whether pts[j] is outside the convex hull of the other points, checked on
/// every (d+1)-subset of them (Caratheodory).
inline bool is_vertex(const std::vector<Point>& pts, std::size_t j) {
    const std::size_t d = pts[j].size();
    std::vector<Point> others;
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (k != j)
            others.push_back(pts[k]);
    const std::size_t n = others.size();
    if (n < d + 1)
        return true;
    std::vector<std::size_t> pick(d + 1);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        std::vector<Configuration> basis;
        for (auto k : pick)
            basis.push_back(others[k]);
        try {
            barycentric(pts[j], basis);
            return false;
        } catch (const Error&) {
        }
        std::size_t k = d + 1;
        while (k > 0 && pick[k - 1] == n - (d + 1) + (k - 1))
            --k;
        if (k == 0)
            return true;
        ++pick[k - 1];
        for (std::size_t i = k; i <= d; ++i)
            pick[i] = pick[i - 1] + 1;
    }
}

inline std::vector<Configuration> hull_vertices(const Instance& inst, const Limits& limits = {}) {
    auto pts = enumerate_configs(inst, limits);
    std::vector<Configuration> out;
    for (std::size_t j = 0; j < pts.size(); ++j)
        if (is_vertex(pts, j))
            out.push_back(pts[j]);
    return out;
}

namespace detail {

inline BigInt det(std::vector<std::vector<BigInt>> m) {
    // Bareiss elimination.
    const std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

/// |Pi cap Z^d| for the half-open parallelepiped spanned by `columns`,
/// counted point by point over its bounding box: x is inside iff
/// 0 <= adj(B) x < |det B| after fixing the sign.
inline std::uint64_t parallelepiped_points(const std::vector<Point>& columns) {
    const std::size_t d = columns.size();
    std::vector<std::vector<BigInt>> B(d, std::vector<BigInt>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            B[i][j] = big(columns[j][i]);
    BigInt D = detail::det(B);
    if (D == 0)
        fail(ErrorKind::SingularBasis, "parallelepiped is degenerate");
    // adj(B)[j][i] = (-1)^{i+j} minor(i, j).
    std::vector<std::vector<std::int64_t>> adj(d, std::vector<std::int64_t>(d, 1));
    if (d > 1)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<std::vector<BigInt>> minor;
                for (std::size_t r = 0; r < d; ++r) {
                    if (r == i)
                        continue;
                    std::vector<BigInt> row;
                    for (std::size_t c = 0; c < d; ++c)
                        if (c != j)
                            row.push_back(B[r][c]);
                    minor.push_back(std::move(row));
                }
                BigInt v = detail::det(minor);
                if ((i + j) % 2 == 1)
                    v = -v;
                adj[j][i] = to_int64(D < 0 ? BigInt(-v) : v);
            }
    const std::int64_t absD = to_int64(abs(D));
    Point lo(d, 0), hi(d, 0);
    for (const auto& c : columns)
        for (std::size_t i = 0; i < d; ++i)
            (c[i] < 0 ? lo[i] : hi[i]) += c[i];
    std::uint64_t count = 0;
    Point x = lo;
    for (;;) {
        bool inside = true;
        for (std::size_t r = 0; r < d && inside; ++r) {
            i128 t = 0;
            for (std::size_t c = 0; c < d; ++c)
                t += static_cast<i128>(adj[r][c]) * x[c];
            inside = t >= 0 && t < absD;
        }
        count += inside ? 1 : 0;
        std::size_t k = d;
        for (;;) {
            if (k == 0)
                return count;
            --k;
            if (x[k] < hi[k]) {
                ++x[k];
                break;
            }
            x[k] = lo[k];
        }
    }
}

/// The element of fractional Size (det-1)/det found by scanning Pi cap Z^d.
inline std::optional<GroupElement> generator_by_scan(const DiagonalBasis& basis) {
    const Rational want(basis.determinant() - 1, basis.determinant());
    const std::size_t d = basis.dimension();
    GroupElement e = group_zero(basis);
    for (;;) {
        if (size_of(e, basis).frac() == want)
            return e;
        std::size_t k = d;
        for (;;) {
            if (k == 0)
                return std::nullopt;
            --k;
            if (++e.residues[k] < basis.denominators()[k])
                break;
            e.residues[k] = 0;
        }
    }
}

/// Minimum bins over every set partition of the expanded item list.
inline std::int64_t ilp_by_partition(const Instance& inst) {
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < inst.dimension(); ++i)
        for (std::int64_t c = 0; c < inst.multiplicities()[i]; ++c)
            items.push_back(i);
    if (items.size() > 12)
        fail(ErrorKind::ResourceLimit, "partition oracle is limited to 12 items");
    const auto& s = inst.sizes();
    std::vector<Rational> load;
    std::int64_t best = static_cast<std::int64_t>(items.size());
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (static_cast<std::int64_t>(load.size()) >= best)
            return;
        if (k == items.size()) {
            best = static_cast<std::int64_t>(load.size());
            return;
        }
        const Rational& w = s[items[k]];
        for (std::size_t j = 0; j < load.size(); ++j)
            if (load[j] + w <= Rational(1)) {
                load[j] += w;
                self(self, k + 1);
                load[j] -= w;
            }
        load.push_back(w);
        self(self, k + 1);
        load.pop_back();
    };
    rec(rec, 0);
    return best;
}

/// LP optimum as the best basic feasible solution over d-subsets of the
/// nonzero configurations.
inline Rational lp_by_basic_solutions(const Instance& inst, const Limits& limits = {}) {
    const std::size_t d = inst.dimension();
    const Point& b = inst.multiplicities();
    if (is_zero(b))
        return Rational(0);
    std::vector<Configuration> cols;
    for (auto& p : enumerate_configs(inst, limits))
        if (!is_zero(p))
            cols.push_back(std::move(p));
    std::vector<Rational> rhs;
    for (auto v : b)
        rhs.emplace_back(static_cast<long>(v));
    std::optional<Rational> best;
    std::vector<std::size_t> pick(d);
    std::iota(pick.begin(), pick.end(), 0);
    const std::size_t n = cols.size();
    if (n < d)
        fail(ErrorKind::InvalidInput, "too few configurations");
    for (;;) {
        RationalMatrix A(d, std::vector<Rational>(d));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                A[r][c] = Rational(static_cast<long>(cols[pick[c]][r]));
        if (auto sol = solve_linear(A, rhs)) {
            bool feasible = std::all_of(sol->begin(), sol->end(), [](const Rational& v) { return v.sign() >= 0; });
            if (feasible) {
                Rational v;
                for (const auto& t : *sol)
                    v += t;
                if (!best || v < *best)
                    best = v;
            }
        }
        std::size_t k = d;
        while (k > 0 && pick[k - 1] == n - d + (k - 1))
            --k;
        if (k == 0)
            break;
        ++pick[k - 1];
        for (std::size_t i = k; i < d; ++i)
            pick[i] = pick[i - 1] + 1;
    }
    if (!best)
        fail(ErrorKind::NoDecomposition, "no basic feasible solution");
    return *best;
}

/// Dist by iterative deepening over multisets of non-vertex configurations;
/// the rest must be a sum of vertices, at most `bins - D` of them in the
/// lifted case (the zero vertex fills the remaining bins).
inline std::int64_t dist_by_deepening(const Instance& inst, const VertexSet& v,
                                      std::optional<std::int64_t> bins = std::nullopt, const Limits& limits = {}) {
    const Point& b = inst.multiplicities();
    std::vector<Configuration> nonvert, verts;
    for (auto& p : enumerate_configs(inst, b, limits)) {
        if (is_zero(p))
            continue;
        (v.contains(p) ? verts : nonvert).push_back(std::move(p));
    }
    // Fewest nonzero vertices summing to r, or nullopt.
    auto vertex_count = [&](const Point& r, std::int64_t budget) {
        std::map<std::pair<Point, std::size_t>, std::int64_t> memo;
        auto rec = [&](auto&& self, const Point& rr, std::size_t from) -> std::int64_t {
            if (is_zero(rr))
                return 0;
            auto key = std::make_pair(rr, from);
            if (auto it = memo.find(key); it != memo.end())
                return it->second;
            std::int64_t best = INT64_MAX;
            for (std::size_t j = from; j < verts.size(); ++j)
                if (leq(verts[j], rr)) {
                    auto sub_best = self(self, sub(rr, verts[j]), j);
                    if (sub_best != INT64_MAX)
                        best = std::min(best, sub_best + 1);
                }
            memo.emplace(key, best);
            return best;
        };
        auto c = rec(rec, r, 0);
        return c <= budget;
    };
    const std::int64_t depth_max = bins ? *bins : std::accumulate(b.begin(), b.end(), std::int64_t{0});
    for (std::int64_t D = 0; D <= depth_max; ++D) {
        bool found = false;
        auto rec = [&](auto&& self, std::size_t from, std::int64_t left, const Point& r) -> void {
            if (found)
                return;
            if (left == 0) {
                found = vertex_count(r, bins ? *bins - D : INT64_MAX - 1);
                return;
            }
            for (std::size_t j = from; j < nonvert.size() && !found; ++j)
                if (leq(nonvert[j], r))
                    self(self, j, left - 1, sub(r, nonvert[j]));
        };
        rec(rec, 0, D, b);
        if (found)
            return D;
    }
    fail(ErrorKind::NoDecomposition, "b has no decomposition");
}

} // namespace vcone::oracle
