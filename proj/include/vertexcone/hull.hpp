#pragma once

// Integer hull of the knapsack polytope.
//
// Facets are maintained with the double description method on the cone of
// valid inequalities {(n, c) : n . v <= c for all points v}; its extreme
// rays are the facet inequalities plus the trivial ray (0, ..., 0, 1).
// Adding a point is one double description step with the combinatorial
// adjacency test.

#include "vertexcone/error.hpp"
#include "vertexcone/knapsack.hpp"
#include "vertexcone/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <vector>

namespace vcone {

struct Facet {
    Point normal;
    std::int64_t offset = 0; // normal . x <= offset

    friend auto operator<=>(const Facet&, const Facet&) = default;
};

namespace detail {

class Bitset {
public:
    void set(std::size_t i) {
        if (i / 64 >= words_.size())
            words_.resize(i / 64 + 1, 0);
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    bool test(std::size_t i) const { return i / 64 < words_.size() && (words_[i / 64] >> (i % 64)) & 1; }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r;
        r.words_.resize(std::min(words_.size(), o.words_.size()));
        for (std::size_t i = 0; i < r.words_.size(); ++i)
            r.words_[i] = words_[i] & o.words_[i];
        return r;
    }
    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~other)
                return false;
        }
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::vector<std::int64_t> primitive(const std::vector<i128>& v) {
    i128 g = 0;
    for (auto x : v)
        g = gcd128(g, x);
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = narrow(g == 0 ? v[i] : v[i] / g, "hull facet");
    return out;
}

inline std::vector<std::int64_t> primitive(const std::vector<Rational>& v) {
    BigInt l = 1;
    for (const auto& x : v)
        l = lcm(l, x.den());
    BigInt g = 0;
    std::vector<BigInt> ints;
    for (const auto& x : v) {
        ints.push_back(x.num() * (l / x.den()));
        g = gcd(g, ints.back());
    }
    std::vector<std::int64_t> out;
    for (auto& x : ints)
        out.push_back(to_int64(g == 0 ? x : BigInt(x / g)));
    return out;
}

} // namespace detail

class DoubleDescription {
public:
    explicit DoubleDescription(std::size_t dim) : d_(dim) {}

    /// Starts from d+1 affinely independent points.
    void seed(const std::vector<Point>& simplex) {
        if (simplex.size() != d_ + 1)
            fail(ErrorKind::InvalidInput, "seed needs d+1 points");
        RationalMatrix a(d_ + 1, std::vector<Rational>(d_ + 1));
        for (std::size_t j = 0; j <= d_; ++j) {
            for (std::size_t i = 0; i < d_; ++i)
                a[j][i] = Rational(static_cast<long>(simplex[j][i]));
            a[j][d_] = Rational(-1);
        }
        pts_ = simplex;
        rays_.clear();
        for (std::size_t k = 0; k <= d_; ++k) {
            std::vector<Rational> e(d_ + 1);
            e[k] = Rational(-1);
            auto col = solve_linear(a, e);
            if (!col)
                fail(ErrorKind::SingularBasis, "seed points are affinely dependent");
            Ray ray{detail::primitive(*col), {}};
            for (std::size_t j = 0; j <= d_; ++j)
                if (j != k)
                    ray.zeros.set(j);
            rays_.push_back(std::move(ray));
        }
    }

    /// Adds a point; returns true when it lies outside the current hull.
    bool add(const Point& p) {
        const std::size_t idx = pts_.size();
        std::vector<i128> h(rays_.size());
        bool outside = false;
        for (std::size_t r = 0; r < rays_.size(); ++r) {
            h[r] = value(rays_[r].coef, p);
            outside = outside || h[r] > 0;
        }
        pts_.push_back(p);
        if (!outside) {
            for (std::size_t r = 0; r < rays_.size(); ++r)
                if (h[r] == 0)
                    rays_[r].zeros.set(idx);
            return false;
        }
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays_.size(); ++r) {
            if (h[r] > 0)
                continue;
            next.push_back(rays_[r]);
            if (h[r] == 0)
                next.back().zeros.set(idx);
        }
        for (std::size_t pos = 0; pos < rays_.size(); ++pos) {
            if (h[pos] <= 0)
                continue;
            for (std::size_t neg = 0; neg < rays_.size(); ++neg) {
                if (h[neg] >= 0)
                    continue;
                detail::Bitset common = rays_[pos].zeros & rays_[neg].zeros;
                if (common.count() + 1 < d_)
                    continue;
                bool adjacent = true;
                for (std::size_t other = 0; other < rays_.size() && adjacent; ++other)
                    if (other != pos && other != neg && common.subset_of(rays_[other].zeros))
                        adjacent = false;
                if (!adjacent)
                    continue;
                std::vector<i128> combo(d_ + 1);
                for (std::size_t i = 0; i <= d_; ++i)
                    combo[i] = h[pos] * rays_[neg].coef[i] - h[neg] * rays_[pos].coef[i];
                Ray ray{detail::primitive(combo), common};
                ray.zeros.set(idx);
                next.push_back(std::move(ray));
            }
        }
        rays_ = std::move(next);
        return true;
    }

    std::vector<Facet> facets() const {
        std::vector<Facet> out;
        for (const auto& ray : rays_) {
            Point n(ray.coef.begin(), ray.coef.begin() + static_cast<std::ptrdiff_t>(d_));
            if (is_zero(n))
                continue;
            out.push_back({n, ray.coef[d_]});
        }
        return out;
    }

    const std::vector<Point>& points() const { return pts_; }

    /// Points of the input that are vertices of their hull: the normals of
    /// the facets through the point span R^d.
    std::vector<Point> vertices() const {
        std::vector<Point> out;
        for (std::size_t j = 0; j < pts_.size(); ++j) {
            RationalMatrix normals;
            for (const auto& ray : rays_) {
                if (!ray.zeros.test(j))
                    continue;
                std::vector<Rational> row;
                for (std::size_t i = 0; i < d_; ++i)
                    row.emplace_back(static_cast<long>(ray.coef[i]));
                normals.push_back(std::move(row));
            }
            if (rank(normals) == d_)
                out.push_back(pts_[j]);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    struct Ray {
        std::vector<std::int64_t> coef; // (n_1..n_d, c)
        detail::Bitset zeros;           // indices of points with n . p = c
    };

    i128 value(const std::vector<std::int64_t>& coef, const Point& p) const {
        i128 s = -static_cast<i128>(coef[d_]);
        for (std::size_t i = 0; i < d_; ++i)
            s += static_cast<i128>(coef[i]) * p[i];
        return s;
    }

    std::size_t d_;
    std::vector<Point> pts_;
    std::vector<Ray> rays_;
};

/// V_I: the vertices of Conv(P cap Z^d), sorted lexicographically (the
/// origin first).
struct VertexSet {
    std::size_t dimension = 0;
    std::vector<Configuration> vertices;

    bool contains(const Point& p) const { return std::binary_search(vertices.begin(), vertices.end(), p); }
    std::size_t size() const { return vertices.size(); }
};

enum class HullMode { Incremental, Direct };

struct HullOptions {
    HullMode mode = HullMode::Incremental;
    bool unit_fraction_fast_path = true;
};

struct HullResult {
    VertexSet vertices;
    std::vector<Facet> facets;
    bool fast_path = false;
    std::size_t oracle_calls = 0;
};

namespace detail {

inline std::vector<Point> axis_simplex(const Instance& inst) {
    const std::size_t d = inst.dimension();
    std::vector<Point> seed{Point(d, 0)};
    for (std::size_t i = 0; i < d; ++i) {
        Point p(d, 0);
        p[i] = inst.row().max_count(i);
        seed.push_back(p);
    }
    return seed;
}

} // namespace detail

/// Unit sizes 1/a_i: V_I = {0, a_1 e_1, ..., a_d e_d}.
inline VertexSet unit_fraction_vertices(const Instance& inst) {
    if (!inst.is_unit_fraction())
        fail(ErrorKind::InvalidInput, "sizes are not unit fractions");
    VertexSet vs{inst.dimension(), {Point(inst.dimension(), 0)}};
    for (std::size_t i = 0; i < inst.dimension(); ++i) {
        Point p(inst.dimension(), 0);
        p[i] = to_int64(inst.sizes()[i].den());
        vs.vertices.push_back(p);
    }
    std::sort(vs.vertices.begin(), vs.vertices.end());
    return vs;
}

/// Computes V_I. Incremental mode starts from the axis simplex and, for each
/// facet n . x <= c of the current hull, maximizes n . x over the
/// enumerated lattice points; a maximizer beyond the facet (the
/// lexicographically largest one, which is a vertex of the optimal face) is
/// added. Direct mode builds the hull of all lattice points at once.
inline HullResult hull_vertices_ex(const Instance& inst, const HullOptions& opt = {}, const Limits& limits = {}) {
    HullResult out;
    const std::size_t d = inst.dimension();
    if (opt.unit_fraction_fast_path && inst.is_unit_fraction()) {
        out.vertices = unit_fraction_vertices(inst);
        out.fast_path = true;
        return out;
    }
    if (d == 1) {
        out.vertices = {1, {Point{0}, Point{inst.row().max_count(0)}}};
        if (out.vertices.vertices[1][0] == 0)
            out.vertices.vertices.pop_back();
        return out;
    }
    auto configs = enumerate_configs(inst, limits);
    DoubleDescription dd(d);
    dd.seed(detail::axis_simplex(inst));
    if (opt.mode == HullMode::Direct) {
        for (const auto& p : configs)
            dd.add(p);
        out.vertices = {d, dd.vertices()};
        out.facets = dd.facets();
        return out;
    }
    Deadline deadline(limits);
    std::set<Facet> verified;
    for (;;) {
        deadline.check("hull");
        bool extended = false;
        for (const auto& f : dd.facets()) {
            if (verified.count(f))
                continue;
            ++out.oracle_calls;
            const Configuration* best = nullptr;
            i128 best_val = 0;
            for (const auto& p : configs) {
                i128 v = 0;
                for (std::size_t i = 0; i < d; ++i)
                    v += static_cast<i128>(f.normal[i]) * p[i];
                if (!best || v >= best_val) {
                    best = &p;
                    best_val = v;
                }
            }
            if (best_val > f.offset) {
                dd.add(*best);
                extended = true;
                break;
            }
            verified.insert(f);
        }
        if (!extended)
            break;
    }
    out.vertices = {d, dd.points()};
    std::sort(out.vertices.vertices.begin(), out.vertices.vertices.end());
    out.facets = dd.facets();
    return out;
}

inline VertexSet hull_vertices(const Instance& inst, const HullOptions& opt = {}, const Limits& limits = {}) {
    return hull_vertices_ex(inst, opt, limits).vertices;
}

/// Barycentric coordinates of a point inside a simplex of d+1 vertices.
struct SimplexCoords {
    std::vector<Rational> coords;
    std::vector<Configuration> basis;

    Point recombine() const {
        const std::size_t d = basis.front().size();
        std::vector<Rational> acc(d);
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < d; ++i)
                acc[i] += coords[j] * Rational(static_cast<long>(basis[j][i]));
        Point p(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!acc[i].is_integer())
                fail(ErrorKind::PreconditionViolated, "recombined point is not integral");
            p[i] = to_int64(acc[i].num());
        }
        return p;
    }
};

namespace detail {

inline std::optional<std::vector<Rational>> affine_coords(const Point& gamma, const std::vector<Configuration>& basis) {
    const std::size_t d = gamma.size();
    RationalMatrix a(d + 1, std::vector<Rational>(basis.size()));
    std::vector<Rational> rhs(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            a[i][j] = Rational(static_cast<long>(basis[j][i]));
        rhs[i] = Rational(static_cast<long>(gamma[i]));
    }
    for (std::size_t j = 0; j < basis.size(); ++j)
        a[d][j] = Rational(1);
    rhs[d] = Rational(1);
    return solve_linear(std::move(a), std::move(rhs));
}

} // namespace detail

inline SimplexCoords barycentric(const Point& gamma, const std::vector<Configuration>& basis) {
    const std::size_t d = gamma.size();
    if (basis.size() != d + 1)
        fail(ErrorKind::InvalidInput, "basis must contain d+1 points");
    for (const auto& b : basis)
        if (b.size() != d)
            fail(ErrorKind::InvalidInput, "basis point has wrong dimension");
    auto x = detail::affine_coords(gamma, basis);
    if (!x)
        fail(ErrorKind::SingularBasis, "basis points are affinely dependent");
    for (const auto& c : *x)
        if (c.sign() < 0)
            fail(ErrorKind::NotInSimplex, to_string(gamma) + " lies outside the simplex");
    return {std::move(*x), basis};
}

/// First (d+1)-subset of V_I, in lexicographic index order, whose simplex
/// contains gamma.
inline std::vector<Configuration> containing_simplex(const Point& gamma, const VertexSet& vs,
                                                     const Limits& limits = {}) {
    const std::size_t d = gamma.size(), n = vs.vertices.size();
    if (n < d + 1)
        fail(ErrorKind::InvalidInput, "vertex set too small for a simplex");
    std::vector<std::size_t> pick(d + 1);
    std::iota(pick.begin(), pick.end(), 0);
    std::uint64_t tried = 0;
    for (;;) {
        if (++tried > limits.node_cap)
            fail(ErrorKind::ResourceLimit, "simplex search exceeded node cap");
        std::vector<Configuration> basis;
        for (auto k : pick)
            basis.push_back(vs.vertices[k]);
        auto x = detail::affine_coords(gamma, basis);
        if (x && std::all_of(x->begin(), x->end(), [](const Rational& c) { return c.sign() >= 0; }))
            return basis;
        std::size_t k = d + 1;
        while (k > 0 && pick[k - 1] == n - (d + 1) + (k - 1))
            --k;
        if (k == 0)
            break;
        ++pick[k - 1];
        for (std::size_t j = k; j <= d; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    fail(ErrorKind::NotInSimplex, to_string(gamma) + " is not in the hull of the vertex set");
}

} // namespace vcone
