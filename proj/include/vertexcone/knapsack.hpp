#pragma once

#include "vertexcone/error.hpp"
#include "vertexcone/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace vcone {

/// Integer vector in Z^d. Ordered lexicographically.
using Point = std::vector<std::int64_t>;

/// A lattice point p >= 0 of the knapsack polytope, i.e. s . p <= 1.
using Configuration = Point;

using i128 = __int128;

inline std::int64_t narrow(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        fail(ErrorKind::ResourceLimit, std::string(what) + ": value exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

inline Point add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Point scaled(const Point& a, std::int64_t k) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = narrow(static_cast<i128>(a[i]) * k, "scaled point");
    return r;
}

inline bool leq(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

inline bool is_zero(const Point& a) {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

inline std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

/// The knapsack row scaled to integers: w . p <= capacity with w_i = L s_i,
/// capacity = L the lcm of the size denominators.
struct KnapsackRow {
    std::vector<std::int64_t> weights;
    std::int64_t capacity = 1;

    i128 load(std::span<const std::int64_t> p) const {
        i128 total = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            total += static_cast<i128>(weights[i]) * p[i];
        return total;
    }

    bool fits(std::span<const std::int64_t> p) const { return load(p) <= capacity; }

    /// Largest count of item i alone in one bin.
    std::int64_t max_count(std::size_t i) const { return capacity / weights[i]; }
};

/// Bin packing instance: item sizes in (0,1] and multiplicities b.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<Rational> sizes, Point multiplicities, std::string name = {})
        : sizes_(std::move(sizes)), multiplicities_(std::move(multiplicities)), name_(std::move(name)) {
        if (sizes_.empty())
            fail(ErrorKind::InvalidInput, "instance needs at least one item size");
        if (multiplicities_.empty())
            multiplicities_.assign(sizes_.size(), 0);
        if (multiplicities_.size() != sizes_.size())
            fail(ErrorKind::InvalidInput, "sizes and multiplicities differ in length");
        for (const auto& s : sizes_)
            if (s.sign() <= 0 || s > Rational(1))
                fail(ErrorKind::InvalidInput, "item size " + s.str() + " outside (0,1]");
        for (auto b : multiplicities_)
            if (b < 0)
                fail(ErrorKind::InvalidInput, "negative multiplicity");
        BigInt l = 1;
        for (const auto& s : sizes_)
            l = lcm(l, s.den());
        if (fits_int64(l)) {
            row_.capacity = l.get_si();
            for (const auto& s : sizes_)
                row_.weights.push_back(BigInt(s.num() * (l / s.den())).get_si());
            has_row_ = true;
        }
    }

    static Instance unit_fractions(const std::vector<BigInt>& denominators, Point multiplicities = {}) {
        std::vector<Rational> sizes;
        for (const auto& a : denominators)
            sizes.emplace_back(BigInt(1), a);
        return Instance(std::move(sizes), std::move(multiplicities));
    }

    std::size_t dimension() const { return sizes_.size(); }
    const std::vector<Rational>& sizes() const { return sizes_; }
    const Point& multiplicities() const { return multiplicities_; }
    const std::string& name() const { return name_; }

    Instance with_multiplicities(Point b) const {
        Instance copy = *this;
        if (b.size() != sizes_.size())
            fail(ErrorKind::InvalidInput, "multiplicity vector has wrong dimension");
        for (auto v : b)
            if (v < 0)
                fail(ErrorKind::InvalidInput, "negative multiplicity");
        copy.multiplicities_ = std::move(b);
        return copy;
    }

    /// Integer form of the knapsack row; fails when the denominators' lcm
    /// does not fit in 64 bits.
    const KnapsackRow& row() const {
        if (!has_row_)
            fail(ErrorKind::ResourceLimit, "lcm of size denominators exceeds 64 bits");
        return row_;
    }

    bool is_unit_fraction() const {
        return std::all_of(sizes_.begin(), sizes_.end(), [](const Rational& s) { return s.num() == 1; });
    }

    std::vector<BigInt> denominators() const {
        std::vector<BigInt> out;
        for (const auto& s : sizes_)
            out.push_back(s.den());
        return out;
    }

    Rational volume(const Point& p) const {
        Rational v;
        for (std::size_t i = 0; i < p.size(); ++i)
            v += sizes_[i] * Rational(BigInt(static_cast<long>(p[i])));
        return v;
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.sizes_ == b.sizes_ && a.multiplicities_ == b.multiplicities_ && a.name_ == b.name_;
    }

private:
    std::vector<Rational> sizes_;
    Point multiplicities_;
    std::string name_;
    KnapsackRow row_;
    bool has_row_ = false;
};

/// Exact membership test p in P cap Z^d.
inline bool is_config(const std::vector<Rational>& sizes, const Point& p) {
    if (p.size() != sizes.size())
        fail(ErrorKind::InvalidInput, "configuration has wrong dimension");
    Rational load;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0)
            fail(ErrorKind::InvalidInput, "configuration has a negative component");
        load += sizes[i] * Rational(BigInt(static_cast<long>(p[i])));
    }
    return load <= Rational(1);
}

inline bool is_config(const Instance& inst, const Point& p) { return is_config(inst.sizes(), p); }

namespace detail {

// Counts lattice points p <= upper with row.load(p) <= budget over
// coordinates [k, d); the last coordinate is counted in closed form.
inline std::uint64_t count_points(const KnapsackRow& row, const Point& upper, std::size_t k, std::int64_t budget,
                                  std::uint64_t stop) {
    const std::size_t d = row.weights.size();
    if (k + 1 == d)
        return static_cast<std::uint64_t>(std::min(upper[k], budget / row.weights[k]) + 1);
    std::uint64_t total = 0;
    for (std::int64_t c = 0; c <= upper[k] && static_cast<i128>(c) * row.weights[k] <= budget; ++c) {
        total += count_points(row, upper, k + 1, budget - c * row.weights[k], stop);
        if (total > stop)
            return total;
    }
    return total;
}

inline void list_points(const KnapsackRow& row, const Point& upper, std::size_t k, std::int64_t budget, Point& cur,
                        std::vector<Configuration>& out) {
    const std::size_t d = row.weights.size();
    for (std::int64_t c = 0; c <= upper[k] && static_cast<i128>(c) * row.weights[k] <= budget; ++c) {
        cur[k] = c;
        if (k + 1 == d)
            out.push_back(cur);
        else
            list_points(row, upper, k + 1, budget - c * row.weights[k], cur, out);
    }
    cur[k] = 0;
}

} // namespace detail

inline Point unbounded_box(const KnapsackRow& row) {
    Point upper(row.weights.size());
    for (std::size_t i = 0; i < upper.size(); ++i)
        upper[i] = row.max_count(i);
    return upper;
}

/// Exact number of configurations p <= upper (componentwise), stopping early
/// once the count passes `stop`.
inline std::uint64_t count_configs(const Instance& inst, const Point& upper, std::uint64_t stop = UINT64_MAX) {
    return detail::count_points(inst.row(), upper, 0, inst.row().capacity, stop);
}

inline std::uint64_t count_configs(const Instance& inst) { return count_configs(inst, unbounded_box(inst.row())); }

/// All configurations p <= upper in lexicographic order. The first
/// coordinate's range is split across `limits.threads` workers and the
/// chunks are concatenated in order, so the output is schedule independent.
inline std::vector<Configuration> enumerate_configs(const Instance& inst, const Point& upper, const Limits& limits = {}) {
    const KnapsackRow& row = inst.row();
    if (upper.size() != inst.dimension())
        fail(ErrorKind::InvalidInput, "bounding box has wrong dimension");
    std::uint64_t n = count_configs(inst, upper, limits.config_cap);
    if (n > limits.config_cap)
        fail(ErrorKind::ResourceLimit, "configuration count exceeds cap " + std::to_string(limits.config_cap) +
                                           " (at least " + std::to_string(n) + ")");
    std::int64_t first_max = std::min(upper[0], row.max_count(0));
    unsigned workers = std::max(1u, std::min<unsigned>(limits.threads, static_cast<unsigned>(first_max + 1)));
    std::vector<std::vector<Configuration>> chunks(workers);
    auto work = [&](unsigned w) {
        Point cur(inst.dimension(), 0);
        for (std::int64_t c = w; c <= first_max; c += workers) {
            cur[0] = c;
            if (inst.dimension() == 1) {
                chunks[w].push_back(cur);
                continue;
            }
            std::vector<Configuration> part;
            detail::list_points(row, upper, 1, row.capacity - c * row.weights[0], cur, part);
            chunks[w].insert(chunks[w].end(), part.begin(), part.end());
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }
    std::vector<Configuration> out;
    out.reserve(n);
    if (workers == 1)
        return std::move(chunks[0]);
    // Interleave per first coordinate to restore lexicographic order.
    std::vector<std::size_t> pos(workers, 0);
    for (std::int64_t c = 0; c <= first_max; ++c) {
        auto& chunk = chunks[static_cast<std::size_t>(c) % workers];
        auto& at = pos[static_cast<std::size_t>(c) % workers];
        while (at < chunk.size() && chunk[at][0] == c)
            out.push_back(std::move(chunk[at++]));
    }
    return out;
}

inline std::vector<Configuration> enumerate_configs(const Instance& inst, const Limits& limits = {}) {
    return enumerate_configs(inst, unbounded_box(inst.row()), limits);
}

} // namespace vcone
