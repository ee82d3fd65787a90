#pragma once

#include "vertexcone/hull.hpp"
#include "vertexcone/knapsack.hpp"

#include <map>

namespace vcone {

/// Sparse integral weights lambda over configurations. Only positive
/// weights on nonzero configurations are stored; the zero configuration
/// never changes the represented vector.
class Weights {
public:
    using Map = std::map<Configuration, std::int64_t>;

    Weights() = default;
    explicit Weights(std::size_t dim) : dim_(dim) {}

    void add(const Configuration& p, std::int64_t w) {
        if (dim_ == 0)
            dim_ = p.size();
        if (p.size() != dim_)
            fail(ErrorKind::InvalidInput, "configuration has wrong dimension");
        if (w == 0 || is_zero(p))
            return;
        std::int64_t& slot = entries_[p];
        slot = narrow(static_cast<i128>(slot) + w, "weight");
        if (slot < 0)
            fail(ErrorKind::InvalidInput, "weight of " + to_string(p) + " became negative");
        if (slot == 0)
            entries_.erase(p);
    }

    std::int64_t at(const Configuration& p) const {
        auto it = entries_.find(p);
        return it == entries_.end() ? 0 : it->second;
    }

    const Map& entries() const { return entries_; }
    std::size_t dimension() const { return dim_; }
    bool empty() const { return entries_.empty(); }

    /// sum lambda_p p.
    Point target() const {
        std::vector<i128> acc(dim_, 0);
        for (const auto& [p, w] : entries_)
            for (std::size_t i = 0; i < dim_; ++i)
                acc[i] += static_cast<i128>(p[i]) * w;
        Point out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            out[i] = narrow(acc[i], "target");
        return out;
    }

    /// ||lambda||_1, the number of bins.
    std::int64_t total() const {
        i128 s = 0;
        for (const auto& [p, w] : entries_)
            s += w;
        return narrow(s, "total weight");
    }

    /// sum of lambda_p over p not in V_I.
    std::int64_t non_vertex_mass(const VertexSet& v) const {
        i128 s = 0;
        for (const auto& [p, w] : entries_)
            if (!v.contains(p))
                s += w;
        return narrow(s, "non-vertex mass");
    }

    std::size_t vertex_support(const VertexSet& v) const {
        std::size_t n = 0;
        for (const auto& [p, w] : entries_)
            n += v.contains(p) ? 1 : 0;
        return n;
    }

    std::size_t non_vertex_support(const VertexSet& v) const { return entries_.size() - vertex_support(v); }

    friend bool operator==(const Weights& a, const Weights& b) { return a.entries_ == b.entries_; }

private:
    std::size_t dim_ = 0;
    Map entries_;
};

/// b = sum b_i e_i; every e_i is a configuration since sizes are <= 1.
inline Weights unit_decomposition(const Instance& inst) {
    Weights w(inst.dimension());
    for (std::size_t i = 0; i < inst.dimension(); ++i) {
        Point e(inst.dimension(), 0);
        e[i] = 1;
        w.add(e, inst.multiplicities()[i]);
    }
    return w;
}

} // namespace vcone
