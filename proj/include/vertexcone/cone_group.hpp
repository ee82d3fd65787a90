#pragma once

// The group G(Pi) of a diagonal basis B_i = a_i e_i: the lattice points of
// the half-open parallelepiped Pi = prod [0, a_i) with addition mod a_i.

#include "vertexcone/error.hpp"
#include "vertexcone/knapsack.hpp"
#include "vertexcone/numeric.hpp"

#include <vector>

namespace vcone {

class DiagonalBasis {
public:
    explicit DiagonalBasis(std::vector<BigInt> a) : a_(std::move(a)) {
        if (a_.empty())
            fail(ErrorKind::InvalidInput, "basis needs at least one denominator");
        det_ = 1;
        for (const auto& v : a_) {
            if (v < 1)
                fail(ErrorKind::InvalidInput, "denominators must be >= 1");
            det_ *= v;
        }
        for (const auto& v : a_)
            cofactors_.push_back(det_ / v);
        coprime_ = pairwise_coprime(a_);
    }

    static DiagonalBasis of(const Instance& inst) {
        if (!inst.is_unit_fraction())
            fail(ErrorKind::InvalidInput, "group operations need unit-fraction sizes");
        return DiagonalBasis(inst.denominators());
    }

    std::size_t dimension() const { return a_.size(); }
    const std::vector<BigInt>& denominators() const { return a_; }
    const BigInt& determinant() const { return det_; }
    /// R_i = det / a_i.
    const std::vector<BigInt>& cofactors() const { return cofactors_; }
    bool coprime() const { return coprime_; }

    void require_coprime(const char* op) const {
        if (!coprime_)
            fail(ErrorKind::InvalidInput, std::string(op) + " needs pairwise coprime denominators");
    }

    std::vector<Rational> sizes() const {
        std::vector<Rational> s;
        for (const auto& v : a_)
            s.emplace_back(BigInt(1), v);
        return s;
    }

    friend bool operator==(const DiagonalBasis& x, const DiagonalBasis& y) { return x.a_ == y.a_; }

private:
    std::vector<BigInt> a_;
    BigInt det_;
    std::vector<BigInt> cofactors_;
    bool coprime_ = false;
};

/// A point of Pi cap Z^d: 0 <= residues_i < a_i.
struct GroupElement {
    std::vector<BigInt> residues;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

    Point point() const {
        Point p;
        for (const auto& r : residues)
            p.push_back(to_int64(r));
        return p;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < residues.size(); ++i)
            s += (i ? "," : "") + residues[i].get_str();
        return s + ")";
    }
};

namespace detail {

inline void check_dim(std::size_t n, const DiagonalBasis& basis) {
    if (n != basis.dimension())
        fail(ErrorKind::InvalidInput, "dimension does not match the basis");
}

} // namespace detail

/// [b]: componentwise residues b_i mod a_i.
inline GroupElement residue_map(const std::vector<BigInt>& b, const DiagonalBasis& basis) {
    detail::check_dim(b.size(), basis);
    GroupElement g;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] < 0)
            fail(ErrorKind::InvalidInput, "residue_map needs b >= 0");
        g.residues.push_back(mod(b[i], basis.denominators()[i]));
    }
    return g;
}

inline GroupElement residue_map(const Point& b, const DiagonalBasis& basis) {
    std::vector<BigInt> v;
    for (auto x : b)
        v.push_back(big(x));
    return residue_map(v, basis);
}

/// Multiples of B_i removed by residue_map: b = [b] + sum q_i a_i e_i.
inline std::vector<BigInt> vertex_quotients(const std::vector<BigInt>& b, const DiagonalBasis& basis) {
    detail::check_dim(b.size(), basis);
    std::vector<BigInt> q;
    for (std::size_t i = 0; i < b.size(); ++i)
        q.push_back(floor_div(b[i], basis.denominators()[i]));
    return q;
}

inline void check_element(const GroupElement& p, const DiagonalBasis& basis) {
    detail::check_dim(p.residues.size(), basis);
    for (std::size_t i = 0; i < p.residues.size(); ++i)
        if (p.residues[i] < 0 || p.residues[i] >= basis.denominators()[i])
            fail(ErrorKind::InvalidInput, "residue outside [0, a_i)");
}

inline GroupElement group_add(const GroupElement& p, const GroupElement& q, const DiagonalBasis& basis) {
    check_element(p, basis);
    check_element(q, basis);
    GroupElement r;
    for (std::size_t i = 0; i < p.residues.size(); ++i)
        r.residues.push_back(mod(p.residues[i] + q.residues[i], basis.denominators()[i]));
    return r;
}

inline GroupElement group_inverse(const GroupElement& p, const DiagonalBasis& basis) {
    check_element(p, basis);
    GroupElement r;
    for (std::size_t i = 0; i < p.residues.size(); ++i)
        r.residues.push_back(mod(-p.residues[i], basis.denominators()[i]));
    return r;
}

inline GroupElement group_zero(const DiagonalBasis& basis) {
    return GroupElement{std::vector<BigInt>(basis.dimension(), BigInt(0))};
}

inline Rational size_of(const std::vector<BigInt>& pi, const std::vector<Rational>& sizes) {
    if (pi.size() != sizes.size())
        fail(ErrorKind::InvalidInput, "size_of: dimension mismatch");
    Rational s;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (pi[i] < 0)
            fail(ErrorKind::InvalidInput, "size_of needs a nonnegative vector");
        s += sizes[i] * Rational(pi[i]);
    }
    return s;
}

inline Rational size_of(const Point& pi, const std::vector<Rational>& sizes) {
    std::vector<BigInt> v;
    for (auto x : pi)
        v.push_back(big(x));
    return size_of(v, sizes);
}

inline Rational size_of(const GroupElement& pi, const DiagonalBasis& basis) {
    return size_of(pi.residues, basis.sizes());
}

/// The element g with g_i = -R_i^{-1} mod a_i; its Size is (det-1)/det
/// mod 1 and it generates G(Pi).
inline GroupElement full_generator(const DiagonalBasis& basis) {
    basis.require_coprime("full_generator");
    GroupElement g;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const BigInt& a = basis.denominators()[i];
        if (a < 2)
            fail(ErrorKind::InvalidInput, "full_generator needs every a_i >= 2");
        g.residues.push_back(mod(-mod_inverse(basis.cofactors()[i], a).value, a));
    }
    return g;
}

/// The unique element whose Size has fractional part k/det:
/// pi_i = k * R_i^{-1} mod a_i.
inline GroupElement element_of_fractional_size(const DiagonalBasis& basis, const BigInt& k) {
    basis.require_coprime("element_of_fractional_size");
    if (k < 0 || k >= basis.determinant())
        fail(ErrorKind::InvalidInput, "k must lie in [0, det)");
    GroupElement g;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const BigInt& a = basis.denominators()[i];
        if (a == 1) {
            g.residues.emplace_back(0);
            continue;
        }
        g.residues.push_back(mod(k * mod_inverse(basis.cofactors()[i], a).value, a));
    }
    return g;
}

/// Numerator k of the fractional Size k/det.
inline BigInt fractional_size_index(const GroupElement& pi, const DiagonalBasis& basis) {
    BigInt k = 0;
    for (std::size_t i = 0; i < basis.dimension(); ++i)
        k += pi.residues[i] * basis.cofactors()[i];
    return mod(k, basis.determinant());
}

/// [K g] for the full generator g.
inline GroupElement generator_orbit(const DiagonalBasis& basis, const BigInt& K) {
    if (K < 0)
        fail(ErrorKind::InvalidInput, "orbit index must be >= 0");
    GroupElement g = full_generator(basis);
    for (std::size_t i = 0; i < basis.dimension(); ++i)
        g.residues[i] = mod(g.residues[i] * K, basis.denominators()[i]);
    return g;
}

/// [K p] for an arbitrary vector p.
inline GroupElement orbit_of(const Point& p, const BigInt& K, const DiagonalBasis& basis) {
    detail::check_dim(p.size(), basis);
    std::vector<BigInt> v;
    for (auto x : p)
        v.push_back(big(x) * K);
    return residue_map(v, basis);
}

} // namespace vcone
