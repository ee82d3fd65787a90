#pragma once

#include "vertexcone/numeric.hpp"

#include <optional>
#include <vector>

namespace vcone {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves A x = rhs for square A by exact Gauss-Jordan elimination.
/// Returns nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].sign() == 0)
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        Rational inv = Rational(1) / a[col][col];
        for (std::size_t j = col; j < n; ++j)
            a[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].sign() == 0)
                continue;
            Rational f = a[r][col];
            for (std::size_t j = col; j < n; ++j)
                a[r][j] -= f * a[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

inline std::size_t rank(RationalMatrix a) {
    if (a.empty())
        return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].sign() == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].sign() == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline RationalMatrix transpose(const RationalMatrix& a) {
    if (a.empty())
        return {};
    RationalMatrix t(a[0].size(), std::vector<Rational>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

} // namespace vcone
