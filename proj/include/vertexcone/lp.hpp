#pragma once

// Exact configuration LP min { sum lambda_p : sum lambda_p p = b, lambda >= 0 }
// by column generation. The restricted master is a revised simplex over
// rationals with an explicit basis inverse; pricing maximizes y . p over
// configurations.

#include "vertexcone/error.hpp"
#include "vertexcone/knapsack.hpp"

#include <map>
#include <optional>

namespace vcone {

struct PricingResult {
    Configuration config;
    Rational value; // y . config
};

namespace detail {

inline std::vector<BigInt> scale_duals(const std::vector<Rational>& y, BigInt& denom) {
    denom = 1;
    for (const auto& v : y)
        denom = lcm(denom, v.den());
    std::vector<BigInt> out;
    for (const auto& v : y)
        out.push_back(v.sign() > 0 ? BigInt(v.num() * (denom / v.den())) : BigInt(0));
    return out;
}

} // namespace detail

/// Unbounded knapsack over the integer capacity of the row. Ties resolve to
/// the configuration reached by the lowest item index last added.
inline PricingResult price_by_dp(const Instance& inst, const std::vector<Rational>& y) {
    const KnapsackRow& row = inst.row();
    const std::size_t d = inst.dimension();
    BigInt denom;
    auto val = detail::scale_duals(y, denom);
    const auto cap = static_cast<std::size_t>(row.capacity);
    std::vector<BigInt> best(cap + 1, BigInt(0));
    std::vector<int> choice(cap + 1, -1);
    for (std::size_t c = 1; c <= cap; ++c) {
        best[c] = best[c - 1];
        choice[c] = -1;
        for (std::size_t i = 0; i < d; ++i) {
            auto w = static_cast<std::size_t>(row.weights[i]);
            if (w > c || val[i] == 0)
                continue;
            BigInt cand = best[c - w] + val[i];
            if (cand > best[c]) {
                best[c] = cand;
                choice[c] = static_cast<int>(i);
            }
        }
    }
    Configuration p(d, 0);
    for (std::size_t c = cap; c > 0;) {
        if (choice[c] < 0) {
            --c;
            continue;
        }
        auto i = static_cast<std::size_t>(choice[c]);
        ++p[i];
        c -= static_cast<std::size_t>(row.weights[i]);
    }
    return {p, Rational(best[cap], denom)};
}

/// Depth-first branch and bound in decreasing value density order, bounded
/// by the fractional knapsack relaxation.
inline PricingResult price_by_branch_and_bound(const Instance& inst, const std::vector<Rational>& y,
                                               const Limits& limits = {}) {
    const std::size_t d = inst.dimension();
    const auto& s = inst.sizes();
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < d; ++i)
        if (y[i].sign() > 0)
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return y[a] / s[a] > y[b] / s[b]; });
    PricingResult best{Configuration(d, 0), Rational(0)};
    Configuration cur(d, 0);
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t k, const Rational& room, const Rational& value) -> void {
        if (++nodes > limits.node_cap)
            fail(ErrorKind::ResourceLimit, "pricing exceeded node cap");
        if (value > best.value) {
            best.value = value;
            best.config = cur;
        }
        if (k == order.size())
            return;
        const std::size_t i = order[k];
        if (value + room * (y[i] / s[i]) <= best.value)
            return;
        BigInt most = (room / s[i]).floor();
        for (BigInt c = most; c >= 0; --c) {
            cur[i] = to_int64(c);
            self(self, k + 1, room - s[i] * Rational(c), value + y[i] * Rational(c));
        }
        cur[i] = 0;
    };
    rec(rec, 0, Rational(1), Rational(0));
    return best;
}

inline PricingResult price(const Instance& inst, const std::vector<Rational>& y, const Limits& limits = {}) {
    bool small = false;
    try {
        small = static_cast<std::uint64_t>(inst.row().capacity) <= limits.pricing_dp_cap;
    } catch (const Error&) {
        small = false;
    }
    return small ? price_by_dp(inst, y) : price_by_branch_and_bound(inst, y, limits);
}

struct FractionalPacking {
    std::map<Configuration, Rational> weights;
    Rational value;
    /// Optimal duals: y . b = value and y . p <= 1 for every configuration.
    std::vector<Rational> duals;
    std::uint64_t pivots = 0;
};

/// Solves the configuration LP for the multiplicities of `inst`.
inline FractionalPacking solve_lp(const Instance& inst, const Limits& limits = {}) {
    const std::size_t d = inst.dimension();
    const Point& b = inst.multiplicities();
    const KnapsackRow& row = inst.row();
    FractionalPacking out;
    Deadline deadline(limits);

    std::vector<Configuration> cols(d, Configuration(d, 0));
    std::vector<std::vector<Rational>> binv(d, std::vector<Rational>(d));
    std::vector<Rational> x(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::int64_t m = row.max_count(i);
        cols[i][i] = m;
        binv[i][i] = Rational(1, static_cast<long>(m));
        x[i] = Rational(static_cast<long>(b[i]), static_cast<long>(m));
    }

    std::optional<std::vector<Configuration>> all; // only for Bland mode
    std::uint64_t degenerate_run = 0;
    for (;;) {
        deadline.check("solve_lp");
        if (++out.pivots > limits.node_cap)
            fail(ErrorKind::ResourceLimit, "LP exceeded pivot cap");
        std::vector<Rational> y(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < d; ++j)
                y[j] += binv[r][j];

        const bool bland = degenerate_run > 2 * d + 8;
        std::optional<Configuration> enter;
        if (bland) {
            if (!all)
                all = enumerate_configs(inst, limits);
            for (const auto& p : *all) {
                Rational v;
                for (std::size_t i = 0; i < d; ++i)
                    v += y[i] * Rational(static_cast<long>(p[i]));
                if (v > Rational(1)) {
                    enter = p;
                    break;
                }
            }
        } else {
            auto pr = price(inst, y, limits);
            if (pr.value > Rational(1))
                enter = pr.config;
        }
        if (!enter) {
            out.duals = y;
            break;
        }

        std::vector<Rational> u(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < d; ++j)
                u[r] += binv[r][j] * Rational(static_cast<long>((*enter)[j]));
        std::optional<std::size_t> leave;
        Rational best_ratio;
        for (std::size_t r = 0; r < d; ++r) {
            if (u[r].sign() <= 0)
                continue;
            Rational ratio = x[r] / u[r];
            if (!leave || ratio < best_ratio || (ratio == best_ratio && cols[r] < cols[*leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (!leave)
            fail(ErrorKind::InvalidInput, "LP unbounded; sizes must be positive");
        const std::size_t r = *leave;
        degenerate_run = best_ratio.sign() == 0 ? degenerate_run + 1 : 0;

        Rational piv = u[r];
        for (std::size_t j = 0; j < d; ++j)
            binv[r][j] /= piv;
        x[r] /= piv;
        for (std::size_t k = 0; k < d; ++k) {
            if (k == r || u[k].sign() == 0)
                continue;
            Rational f = u[k];
            for (std::size_t j = 0; j < d; ++j)
                binv[k][j] -= f * binv[r][j];
            x[k] -= f * x[r];
        }
        cols[r] = *enter;
    }

    for (std::size_t r = 0; r < d; ++r) {
        if (x[r].sign() == 0)
            continue;
        out.weights[cols[r]] += x[r];
        out.value += x[r];
    }
    return out;
}

/// Checks the LP certificate: primal feasibility, y . p <= 1 over all
/// configurations (by pricing), and y . b = value.
inline bool verify_lp_certificate(const Instance& inst, const FractionalPacking& lp, const Limits& limits = {}) {
    const std::size_t d = inst.dimension();
    std::vector<Rational> sum(d);
    Rational value;
    for (const auto& [p, w] : lp.weights) {
        if (w.sign() <= 0 || !is_config(inst, p))
            return false;
        value += w;
        for (std::size_t i = 0; i < d; ++i)
            sum[i] += w * Rational(static_cast<long>(p[i]));
    }
    for (std::size_t i = 0; i < d; ++i)
        if (sum[i] != Rational(static_cast<long>(inst.multiplicities()[i])))
            return false;
    if (value != lp.value)
        return false;
    Rational yb;
    for (std::size_t i = 0; i < d; ++i)
        yb += lp.duals[i] * Rational(static_cast<long>(inst.multiplicities()[i]));
    return yb == lp.value && price(inst, lp.duals, limits).value <= Rational(1);
}

} // namespace vcone
