#include "vertexcone/knapsack.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vcone;

namespace {

Instance sizes(std::initializer_list<std::pair<long, long>> fr) {
    std::vector<Rational> s;
    for (auto [p, q] : fr)
        s.emplace_back(p, q);
    return Instance(s, {});
}

} // namespace

TEST(Enumerate, HalfThird) {
    auto c = enumerate_configs(sizes({{1, 2}, {1, 3}}));
    std::vector<Configuration> want{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {2, 0}};
    EXPECT_EQ(c, want);
}

TEST(Enumerate, SmallExamples) {
    EXPECT_EQ(enumerate_configs(sizes({{1, 1}})), (std::vector<Configuration>{{0}, {1}}));
    EXPECT_EQ(enumerate_configs(sizes({{1, 2}, {1, 2}})).size(), 6u);
}

TEST(Enumerate, CapFailsLoudly) {
    Limits lim;
    lim.config_cap = 5;
    try {
        enumerate_configs(sizes({{1, 2}, {1, 3}}), lim);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
    }
}

TEST(Enumerate, MatchesBoxScanAndIsDownwardClosed) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        std::size_t d = 1 + rng() % 3;
        std::vector<Rational> s;
        for (std::size_t i = 0; i < d; ++i) {
            long q = 2 + static_cast<long>(rng() % 12);
            long p = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q));
            s.emplace_back(p, q);
        }
        Instance inst(s, {});
        auto got = enumerate_configs(inst);
        std::vector<Configuration> want;
        Point box = unbounded_box(inst.row()), cur(d, 0);
        for (;;) {
            if (is_config(inst, cur))
                want.push_back(cur);
            std::size_t k = d;
            while (k > 0 && cur[k - 1] == box[k - 1])
                cur[--k] = 0;
            if (k == 0)
                break;
            ++cur[k - 1];
        }
        ASSERT_EQ(got, want);
        for (const auto& p : got)
            for (std::size_t i = 0; i < d; ++i)
                if (p[i] > 0) {
                    Point q = p;
                    --q[i];
                    ASSERT_TRUE(std::binary_search(got.begin(), got.end(), q));
                }
    }
}

TEST(Enumerate, ThreadedOutputIsIdentical) {
    Instance inst = sizes({{1, 7}, {2, 9}, {1, 5}});
    Limits lim;
    lim.threads = 4;
    EXPECT_EQ(enumerate_configs(inst, lim), enumerate_configs(inst));
}

TEST(IsConfig, Examples) {
    std::vector<Rational> s{Rational(1, 2), Rational(1, 3)};
    EXPECT_TRUE(is_config(s, {1, 1}));
    EXPECT_FALSE(is_config(s, {1, 2}));
    EXPECT_TRUE(is_config(s, {2, 0}));
    EXPECT_THROW(is_config(s, {-1, 0}), Error);
}

TEST(Instance, Validation) {
    EXPECT_THROW(Instance({Rational(3, 2)}, {}), Error);
    EXPECT_THROW(Instance({Rational(0)}, {}), Error);
    EXPECT_THROW(Instance({Rational(1, 2)}, {1, 2}), Error);
    EXPECT_THROW(Instance({Rational(1, 2)}, {-1}), Error);
    EXPECT_THROW(Instance({}, {}), Error);
    Instance u = Instance::unit_fractions({2, 3}, {5, 5});
    EXPECT_TRUE(u.is_unit_fraction());
    EXPECT_EQ(u.row().capacity, 6);
    EXPECT_EQ(u.volume({5, 5}), Rational(25, 6));
}
