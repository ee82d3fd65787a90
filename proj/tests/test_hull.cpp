#include "vertexcone/hull.hpp"
#include "vertexcone/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vcone;

namespace {

Instance sizes(std::vector<std::pair<long, long>> fr) {
    std::vector<Rational> s;
    for (auto [p, q] : fr)
        s.emplace_back(p, q);
    return Instance(s, {});
}

HullOptions general(HullMode mode) { return {mode, false}; }

} // namespace

TEST(Hull, HalfThird) {
    auto v = hull_vertices(sizes({{1, 2}, {1, 3}}), general(HullMode::Incremental));
    EXPECT_EQ(v.vertices, (std::vector<Configuration>{{0, 0}, {0, 3}, {2, 0}}));
    EXPECT_FALSE(v.contains({1, 1}));
}

TEST(Hull, TwoThirdsOneThird) {
    for (auto mode : {HullMode::Incremental, HullMode::Direct}) {
        auto v = hull_vertices(sizes({{2, 3}, {1, 3}}), general(mode));
        EXPECT_EQ(v.vertices, (std::vector<Configuration>{{0, 0}, {0, 3}, {1, 0}, {1, 1}}));
    }
}

TEST(Hull, UnitFractionsFastPathAgreesWithGeneralRoute) {
    Instance inst = Instance::unit_fractions({3, 4, 5});
    auto fast = hull_vertices_ex(inst);
    EXPECT_TRUE(fast.fast_path);
    EXPECT_EQ(fast.vertices.vertices,
              (std::vector<Configuration>{{0, 0, 0}, {0, 0, 5}, {0, 4, 0}, {3, 0, 0}}));
    EXPECT_EQ(hull_vertices(inst, general(HullMode::Incremental)).vertices, fast.vertices.vertices);
    EXPECT_EQ(hull_vertices(inst, general(HullMode::Direct)).vertices, fast.vertices.vertices);
}

TEST(Hull, DimensionOne) {
    auto v = hull_vertices(sizes({{2, 5}}), general(HullMode::Incremental));
    EXPECT_EQ(v.vertices, (std::vector<Configuration>{{0}, {2}}));
}

TEST(Hull, MatchesBruteForceOnRandomInstances) {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 80) {
        std::size_t d = 2 + rng() % 2;
        std::vector<std::pair<long, long>> fr;
        for (std::size_t i = 0; i < d; ++i) {
            long q = 2 + static_cast<long>(rng() % 11);
            fr.emplace_back(1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q)), q);
        }
        Instance inst = sizes(fr);
        if (count_configs(inst) > (d == 2 ? 120u : 60u))
            continue;
        auto pts = enumerate_configs(inst);
        std::vector<Configuration> want;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (oracle::is_vertex(pts, j))
                want.push_back(pts[j]);
        auto inc = hull_vertices(inst, general(HullMode::Incremental));
        auto dir = hull_vertices(inst, general(HullMode::Direct));
        ASSERT_EQ(inc.vertices, want);
        ASSERT_EQ(dir.vertices, want);
        ASSERT_TRUE(inc.contains(Point(d, 0)));
        ++checked;
    }
}

TEST(Hull, IncrementalAndDirectAgreeInDimensionFour) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        std::vector<std::pair<long, long>> fr;
        for (int i = 0; i < 4; ++i) {
            long q = 2 + static_cast<long>(rng() % 8);
            fr.emplace_back(1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q)), q);
        }
        Instance inst = sizes(fr);
        ASSERT_EQ(hull_vertices(inst, general(HullMode::Incremental)).vertices,
                  hull_vertices(inst, general(HullMode::Direct)).vertices);
    }
}

TEST(Barycentric, Examples) {
    std::vector<Configuration> basis{{0, 0}, {2, 0}, {0, 3}};
    auto x = barycentric({1, 1}, basis);
    EXPECT_EQ(x.coords, (std::vector<Rational>{Rational(1, 6), Rational(1, 2), Rational(1, 3)}));
    EXPECT_EQ(x.recombine(), (Point{1, 1}));
    EXPECT_EQ(barycentric({2, 0}, basis).coords, (std::vector<Rational>{0, 1, 0}));
    try {
        barycentric({3, 2}, basis);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInSimplex);
    }
    try {
        barycentric({1, 0}, {{0, 0}, {1, 0}, {2, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularBasis);
    }
}

TEST(Barycentric, RecombinationOnRandomInstances) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 30; ++t) {
        std::vector<std::pair<long, long>> fr;
        for (int i = 0; i < 3; ++i) {
            long q = 2 + static_cast<long>(rng() % 9);
            fr.emplace_back(1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q)), q);
        }
        Instance inst = sizes(fr);
        auto v = hull_vertices(inst);
        for (const auto& p : enumerate_configs(inst)) {
            auto basis = containing_simplex(p, v);
            auto x = barycentric(p, basis);
            ASSERT_EQ(x.recombine(), p);
            Rational s;
            for (const auto& c : x.coords)
                s += c;
            ASSERT_EQ(s, Rational(1));
        }
    }
}
