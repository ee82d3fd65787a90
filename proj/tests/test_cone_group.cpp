#include "vertexcone/cone_group.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace vcone;

namespace {

GroupElement el(std::initializer_list<long> v) {
    GroupElement g;
    for (auto x : v)
        g.residues.emplace_back(x);
    return g;
}

DiagonalBasis basis(std::initializer_list<long> a) {
    std::vector<BigInt> v;
    for (auto x : a)
        v.emplace_back(x);
    return DiagonalBasis(v);
}

// Every element of Pi cap Z^d, row-major.
std::vector<GroupElement> all_elements(const DiagonalBasis& b) {
    std::vector<GroupElement> out{group_zero(b)};
    for (std::size_t i = 0; i < b.dimension(); ++i) {
        std::vector<GroupElement> next;
        for (const auto& e : out)
            for (BigInt r = 0; r < b.denominators()[i]; ++r) {
                GroupElement f = e;
                f.residues[i] = r;
                next.push_back(f);
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST(ResidueMap, Examples) {
    auto b = basis({2, 3});
    EXPECT_EQ(residue_map(Point{3, 1}, b), el({1, 1}));
    EXPECT_EQ(residue_map(Point{2, 0}, b), el({0, 0}));
    EXPECT_EQ(residue_map(Point{4, 5}, b), el({0, 2}));
    EXPECT_THROW(residue_map(Point{-1, 0}, b), Error);
}

TEST(ResidueMap, DifferenceIsVertexCombination) {
    auto b = basis({4, 9, 5});
    for (long x = 0; x < 20; ++x)
        for (long y = 0; y < 20; y += 3)
            for (long z = 0; z < 12; z += 5) {
                std::vector<BigInt> v{x, y, z};
                auto r = residue_map(v, b);
                auto q = vertex_quotients(v, b);
                for (std::size_t i = 0; i < 3; ++i) {
                    ASSERT_GE(q[i], 0);
                    ASSERT_EQ(r.residues[i] + q[i] * b.denominators()[i], v[i]);
                }
            }
}

TEST(GroupAdd, Laws) {
    auto b = basis({3, 4});
    EXPECT_EQ(group_add(el({2, 3}), el({2, 2}), b), el({1, 1}));
    for (const auto& p : all_elements(b)) {
        EXPECT_EQ(group_add(p, group_zero(b), b), p);
        EXPECT_EQ(group_add(p, group_inverse(p, b), b), group_zero(b));
    }
    EXPECT_THROW(group_add(el({1}), el({1, 1}), b), Error);
    EXPECT_THROW(group_add(el({3, 0}), el({1, 1}), b), Error);
}

TEST(SizeOf, Examples) {
    std::vector<Rational> s{Rational(1, 3), Rational(1, 4)};
    EXPECT_EQ(size_of(Point{2, 1}, s), Rational(11, 12));
    EXPECT_EQ(size_of(Point{0, 0}, s), Rational(0));
    EXPECT_EQ(size_of(Point{3, 0}, s), Rational(1));
    EXPECT_EQ(size_of(Point{0, 4}, s), Rational(1));
}

TEST(FullGenerator, Examples) {
    auto b34 = basis({3, 4});
    EXPECT_EQ(full_generator(b34), el({2, 1}));
    EXPECT_EQ(size_of(full_generator(b34), b34), Rational(11, 12));
    auto b23 = basis({2, 3});
    EXPECT_EQ(full_generator(b23), el({1, 1}));
    EXPECT_EQ(size_of(full_generator(b23), b23), Rational(5, 6));
    EXPECT_THROW(full_generator(basis({2, 4})), Error);
}

TEST(FractionalSize, Examples) {
    auto b = basis({3, 4});
    EXPECT_EQ(element_of_fractional_size(b, 0), el({0, 0}));
    EXPECT_EQ(element_of_fractional_size(b, 11), el({2, 1}));
    EXPECT_EQ(element_of_fractional_size(b, 10), el({1, 2}));
    EXPECT_THROW(element_of_fractional_size(b, 12), Error);
    EXPECT_THROW(element_of_fractional_size(b, -1), Error);
}

TEST(FractionalSize, BijectionOnSmallBases) {
    for (auto b : {basis({3, 4}), basis({2, 3, 5}), basis({7, 9, 4}), basis({11, 13})}) {
        std::set<std::string> seen;
        for (BigInt k = 0; k < b.determinant(); ++k) {
            auto e = element_of_fractional_size(b, k);
            check_element(e, b);
            ASSERT_EQ(size_of(e, b).frac(), Rational(k, b.determinant()));
            ASSERT_EQ(fractional_size_index(e, b), k);
            seen.insert(e.str());
        }
        ASSERT_EQ(BigInt(static_cast<long>(seen.size())), b.determinant());
    }
}

TEST(Orbit, Examples) {
    auto b = basis({3, 4});
    EXPECT_EQ(generator_orbit(b, 1), el({2, 1}));
    EXPECT_EQ(generator_orbit(b, 12), el({0, 0}));
    auto two = generator_orbit(b, 2);
    EXPECT_EQ(two, el({1, 2}));
    EXPECT_EQ(size_of(two, b).frac(), Rational(10, 12));
}

TEST(Orbit, VisitsEveryElementOnce) {
    for (auto b : {basis({3, 4}), basis({5, 7, 8})}) {
        const auto g = full_generator(b);
        GroupElement acc = group_zero(b);
        std::set<std::string> seen;
        for (BigInt K = 0; K < b.determinant(); ++K) {
            ASSERT_EQ(generator_orbit(b, K), acc);
            ASSERT_EQ(size_of(acc, b).frac(), Rational(mod(b.determinant() - K, b.determinant()), b.determinant()));
            ASSERT_TRUE(seen.insert(acc.str()).second);
            acc = group_add(acc, g, b);
        }
        ASSERT_EQ(acc, group_zero(b));
    }
}

TEST(DiagonalBasis, NonCoprimeKeepsSizeAndResidues) {
    auto b = basis({2, 4});
    EXPECT_FALSE(b.coprime());
    EXPECT_EQ(b.determinant(), 8);
    EXPECT_EQ(b.cofactors(), (std::vector<BigInt>{4, 2}));
    EXPECT_EQ(residue_map(Point{5, 5}, b), el({1, 1}));
    EXPECT_EQ(size_of(el({1, 1}), b), Rational(3, 4));
    EXPECT_THROW(element_of_fractional_size(b, 1), Error);
    EXPECT_THROW(generator_orbit(b, 1), Error);
}
