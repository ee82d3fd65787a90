#include "vertexcone/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vcone;

TEST(ExtGcd, SmallCases) {
    auto r = ext_gcd({BigInt(4), BigInt(3)});
    EXPECT_EQ(r.gcd, 1);
    EXPECT_EQ(r.coeffs, (std::vector<BigInt>{1, -1}));

    r = ext_gcd({BigInt(2), BigInt(4)});
    EXPECT_EQ(r.gcd, 2);
    EXPECT_EQ(r.coeffs, (std::vector<BigInt>{1, 0}));
}

TEST(ExtGcd, BezoutIdentityThreeValues) {
    std::vector<BigInt> v{6, 10, 15};
    auto r = ext_gcd(v);
    EXPECT_EQ(r.gcd, 1);
    BigInt s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += r.coeffs[i] * v[i];
    EXPECT_EQ(s, 1);
}

TEST(ExtGcd, NegativeAndZeroEntries) {
    std::vector<BigInt> v{0, -12, 18};
    auto r = ext_gcd(v);
    EXPECT_EQ(r.gcd, 6);
    BigInt s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += r.coeffs[i] * v[i];
    EXPECT_EQ(s, 6);
}

TEST(ExtGcd, Errors) {
    EXPECT_THROW(ext_gcd({}), Error);
    EXPECT_THROW(ext_gcd({BigInt(0), BigInt(0)}), Error);
}

TEST(ModInverse, Examples) {
    EXPECT_EQ(mod_inverse(3, 4).value, 3);
    EXPECT_EQ(mod_inverse(1, 97).value, 1);
    EXPECT_EQ(mod_inverse(-5, 37).value, mod_inverse(32, 37).value);
    try {
        mod_inverse(2, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
    }
}

TEST(ModInverse, ExhaustiveSmallModuli) {
    for (std::int64_t a = 2; a <= 300; ++a)
        for (std::int64_t x = 0; x < a; ++x) {
            if (std::gcd(x, a) != 1)
                continue;
            auto v = mod_inverse(x, a).value.get_si();
            ASSERT_EQ(x * v % a, 1) << x << " mod " << a;
            ASSERT_GE(v, 0);
            ASSERT_LT(v, a);
        }
}

TEST(ModInverse, RandomPairsUpTo10000) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5000; ++t) {
        std::int64_t a = 2 + static_cast<std::int64_t>(rng() % 9999);
        std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(a));
        if (std::gcd(x, a) != 1)
            continue;
        ASSERT_EQ(x * mod_inverse(x, a).value.get_si() % a, 1);
    }
}

TEST(Crt, Examples) {
    auto r = crt_solve({Residue(2, 3), Residue(1, 4)});
    EXPECT_EQ(r, Residue(5, 12));
    EXPECT_EQ(crt_solve({Residue(0, 7)}), Residue(0, 7));
    EXPECT_EQ(crt_solve({Residue(1, 2), Residue(1, 3), Residue(1, 5)}), Residue(1, 30));
    EXPECT_THROW(crt_solve({Residue(1, 4), Residue(1, 6)}), Error);
}

TEST(Crt, MatchesExhaustiveScan) {
    std::mt19937_64 rng(11);
    const std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
    for (int t = 0; t < 200; ++t) {
        std::vector<Residue> rs;
        std::int64_t m = 1;
        for (auto p : primes) {
            if (rng() % 2 || m * p > 100000)
                continue;
            std::int64_t q = p;
            while (rng() % 3 == 0 && m * q * p <= 100000)
                q *= p;
            rs.emplace_back(BigInt(static_cast<long>(rng() % 1000)), BigInt(static_cast<long>(q)));
            m *= q;
        }
        auto r = crt_solve(rs);
        ASSERT_EQ(r.modulus, m);
        std::int64_t hits = 0, at = -1;
        for (std::int64_t x = 0; x < m; ++x) {
            bool ok = true;
            for (const auto& c : rs)
                ok = ok && x % c.modulus.get_si() == c.value.get_si();
            if (ok) {
                ++hits;
                at = x;
            }
        }
        ASSERT_EQ(hits, 1);
        ASSERT_EQ(r.value, at);
    }
}

TEST(Sylvester, Values) {
    EXPECT_EQ(sylvester(1), 2);
    EXPECT_EQ(sylvester(2), 3);
    EXPECT_EQ(sylvester(3), 7);
    EXPECT_EQ(sylvester(4), 43);
    EXPECT_EQ(sylvester(5), 1807);
    EXPECT_EQ(sylvester(6), 3263443);
    EXPECT_THROW(sylvester(0), Error);
    auto prefix = sylvester_prefix(8);
    for (std::int64_t j = 1; j <= 8; ++j)
        EXPECT_EQ(prefix[static_cast<std::size_t>(j - 1)], sylvester(j));
}

TEST(Sylvester, ReciprocalSumIdentity) {
    for (std::int64_t j = 2; j <= 10; ++j) {
        Rational sum;
        for (std::int64_t i = 1; i < j; ++i)
            sum += Rational(BigInt(1), sylvester(i));
        EXPECT_EQ(sum, Rational(1) - Rational(BigInt(1), sylvester(j) - 1)) << j;
    }
}

TEST(Rational, CanonicalForm) {
    Rational r(BigInt(6), BigInt(-4));
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(r.floor(), -2);
    EXPECT_EQ(r.ceil(), -1);
    EXPECT_EQ(r.frac(), Rational(1, 2));
    EXPECT_THROW(Rational(1, 0), Error);
    EXPECT_THROW(Rational(1) / Rational(0), Error);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("1/2"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-4/6"), Rational(-2, 3));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    for (const char* bad : {"", "1/", "/2", "1/0", "a/b", "1.5", " 1/2", "1/-2"})
        EXPECT_THROW(Rational::parse(bad), Error) << bad;
}

TEST(Rational, FieldLawsOnRandomTriples) {
    std::mt19937_64 rng(3);
    auto draw = [&] {
        long n = static_cast<long>(rng() % 2001) - 1000;
        long d = static_cast<long>(rng() % 1000) + 1;
        return Rational(n, d);
    };
    for (int t = 0; t < 2000; ++t) {
        Rational a = draw(), b = draw(), c = draw();
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        Rational s = a + b * c;
        ASSERT_GT(s.den(), 0);
        ASSERT_EQ(gcd(s.num(), s.den()), s.num() == 0 ? s.den() : BigInt(1));
    }
}
