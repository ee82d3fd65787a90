#pragma once

// Exact integers and rationals plus the elementary number theory used by
// the group and lower-bound code: Bezout coefficients, modular inverses,
// the Chinese remainder theorem and Sylvester's sequence.

#include "vertexcone/error.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vcone {

using BigInt = mpz_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline bool fits_int64(const BigInt& v) { return v.fits_slong_p(); }

inline std::int64_t to_int64(const BigInt& v) {
    if (!v.fits_slong_p())
        fail(ErrorKind::ResourceLimit, "integer " + v.get_str() + " exceeds 64 bits");
    return v.get_si();
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Floor division and the matching nonnegative remainder (for positive m).
inline BigInt floor_div(const BigInt& a, const BigInt& m) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Exact fraction kept in canonical form: positive denominator, coprime
/// numerator and denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {} // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(const BigInt& v) : q_(v) {} // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            fail(ErrorKind::InvalidInput, "zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Accepts "p/q" or a plain integer "p"; surrounding whitespace is not allowed.
    static Rational parse(std::string_view text) {
        auto bad = [&] { fail(ErrorKind::Parse, "malformed fraction '" + std::string(text) + "'"); };
        if (text.empty())
            bad();
        auto slash = text.find('/');
        auto digits = [&](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
                s.remove_prefix(1);
            if (s.empty())
                return false;
            for (char c : s)
                if (c < '0' || c > '9')
                    return false;
            return true;
        };
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!digits(num, true) || !digits(den, false))
            bad();
        std::string n(num);
        if (!n.empty() && n[0] == '+')
            n.erase(0, 1);
        BigInt bn(n, 10), bd(std::string(den), 10);
        if (bd == 0)
            bad();
        return Rational(bn, bd);
    }

    const BigInt& num() const { return q_.get_num(); }
    const BigInt& den() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    BigInt floor() const { return floor_div(num(), den()); }
    BigInt ceil() const { return -floor_div(-num(), den()); }
    Rational frac() const { return Rational(mod(num(), den()), den()); }

    std::string str() const {
        if (is_integer())
            return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.sign() == 0)
            fail(ErrorKind::InvalidInput, "division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.num(), a.den()); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

/// A congruence class: 0 <= value < modulus.
struct Residue {
    BigInt value;
    BigInt modulus;

    Residue() : value(0), modulus(1) {}
    Residue(BigInt v, BigInt m) : modulus(std::move(m)) {
        if (modulus < 1)
            fail(ErrorKind::InvalidInput, "modulus must be >= 1");
        value = mod(v, modulus);
    }

    friend bool operator==(const Residue&, const Residue&) = default;
};

struct BezoutResult {
    BigInt gcd;
    std::vector<BigInt> coeffs;
};

/// gcd of all values together with coefficients c such that sum c_i v_i = gcd.
/// Coefficients come from chaining the iterative extended Euclid algorithm.
inline BezoutResult ext_gcd(const std::vector<BigInt>& values) {
    if (values.empty())
        fail(ErrorKind::InvalidInput, "ext_gcd of an empty list");
    bool all_zero = true;
    for (const auto& v : values)
        all_zero = all_zero && v == 0;
    if (all_zero)
        fail(ErrorKind::InvalidInput, "ext_gcd of an all-zero list");

    BezoutResult out{values[0], {BigInt(1)}};
    for (std::size_t k = 1; k < values.size(); ++k) {
        BigInt old_r = out.gcd, r = values[k];
        BigInt old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            BigInt q = old_r / r;
            std::swap(old_r, r);
            r -= q * old_r;
            std::swap(old_s, s);
            s -= q * old_s;
            std::swap(old_t, t);
            t -= q * old_t;
        }
        for (auto& c : out.coeffs)
            c *= old_s;
        out.coeffs.push_back(old_t);
        out.gcd = old_r;
    }
    if (out.gcd < 0) {
        out.gcd = -out.gcd;
        for (auto& c : out.coeffs)
            c = -c;
    }
    return out;
}

/// Inverse of x modulo a. Negative x is first reduced into [0, a).
inline Residue mod_inverse(const BigInt& x, const BigInt& a) {
    if (a < 2)
        fail(ErrorKind::InvalidInput, "mod_inverse needs modulus >= 2");
    BigInt xr = mod(x, a);
    auto bez = ext_gcd({xr == 0 ? BigInt(0) : xr, a});
    if (bez.gcd != 1)
        fail(ErrorKind::NotInvertible, x.get_str() + " has no inverse mod " + a.get_str());
    return Residue(bez.coeffs[0], a);
}

inline Residue mod_inverse(std::int64_t x, std::int64_t a) { return mod_inverse(big(x), big(a)); }

/// Solves x = r_j (mod m_j) for pairwise coprime moduli; returns x mod prod m_j.
inline Residue crt_solve(const std::vector<Residue>& residues) {
    for (std::size_t i = 0; i < residues.size(); ++i)
        for (std::size_t j = i + 1; j < residues.size(); ++j)
            if (gcd(residues[i].modulus, residues[j].modulus) != 1)
                fail(ErrorKind::InvalidInput, "crt moduli " + residues[i].modulus.get_str() + " and " +
                                                  residues[j].modulus.get_str() + " are not coprime");
    BigInt x = 0, m = 1;
    for (const auto& r : residues) {
        if (r.modulus == 1)
            continue;
        BigInt step = mod((r.value - x) * mod_inverse(m, r.modulus).value, r.modulus);
        x += m * step;
        m *= r.modulus;
    }
    return Residue(x, m);
}

/// S_1 = 2, S_n = 1 + S_1 * ... * S_{n-1}.
inline BigInt sylvester(std::int64_t n) {
    if (n < 1)
        fail(ErrorKind::InvalidInput, "sylvester index must be >= 1");
    BigInt product = 1, s = 2;
    for (std::int64_t j = 1; j <= n; ++j) {
        s = product + 1;
        product *= s;
    }
    return s;
}

inline std::vector<BigInt> sylvester_prefix(std::int64_t n) {
    std::vector<BigInt> out;
    BigInt product = 1;
    for (std::int64_t j = 1; j <= n; ++j) {
        out.push_back(product + 1);
        product *= out.back();
    }
    return out;
}

inline bool pairwise_coprime(const std::vector<BigInt>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (gcd(values[i], values[j]) != 1)
                return false;
    return true;
}

} // namespace vcone
