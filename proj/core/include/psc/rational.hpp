#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace psc {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized rational num/den; den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

/// mpz_class has no long long constructor; LP64 makes this lossless.
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Floor quotient, well defined for negative a; b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Representative of a mod b in [0, b); b > 0.
inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

struct ExtGcd {
    Int g, x, y;  // g = gcd(a,b) = a*x + b*y, g >= 0
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    ExtGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Smallest x in [0, m/g) with a*x = b (mod m), if the congruence is solvable.
/// m > 0. Solvable iff gcd(a, m) divides b.
inline std::optional<Int> solve_linear_congruence(const Int& a, const Int& b, const Int& m) {
    ExtGcd e = ext_gcd(a, m);
    if (!mpz_divisible_p(b.get_mpz_t(), e.g.get_mpz_t())) return std::nullopt;
    Int step = m / e.g;
    Int x = mod_floor(e.x * (b / e.g), step);
    return x;
}

/// Trial-division factorization of n >= 1. Throws if a composite cofactor
/// survives the trial bound; inputs here are desk-scale by construction.
std::map<Int, unsigned> factor_positive(const Int& n);

std::string to_string(const Int& n);
std::string to_string(const Rat& q);

/// Parses "a" or "a/b" with optional sign; throws on malformed input.
Rat parse_rat(const std::string& s);

// ---------------------------------------------------------------------------
// Gaussian rationals a + b*i.

struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return {re, -im}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

// ---------------------------------------------------------------------------
// QuadRat: finite sums  sum_d c_d * sqrt(d)  with c_d Gaussian rational and
// d >= 1 squarefree. Closed under ring operations; sqrt() of a positive
// rational is exact. Coefficients of distinct squarefree radicands are
// linearly independent over Q(i), so the zero test is sound.

struct QuadRat {
    std::map<Int, GaussRat> parts;  // squarefree radicand -> coefficient

    QuadRat() = default;
    QuadRat(GaussRat c) {
        if (!c.is_zero()) parts.emplace(Int(1), std::move(c));
    }
    QuadRat(Rat r) : QuadRat(GaussRat(std::move(r))) {}

    static QuadRat zero() { return {}; }
    static QuadRat one() { return QuadRat(Rat(1)); }

    bool is_zero() const { return parts.empty(); }

    /// True iff the value lies in Q (single rational part at radicand 1).
    bool is_rational(Rat* out = nullptr) const;

    bool is_gaussian(GaussRat* out = nullptr) const;

    QuadRat conj() const;

    void add_part(const Int& rad, const GaussRat& c);

    friend QuadRat operator+(const QuadRat& a, const QuadRat& b);
    friend QuadRat operator-(const QuadRat& a, const QuadRat& b);
    friend QuadRat operator-(const QuadRat& a);
    friend QuadRat operator*(const QuadRat& a, const QuadRat& b);
    QuadRat& operator+=(const QuadRat& b) { return *this = *this + b; }
    QuadRat& operator-=(const QuadRat& b) { return *this = *this - b; }
    QuadRat& operator*=(const QuadRat& b) { return *this = *this * b; }

    friend bool operator==(const QuadRat& a, const QuadRat& b) { return a.parts == b.parts; }
};

/// Exact square root of a positive rational, as an element of the quadratic
/// tower: sqrt(p/q) = (s/q) * sqrt(f) with p*q = s^2 * f, f squarefree.
QuadRat sqrt_positive(const Rat& x);

}  // namespace psc
