#pragma once

#include "psc/rational.hpp"

#include <map>
#include <string>

namespace psc {

/// Finite formal sum  sum_j c_j * e^{i theta_j}  with rational phase
/// exponents theta_j (radians) and coefficients c_j in the quadratic tower
/// over the Gaussian rationals. Distinct rational theta give linearly
/// independent units (Lindemann-Weierstrass), so term-wise comparison is a
/// sound equality test. Phase exponents add under multiplication; no
/// reduction mod 2*pi is attempted.
struct ExactScalar {
    std::map<Rat, QuadRat> terms;  // phase exponent -> coefficient, zeros never stored

    ExactScalar() = default;

    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return of(Rat(1)); }
    static ExactScalar of(const Rat& c) { return of(QuadRat(c)); }
    static ExactScalar of(const QuadRat& c);
    static ExactScalar imaginary_unit() { return of(QuadRat(GaussRat(Rat(0), Rat(1)))); }
    /// e^{i theta}
    static ExactScalar phase(const Rat& theta);

    bool is_zero() const { return terms.empty(); }
    bool is_one() const { return *this == one(); }

    /// Complex conjugate: conjugate coefficients, negate phase exponents.
    ExactScalar star() const;

    bool is_rational(Rat* out = nullptr) const;
    bool is_positive_rational(Rat* out = nullptr) const;
    bool is_self_adjoint() const { return star() == *this; }

    void add_term(const Rat& theta, const QuadRat& c);

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
    ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
    ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms == b.terms; }
};

/// |x|^2 = x * conj(x).
inline ExactScalar abs_squared(const ExactScalar& x) { return x * x.star(); }

/// Canonical exact text form, e.g. "(1/2-3/4*i)*sqrt(2)*ph(5/6) + (1)".
/// Coefficients print as exact rationals, phases as "ph(p/q)" meaning
/// e^{i p/q}. Parsed back by parse_scalar.
std::string to_text(const ExactScalar& s);

ExactScalar parse_scalar(const std::string& text);

}  // namespace psc
