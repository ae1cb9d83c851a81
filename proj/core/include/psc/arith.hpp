#pragma once

#include "psc/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace psc {

/// Element of the multiplicative semigroup N^x, stored as prime -> exponent.
/// The empty map is 1. Products add exponents; values are never re-factored
/// once constructed.
struct FactoredNat {
    std::map<std::uint64_t, std::uint32_t> factors;

    static FactoredNat one() { return {}; }
    static FactoredNat prime_power(std::uint64_t p, std::uint32_t e);
    /// Factor a small positive integer by trial division.
    static FactoredNat of_value(const Int& n);
    static FactoredNat of_value(std::uint64_t n) { return of_value(Int(static_cast<unsigned long>(n))); }

    bool is_one() const { return factors.empty(); }
    Int value() const;
    std::uint32_t valuation(std::uint64_t p) const;
    std::uint64_t largest_prime() const;  // requires !is_one()

    bool divides(const FactoredNat& other) const;
    FactoredNat div_exact(const FactoredNat& d) const;

    friend FactoredNat operator*(const FactoredNat& a, const FactoredNat& b);
    FactoredNat& operator*=(const FactoredNat& b) { return *this = *this * b; }

    friend FactoredNat gcd(const FactoredNat& a, const FactoredNat& b);
    friend FactoredNat lcm(const FactoredNat& a, const FactoredNat& b);

    friend bool operator==(const FactoredNat& a, const FactoredNat& b) { return a.factors == b.factors; }
    // order by value; consistent with == since the factorization is unique
    friend bool operator<(const FactoredNat& a, const FactoredNat& b) { return a.value() < b.value(); }
};

/// The set residue + modulus*Z, canonical with 0 <= residue < modulus.
/// Models the diagonal projection u^k s_m s_m^* u^-k.
struct ArithProgression {
    Int residue;
    Int modulus;

    static ArithProgression make(const Int& r, const Int& m);

    bool contains_point(const Int& x) const { return mod_floor(x - residue, modulus) == 0; }

    friend bool operator==(const ArithProgression& a, const ArithProgression& b) {
        return a.residue == b.residue && a.modulus == b.modulus;
    }
};

/// Intersection of two progressions: a canonical progression with modulus
/// lcm, or empty when the CRT congruence is unsolvable.
std::optional<ArithProgression> progression_meet(const ArithProgression& a, const ArithProgression& b);

/// True iff b is a subset of a: modulus(a) | modulus(b) and
/// modulus(a) | residue(b) - residue(a).
bool progression_contains(const ArithProgression& a, const ArithProgression& b);

}  // namespace psc
