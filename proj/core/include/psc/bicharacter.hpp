#pragma once

#include "psc/arith.hpp"
#include "psc/scalar.hpp"

namespace psc {

/// Scalar 2-cocycle on N^x determined by two distinct primes p, q and
/// rational parameters a, b, c, d:
///   xi(m, n) = (a*k + b*l) * (c*r + d*j)
/// where k, r are the p-adic and l, j the q-adic valuations of m and n.
/// It is additive in each variable, hence a 2-cocycle; its class is
/// nontrivial exactly when a*d != b*c.
struct Bicharacter {
    std::uint64_t p = 2, q = 3;
    Rat a, b, c, d;

    static Bicharacter zero() { return {}; }
    static Bicharacter make(std::uint64_t p, std::uint64_t q, Rat a, Rat b, Rat c, Rat d);

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    Rat value(const FactoredNat& m, const FactoredNat& n) const {
        Rat left = a * static_cast<long>(m.valuation(p)) + b * static_cast<long>(m.valuation(q));
        Rat right = c * static_cast<long>(n.valuation(p)) + d * static_cast<long>(n.valuation(q));
        return left * right;
    }

    /// exp(i*xi(m,n)) as an exact phase.
    ExactScalar phase(const FactoredNat& m, const FactoredNat& n) const {
        return ExactScalar::phase(value(m, n));
    }
};

inline Bicharacter Bicharacter::make(std::uint64_t p, std::uint64_t q, Rat a, Rat b, Rat c, Rat d) {
    if (p == q) throw std::invalid_argument("Bicharacter: p and q must be distinct primes");
    FactoredNat::of_value(p).largest_prime();  // validates p >= 2
    if (FactoredNat::of_value(p).factors.size() != 1 || FactoredNat::of_value(p).valuation(p) != 1 ||
        FactoredNat::of_value(q).factors.size() != 1 || FactoredNat::of_value(q).valuation(q) != 1)
        throw std::invalid_argument("Bicharacter: p and q must be prime");
    Bicharacter b2;
    b2.p = p;
    b2.q = q;
    b2.a = std::move(a);
    b2.b = std::move(b);
    b2.c = std::move(c);
    b2.d = std::move(d);
    return b2;
}

}  // namespace psc
