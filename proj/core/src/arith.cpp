#include "psc/arith.hpp"

namespace psc {

FactoredNat FactoredNat::prime_power(std::uint64_t p, std::uint32_t e) {
    if (p < 2) throw std::invalid_argument("prime_power: p must be >= 2");
    FactoredNat n;
    if (e) n.factors[p] = e;
    return n;
}

FactoredNat FactoredNat::of_value(const Int& n) {
    if (n < 1) throw std::invalid_argument("FactoredNat::of_value: input must be >= 1");
    FactoredNat r;
    for (const auto& [p, e] : factor_positive(n)) {
        if (!p.fits_ulong_p()) throw std::domain_error("FactoredNat::of_value: prime too large");
        r.factors[p.get_ui()] = e;
    }
    return r;
}

Int FactoredNat::value() const {
    Int v = 1;
    for (const auto& [p, e] : factors) v *= pow_int(Int(static_cast<unsigned long>(p)), e);
    return v;
}

std::uint32_t FactoredNat::valuation(std::uint64_t p) const {
    auto it = factors.find(p);
    return it == factors.end() ? 0 : it->second;
}

std::uint64_t FactoredNat::largest_prime() const {
    if (is_one()) throw std::domain_error("largest_prime: argument is 1");
    return factors.rbegin()->first;
}

bool FactoredNat::divides(const FactoredNat& other) const {
    for (const auto& [p, e] : factors)
        if (other.valuation(p) < e) return false;
    return true;
}

FactoredNat FactoredNat::div_exact(const FactoredNat& d) const {
    if (!d.divides(*this)) throw std::domain_error("FactoredNat::div_exact: not divisible");
    FactoredNat r = *this;
    for (const auto& [p, e] : d.factors) {
        auto it = r.factors.find(p);
        if (it->second == e)
            r.factors.erase(it);
        else
            it->second -= e;
    }
    return r;
}

FactoredNat operator*(const FactoredNat& a, const FactoredNat& b) {
    FactoredNat r = a;
    for (const auto& [p, e] : b.factors) r.factors[p] += e;
    return r;
}

FactoredNat gcd(const FactoredNat& a, const FactoredNat& b) {
    FactoredNat r;
    for (const auto& [p, e] : a.factors) {
        std::uint32_t f = std::min(e, b.valuation(p));
        if (f) r.factors[p] = f;
    }
    return r;
}

FactoredNat lcm(const FactoredNat& a, const FactoredNat& b) {
    FactoredNat r = b;
    for (const auto& [p, e] : a.factors) {
        std::uint32_t& f = r.factors[p];
        f = std::max(f, e);
    }
    return r;
}

ArithProgression ArithProgression::make(const Int& r, const Int& m) {
    if (m <= 0) throw std::invalid_argument("ArithProgression: modulus must be positive");
    return {mod_floor(r, m), m};
}

std::optional<ArithProgression> progression_meet(const ArithProgression& a, const ArithProgression& b) {
    // solve a.residue + a.modulus * x = b.residue (mod b.modulus)
    auto x = solve_linear_congruence(a.modulus, b.residue - a.residue, b.modulus);
    if (!x) return std::nullopt;
    Int m = lcm_int(a.modulus, b.modulus);
    return ArithProgression::make(a.residue + a.modulus * *x, m);
}

bool progression_contains(const ArithProgression& a, const ArithProgression& b) {
    return mpz_divisible_p(b.modulus.get_mpz_t(), a.modulus.get_mpz_t()) &&
           mpz_divisible_p(Int(b.residue - a.residue).get_mpz_t(), a.modulus.get_mpz_t());
}

}  // namespace psc
