#include "psc/rational.hpp"

#include <sstream>

namespace psc {

std::map<Int, unsigned> factor_positive(const Int& n) {
    if (n < 1) throw std::invalid_argument("factor_positive: input must be >= 1");
    std::map<Int, unsigned> out;
    Int rest = n;
    auto strip = [&](Int p) {  // by value: p may alias rest
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e) out[p] = e;
    };
    strip(2);
    Int p = 3;
    // trial division; bail out rather than return a wrong factorization
    static const long kTrialBound = 1000000;
    while (rest > 1 && p <= kTrialBound) {
        if (p * p > rest) {
            strip(rest);
            return out;
        }
        strip(p);
        p += 2;
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) {
            out[rest] += 1;
        } else {
            throw std::domain_error("factor_positive: composite cofactor beyond trial bound: " +
                                    rest.get_str());
        }
    }
    return out;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

bool QuadRat::is_rational(Rat* out) const {
    if (parts.empty()) {
        if (out) *out = 0;
        return true;
    }
    if (parts.size() != 1) return false;
    const auto& [rad, c] = *parts.begin();
    if (rad != 1 || !c.is_real()) return false;
    if (out) *out = c.re;
    return true;
}

bool QuadRat::is_gaussian(GaussRat* out) const {
    if (parts.empty()) {
        if (out) *out = GaussRat{};
        return true;
    }
    if (parts.size() != 1) return false;
    const auto& [rad, c] = *parts.begin();
    if (rad != 1) return false;
    if (out) *out = c;
    return true;
}

QuadRat QuadRat::conj() const {
    QuadRat r;
    for (const auto& [rad, c] : parts) r.parts.emplace(rad, c.conj());
    return r;
}

void QuadRat::add_part(const Int& rad, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = parts.find(rad);
    if (it == parts.end()) {
        parts.emplace(rad, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) parts.erase(it);
    }
}

QuadRat operator+(const QuadRat& a, const QuadRat& b) {
    QuadRat r = a;
    for (const auto& [rad, c] : b.parts) r.add_part(rad, c);
    return r;
}

QuadRat operator-(const QuadRat& a, const QuadRat& b) {
    QuadRat r = a;
    for (const auto& [rad, c] : b.parts) r.add_part(rad, -c);
    return r;
}

QuadRat operator-(const QuadRat& a) {
    QuadRat r;
    for (const auto& [rad, c] : a.parts) r.parts.emplace(rad, -c);
    return r;
}

QuadRat operator*(const QuadRat& a, const QuadRat& b) {
    // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g)) with g = gcd(d1,d2);
    // the product radicand is squarefree since d1/g and d2/g are coprime.
    QuadRat r;
    for (const auto& [d1, c1] : a.parts) {
        for (const auto& [d2, c2] : b.parts) {
            Int g = gcd_int(d1, d2);
            Int rad = (d1 / g) * (d2 / g);
            GaussRat c = c1 * c2;
            c.re *= g;
            c.im *= g;
            r.add_part(rad, c);
        }
    }
    return r;
}

QuadRat sqrt_positive(const Rat& x) {
    if (x <= 0) throw std::domain_error("sqrt_positive: input must be positive");
    Int pq = x.get_num() * x.get_den();
    Int s = 1, f = 1;
    for (const auto& [p, e] : factor_positive(pq)) {
        s *= pow_int(p, e / 2);
        if (e % 2) f *= p;
    }
    QuadRat r;
    r.add_part(f, GaussRat(make_rat(s, x.get_den())));
    return r;
}

}  // namespace psc
