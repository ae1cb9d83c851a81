#pragma once

#include "psc/bicharacter.hpp"
#include "psc/coeff.hpp"
#include "psc/resolution.hpp"

#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace psc {

using PTuple = std::vector<PElem>;

/// Level-n inhomogeneous cochain: a single module element for n = 0, an
/// evaluator on n-tuples over P for n >= 1 (total on every queried tuple).
struct Cochain {
    int level = 0;
    CoeffElem value0;
    std::function<CoeffElem(const PTuple&)> eval;

    CoeffElem operator()(const PTuple& t) const;

    static Cochain constant0(CoeffElem a);
    static Cochain from_function(int level, std::function<CoeffElem(const PTuple&)> f);
    /// Table-backed cochain; tuples outside the table evaluate to 0.
    static Cochain from_table(int level, std::map<PTuple, CoeffElem> table);
};

/// The inhomogeneous differential evaluated on one (n+1)-tuple:
///   d0(a)(p)        = theta_p(a) - a,
///   dn(xi)(p1..pn1) = theta_{p1}(xi(p2..)) + sum_i (-1)^i xi(.., p_i p_{i+1}, ..)
///                     + (-1)^{n+1} xi(p1..pn).
CoeffElem differential(const Dynamics& d, const Cochain& c, const PTuple& tuple);

struct WindowReport {
    std::uint64_t checked = 0;
    std::vector<std::pair<PTuple, CoeffElem>> failures;
    bool ok() const { return failures.empty(); }
};

/// The homogeneous extension of an inhomogeneous cochain: the R-module map
/// F_n -> M with [tuple] -> c(tuple), applied to a resolution element. The
/// two complexes correspond through restriction/extension on basis tuples;
/// in particular cochain_apply(d, dc, e) = cochain_apply(d, c, boundary(e)).
CoeffElem cochain_apply(const DynFamily& fam, const Cochain& c, const BarElem<DynFamily>& e);

/// Lists tuples of the window where (d c)(tuple) != 0.
WindowReport is_cocycle(const Dynamics& d, const Cochain& c, const std::vector<PTuple>& window);

/// Lists tuples where c - d(psi) != 0; empty iff c is a coboundary of psi on
/// the window.
WindowReport coboundary_residual(const Dynamics& d, const Cochain& c, const Cochain& psi,
                                 const std::vector<PTuple>& window);

/// The 1-cocycle on [1..range] generated from arbitrary values at the primes
/// via xi(q) = alpha_{q/pm}(xi(pm)) + xi(q/pm), pm the largest prime factor;
/// xi(1) = 0. Values must be supplied for every prime <= range.
Cochain build_one_cocycle(const Dynamics& d, const std::map<std::uint64_t, CoeffElem>& prime_values,
                          std::uint64_t range);

/// The scalar 2-cocycle of a bicharacter as a level-2 cochain over dynamics d.
Cochain build_bicharacter_cochain(const Dynamics& d, const Bicharacter& bc);

/// (xi(p,q) - xi(q,p)) evaluated at z = 1 (sum of Laurent coefficients);
/// nonzero certifies a nonzero class in H^2.
ExactScalar obstruction_at_one(const Cochain& xi, const FactoredNat& p, const FactoredNat& q);

/// Certificate that every Laurent polynomial of degree <= degree_bound fixed
/// by all alpha_p (p in primes) is constant: each nonzero exponent escapes
/// the degree window under k -> p*k, while support(alpha_p(a)) = p*support(a).
struct H0Report {
    long long degree_bound = 0;
    std::uint64_t exponents_certified = 0;
    unsigned max_escape_power = 0;  // smallest j with |p^j k| > D, maximized over k
    bool only_constants = false;
};
H0Report h0_fixed_point_check(const std::vector<std::uint64_t>& primes, long long degree_bound);

// Window builders (NatMult dynamics): all n-tuples over [1..max_value], and
// all pairs (m, n) with m*n <= bound.
std::vector<PTuple> tuples_over_range(std::uint64_t max_value, int n);
std::vector<PTuple> pairs_with_product_bound(std::uint64_t bound);

// ---------------------------------------------------------------------------
// Root-of-unity value table for the 1-cocycle extension recursion
//   psi(1) = 0,  psi(z) = psi(z^p) - xi(p)(z)  on p^k-th roots of unity.
// Values are formal sums c * e^{i theta} * e^{2 pi i r}; no root-of-unity
// relations are applied, the table is reporting output only.

struct CycScalar {
    // (theta, r) -> coefficient, meaning c * e^{i theta} * e^{2 pi i r}
    std::map<std::pair<Rat, Rat>, QuadRat> terms;

    void add_term(const Rat& theta, const Rat& frac, const QuadRat& c);
    friend CycScalar operator-(const CycScalar& a, const CycScalar& b);
    friend bool operator==(const CycScalar& a, const CycScalar& b) { return a.terms == b.terms; }
};

std::string to_text(const CycScalar& s);

struct RootTable {
    std::uint64_t prime = 2;
    unsigned depth = 0;
    // values[k][j] = psi at z = e^{2 pi i j / p^k}, 0 <= j < p^k
    std::vector<std::vector<CycScalar>> values;
};

RootTable one_cocycle_root_table(const CoeffElem& xi_at_p, std::uint64_t p, unsigned depth);

}  // namespace psc
