#pragma once

#include "psc/arith.hpp"
#include "psc/bicharacter.hpp"
#include "psc/scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psc::qn {

/// Inputs outside the engine's exactness boundary (documented diagnostics).
struct RejectedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Key of the spanning monomial u^k s_m s_n^* u^-l, canonical with
/// 0 <= l < value(n); the shift u^{k-jm} s_m s_n^* u^{-(l-jn)} =
/// u^k s_m s_n^* u^-l is phase-free, so keys are unique on the spanning set.
struct MonoKey {
    Int k;
    FactoredNat m, n;
    Int l;

    friend bool operator==(const MonoKey& a, const MonoKey& b) {
        return a.k == b.k && a.m == b.m && a.n == b.n && a.l == b.l;
    }
    friend bool operator<(const MonoKey& a, const MonoKey& b);

    bool is_diagonal() const { return a_eq(); }
    bool a_eq() const { return m == n && k == l; }
    bool is_fixed_class() const { return m == n; }  // degree class 1
};

struct Monomial {
    ExactScalar c;
    MonoKey key;
};

/// Canonicalize (k, m, n, l) and attach the coefficient; zero coefficient
/// gives an empty optional.
std::optional<Monomial> make_monomial(ExactScalar c, Int k, FactoredNat m, FactoredNat n, Int l);

/// Finite linear combination of spanning monomials, merged on canonical keys.
struct AlgebraElem {
    std::map<MonoKey, ExactScalar> terms;

    static AlgebraElem zero() { return {}; }
    static AlgebraElem one();
    static AlgebraElem from_monomial(const std::optional<Monomial>& m);
    static AlgebraElem u_power(const Int& k);
    static AlgebraElem isometry(const FactoredNat& m);          // s_m
    static AlgebraElem coisometry(const FactoredNat& n);        // s_n^*
    static AlgebraElem diag_mono(const Int& k, const FactoredNat& m);  // u^k s_m s_m^* u^-k

    bool is_zero_rep() const { return terms.empty(); }  // zero as stored; see is_zero()
    void add_term(const MonoKey& key, const ExactScalar& c);

    friend AlgebraElem operator+(const AlgebraElem& a, const AlgebraElem& b);
    friend AlgebraElem operator-(const AlgebraElem& a, const AlgebraElem& b);
    friend bool operator==(const AlgebraElem& a, const AlgebraElem& b) { return a.terms == b.terms; }
};

AlgebraElem scale(const ExactScalar& c, const AlgebraElem& a);

/// Monomial product, reduced through the defining relations: with
/// t = k2 - l1 and g = gcd(n1, m2) the product is zero iff g does not
/// divide t, and otherwise a single canonical monomial whose phase is
/// assembled from the bicharacter along the rewriting chain.
std::optional<Monomial> mul(const Monomial& x, const Monomial& y, const Bicharacter& xi);
AlgebraElem mul(const AlgebraElem& x, const AlgebraElem& y, const Bicharacter& xi);

/// Untwisted product computed directly from the partial-affine composition;
/// must agree with mul under the zero bicharacter.
std::optional<Monomial> mul_untwisted(const Monomial& x, const Monomial& y);
AlgebraElem mul_untwisted(const AlgebraElem& x, const AlgebraElem& y);

/// (c u^k s_m s_n^* u^-l)^* = conj(c) u^l s_n s_m^* u^-k, re-canonicalized.
AlgebraElem star(const AlgebraElem& x);

/// The r-term refinement
///   u^k s_m s_n^* u^-l =
///     e^{i(xi(m,r)-xi(n,r))} sum_j u^{k+j m} s_{mr} s_{nr}^* u^{-(l+j n)}.
AlgebraElem refine(const Monomial& x, const FactoredNat& r, const Bicharacter& xi);

/// Per degree class, refine to the common level and compare coefficients;
/// sound and complete on the spanning set. is_zero(x) = equal(x, 0).
bool is_zero(const AlgebraElem& x, const Bicharacter& xi);
bool equal(const AlgebraElem& x, const AlgebraElem& y, const Bicharacter& xi);

// Conditional expectations: E kills m != n, F (on E's image) kills k != l,
// G = F . E lands in the diagonal.
AlgebraElem expect_E(const AlgebraElem& x);
AlgebraElem expect_F(const AlgebraElem& x);  // rejects terms of degree != 1
AlgebraElem expect_G(const AlgebraElem& x);

/// Element of the diagonal D at level M: sum_r c_r u^r s_M s_M^* u^-r with
/// residues 0 <= r < value(M); refining the level preserves the element.
struct DiagonalElem {
    FactoredNat level;
    std::map<Int, ExactScalar> entries;

    bool is_zero_rep() const { return entries.empty(); }
    bool is_projection() const;
    DiagonalElem refine_to(const FactoredNat& finer) const;
    DiagonalElem support_projection() const;

    static DiagonalElem from_algebra(const AlgebraElem& x);  // all terms diagonal
    AlgebraElem to_algebra() const;

    friend bool operator==(const DiagonalElem& a, const DiagonalElem& b);
};

/// u^k s_m s_m^* u^-k <= u^l s_n s_n^* u^-l iff n | m and n | k - l.
bool proj_leq(const Int& k, const FactoredNat& m, const Int& l, const FactoredNat& n);

/// Search for a nonzero diagonal projection Q and an
/// off-diagonal monomial key, produce (k, m) with
///   (i)  u^k s_m s_m^* u^-k <= Q, and
///   (ii) the sandwiched product with the monomial equal to zero,
/// both verified by the engine before returning.
struct SubprojectionResult {
    Int k;
    FactoredNat m;
    std::string branch;  // which case of the search produced it
};
SubprojectionResult find_orthogonal_subprojection(const DiagonalElem& Q, const MonoKey& mono,
                                                  const Bicharacter& xi);

/// Exact witness for pure infiniteness: T, R with T x R = 1 exactly,
/// following the conditional-expectation + diagonal-inverse construction;
/// inputs whose G(x x^*) has a non-rational or non-positive diagonal entry
/// are rejected with a diagnostic.
struct Witness {
    AlgebraElem T, R;
    Int k;           // chosen diagonal projection u^k s_m s_m^* u^-k
    FactoredNat m;
    FactoredNat level;  // diagonal level of G(x x^*)
    std::uint32_t killed_terms = 0;
};
Witness pure_infiniteness_witness(const AlgebraElem& x, const Bicharacter& xi);

// Text syntax, e.g. "(1/2)*ph(3/4)*u^2*s(6)*s*(4)*u^-1 + (1)". Products of
// generator letters are folded through mul with the supplied cocycle, so any
// well-formed word parses to its normal form.
AlgebraElem parse_element(const std::string& text, const Bicharacter& xi);
std::string to_text(const AlgebraElem& x);

}  // namespace psc::qn
