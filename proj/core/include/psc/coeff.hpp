#pragma once

#include "psc/arith.hpp"
#include "psc/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace psc {

// ---------------------------------------------------------------------------
// Finitely generated abelian groups G = Z^d x prod Z/n_i, elements as
// exponent vectors with torsion coordinates reduced.

struct GroupDesc {
    unsigned free_rank = 0;
    std::vector<long long> torsion;  // each entry >= 2

    std::size_t size() const { return free_rank + torsion.size(); }

    static GroupDesc integers() { return {1, {}}; }
    static GroupDesc trivial() { return {0, {}}; }
};

using GroupElem = std::vector<long long>;

GroupElem group_zero(const GroupDesc& g);
GroupElem group_reduce(const GroupDesc& g, GroupElem e);
GroupElem group_add(const GroupDesc& g, const GroupElem& a, const GroupElem& b);
GroupElem group_neg(const GroupDesc& g, const GroupElem& a);

/// Endomorphism of G as an integer matrix acting on exponent vectors;
/// column j is the image of the j-th generator. Torsion generators must map
/// into the torsion part with compatible orders.
struct Endo {
    std::vector<std::vector<long long>> mat;  // square, size() x size()

    static Endo identity(std::size_t n);
    static Endo scaling(long long c);  // on Z, the map k -> c*k
};

// ---------------------------------------------------------------------------
// Semigroup P: the multiplicative N^x on listed primes, the additive N, or a
// finite monoid given by its multiplication table.

struct NatAddElem {
    std::uint64_t n = 0;
    friend auto operator<=>(const NatAddElem&, const NatAddElem&) = default;
};

struct MonoidElem {
    std::uint32_t idx = 0;
    friend auto operator<=>(const MonoidElem&, const MonoidElem&) = default;
};

using PElem = std::variant<FactoredNat, NatAddElem, MonoidElem>;

enum class PKind { NatMult, NatAdd, FiniteMonoid };

std::string to_text(const PElem& p);

// ---------------------------------------------------------------------------
// Dynamics: an action theta of P on G by injective endomorphisms, given on
// semigroup generators. Injectivity and theta_p . theta_q = theta_{pq} are
// checked on construction.

class Dynamics {
public:
    GroupDesc group;
    PKind kind = PKind::NatMult;

    static Dynamics nat_mult(GroupDesc g, std::map<std::uint64_t, Endo> prime_theta);
    static Dynamics nat_add(GroupDesc g, Endo phi);
    static Dynamics finite_monoid(GroupDesc g, std::vector<std::vector<std::uint32_t>> table,
                                  std::uint32_t identity, std::vector<Endo> theta);

    /// G = Z with theta_p the scaling k -> p*k, for the listed primes.
    static Dynamics laurent_nat_mult(const std::vector<std::uint64_t>& primes);
    /// Trivial G, P the additive group Z/n as a finite monoid (group algebra).
    static Dynamics cyclic_group_algebra(std::uint32_t n);

    PElem p_identity() const;
    PElem p_mul(const PElem& a, const PElem& b) const;
    bool p_is_identity(const PElem& p) const;

    GroupElem theta_apply(const PElem& p, const GroupElem& g) const;
    /// Membership of g in theta_p(G); on success *preimage is the unique
    /// element mapping onto g.
    bool theta_in_image(const PElem& p, const GroupElem& g, GroupElem* preimage = nullptr) const;

    const std::map<std::uint64_t, Endo>& primes() const { return prime_theta_; }
    std::uint32_t monoid_size() const { return static_cast<std::uint32_t>(table_.size()); }
    std::uint32_t monoid_identity() const { return identity_; }
    std::uint32_t monoid_mul(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }

private:
    std::map<std::uint64_t, Endo> prime_theta_;        // NatMult
    std::optional<Endo> phi_;                          // NatAdd
    std::vector<std::vector<std::uint32_t>> table_;    // FiniteMonoid
    std::uint32_t identity_ = 0;
    std::vector<Endo> monoid_theta_;

    Endo theta_matrix(const PElem& p) const;
    void validate_endo(const Endo& e, const std::string& what) const;
    void check_injective(const Endo& e, const std::string& what) const;
    std::vector<GroupElem> torsion_elements() const;
};

// ---------------------------------------------------------------------------
// CoeffElem: the coefficient algebra A = C*(G) modeled by its dense group
// ring; Laurent polynomials in u when G = Z. Group-law-dependent operations
// take the Dynamics (or GroupDesc) explicitly.

struct CoeffElem {
    std::map<GroupElem, ExactScalar> support;  // zeros never stored

    static CoeffElem zero() { return {}; }
    static CoeffElem scalar(const GroupDesc& g, const ExactScalar& c);
    static CoeffElem one(const GroupDesc& g) { return scalar(g, ExactScalar::one()); }
    static CoeffElem monomial(GroupElem g, ExactScalar c);
    /// G = Z convenience: c * u^k.
    static CoeffElem u_pow(long long k, ExactScalar c = ExactScalar::one());

    bool is_zero() const { return support.empty(); }
    void add_term(const GroupElem& g, const ExactScalar& c);

    friend CoeffElem operator+(const CoeffElem& a, const CoeffElem& b);
    friend CoeffElem operator-(const CoeffElem& a, const CoeffElem& b);
    friend CoeffElem operator-(const CoeffElem& a);
    CoeffElem& operator+=(const CoeffElem& b) { return *this = *this + b; }
    CoeffElem& operator-=(const CoeffElem& b) { return *this = *this - b; }

    friend bool operator==(const CoeffElem& a, const CoeffElem& b) { return a.support == b.support; }
};

CoeffElem scale(const ExactScalar& c, const CoeffElem& a);
CoeffElem mul(const GroupDesc& g, const CoeffElem& a, const CoeffElem& b);
/// Adjoint: conjugate coefficients, invert group elements.
CoeffElem star(const GroupDesc& g, const CoeffElem& a);
/// Sum of all coefficients; evaluation at the trivial character (z = 1).
ExactScalar evaluate_at_one(const CoeffElem& a);

/// theta_p extended linearly: group element g goes to theta_p(g).
CoeffElem act(const Dynamics& d, const PElem& p, const CoeffElem& a);
/// E_p: keeps exactly the terms supported on theta_p(G), expressed in A.
CoeffElem cond_expectation(const Dynamics& d, const PElem& p, const CoeffElem& a);
/// Transfer operator for G = Z, N^x dynamics: L_p(u^k) = u^{k/p} if p | k,
/// else 0; an independent route to theta_p^{-1} E_p.
CoeffElem transfer(const Dynamics& d, const PElem& p, const CoeffElem& a);
/// <a 1_p, b 1_p>_p = theta_p^{-1} E_p(a* b).
CoeffElem inner_product(const Dynamics& d, const PElem& p, const CoeffElem& a, const CoeffElem& b);

/// Exact text form: "(1/2)*u^2 + (1)*u^-1" for G = Z, "(c)*g[1,0,2]" in
/// general; round-trips through parse_coeff.
std::string to_text(const CoeffElem& a, const GroupDesc& g);
CoeffElem parse_coeff(const std::string& text, const GroupDesc& g);

}  // namespace psc
