#pragma once

#include "psc/bicharacter.hpp"
#include "psc/coeff.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace psc {

/// Normalized, self-adjoint 2-cocycle xi : P x P -> A_sa used for twisting.
/// Both flags are re-checked on every evaluation; twisting is only offered
/// over commutative A (abelian G), which the Dynamics construction enforces.
class TwoCocycle {
public:
    static TwoCocycle zero();
    static TwoCocycle scalar_bicharacter(const Bicharacter& bc);
    static TwoCocycle from_function(std::function<CoeffElem(const PElem&, const PElem&)> f,
                                    bool scalar_valued);
    /// Same as base except the value at one ordered pair is shifted by delta.
    static TwoCocycle perturb(TwoCocycle base, PElem at_p, PElem at_q, CoeffElem delta);

    CoeffElem operator()(const Dynamics& d, const PElem& p, const PElem& q) const;
    bool scalar_valued() const { return scalar_; }

private:
    std::function<CoeffElem(const PElem&, const PElem&)> eval_;
    bool scalar_ = true;
};

/// Element a*1_p of a fiber, or a*exp(i marker)*1_p in a twisted system.
/// exp(i xi) is kept exactly as a phase when xi(p,q) is a rational multiple
/// of 1; other self-adjoint values accumulate in a formal symbolic exponent
/// which multiplies and conjugates but never mixes with the coefficient.
struct FiberElem {
    CoeffElem a;
    PElem p;
    std::string twist_tag;  // fibers with different tags never multiply
    CoeffElem marker;       // formal exponent; zero when absent

    static FiberElem make(CoeffElem a, PElem p, std::string tag = "untwisted");

    friend bool operator==(const FiberElem& x, const FiberElem& y) {
        return x.a == y.a && x.p == y.p && x.twist_tag == y.twist_tag && x.marker == y.marker;
    }
};

/// (a 1_p)(b 1_q) = a theta_p(b) 1_{pq}, scaled by exp(i xi(p,q)) when a
/// cocycle is supplied. Throws on mismatched twist tags.
FiberElem fiber_mul(const Dynamics& d, const TwoCocycle* xi, const FiberElem& x, const FiberElem& y);

struct TripleReport {
    std::uint64_t checked = 0;
    std::vector<std::array<PElem, 3>> failures;
    bool ok() const { return failures.empty(); }
};

/// Verifies ((x y) z) = (x (y z)) on basis fibers for each triple; the
/// failure set is empty iff d2(xi) vanishes on the tested triples.
TripleReport check_associativity(const Dynamics& d, const TwoCocycle& xi,
                                 const std::vector<std::array<PElem, 3>>& triples);

struct IsoSample {
    PElem p, q;
    CoeffElem a, b;
};

struct IsoReport {
    std::uint64_t checked = 0;
    std::vector<std::size_t> failed_samples;
    bool ok() const { return failed_samples.empty(); }
};

/// Checks that a 1_p^xi -> exp(i psi(p)) a 1_p^eta intertwines the fiber
/// multiplications on the sampled pairs; psi is symmetrized to (psi+psi*)/2
/// first. Succeeds iff xi - eta = d1(psi) on the sampled pairs.
IsoReport cohomologous_iso(const Dynamics& d, const TwoCocycle& xi, const TwoCocycle& eta,
                           const std::function<CoeffElem(const PElem&)>& psi,
                           const std::vector<IsoSample>& samples);

}  // namespace psc
