#include "psc/prodsys.hpp"

namespace psc {

namespace {

/// Value t when the element is t*1 with t rational real.
std::optional<Rat> as_rational_scalar(const CoeffElem& v) {
    if (v.is_zero()) return Rat(0);
    if (v.support.size() != 1) return std::nullopt;
    const auto& [g, c] = *v.support.begin();
    for (long long x : g)
        if (x != 0) return std::nullopt;
    Rat out;
    if (!c.is_rational(&out)) return std::nullopt;
    return out;
}

}  // namespace

TwoCocycle TwoCocycle::zero() {
    return from_function([](const PElem&, const PElem&) { return CoeffElem::zero(); }, true);
}

TwoCocycle TwoCocycle::scalar_bicharacter(const Bicharacter& bc) {
    return from_function(
        [bc](const PElem& p, const PElem& q) {
            const auto& m = std::get<FactoredNat>(p);
            const auto& n = std::get<FactoredNat>(q);
            Rat v = bc.value(m, n);
            if (v == 0) return CoeffElem::zero();
            return CoeffElem::monomial(GroupElem{0}, ExactScalar::of(v));
        },
        true);
}

TwoCocycle TwoCocycle::from_function(std::function<CoeffElem(const PElem&, const PElem&)> f,
                                     bool scalar_valued) {
    TwoCocycle c;
    c.eval_ = std::move(f);
    c.scalar_ = scalar_valued;
    return c;
}

TwoCocycle TwoCocycle::perturb(TwoCocycle base, PElem at_p, PElem at_q, CoeffElem delta) {
    auto inner = base.eval_;
    bool scalar = base.scalar_ && as_rational_scalar(delta).has_value();
    return from_function(
        [inner, at_p, at_q, delta](const PElem& p, const PElem& q) {
            CoeffElem v = inner(p, q);
            if (p == at_p && q == at_q) v += delta;
            return v;
        },
        scalar);
}

CoeffElem TwoCocycle::operator()(const Dynamics& d, const PElem& p, const PElem& q) const {
    CoeffElem v = eval_(p, q);
    if ((d.p_is_identity(p) || d.p_is_identity(q)) && !v.is_zero())
        throw std::domain_error("TwoCocycle: not normalized at the identity");
    if (!(star(d.group, v) == v)) throw std::domain_error("TwoCocycle: value is not self-adjoint");
    return v;
}

FiberElem FiberElem::make(CoeffElem a, PElem p, std::string tag) {
    FiberElem f;
    f.a = std::move(a);
    f.p = std::move(p);
    f.twist_tag = std::move(tag);
    return f;
}

FiberElem fiber_mul(const Dynamics& d, const TwoCocycle* xi, const FiberElem& x, const FiberElem& y) {
    if (x.twist_tag != y.twist_tag)
        throw std::invalid_argument("fiber_mul: mismatched twist tags '" + x.twist_tag + "' vs '" +
                                    y.twist_tag + "'");
    FiberElem out;
    out.twist_tag = x.twist_tag;
    out.p = d.p_mul(x.p, y.p);
    out.a = mul(d.group, x.a, act(d, x.p, y.a));
    out.marker = x.marker + act(d, x.p, y.marker);
    if (xi) {
        CoeffElem v = (*xi)(d, x.p, y.p);
        if (auto t = as_rational_scalar(v)) {
            if (*t != 0) out.a = scale(ExactScalar::phase(*t), out.a);
        } else {
            out.marker += v;
        }
    }
    return out;
}

TripleReport check_associativity(const Dynamics& d, const TwoCocycle& xi,
                                 const std::vector<std::array<PElem, 3>>& triples) {
    TripleReport r;
    const CoeffElem unit = CoeffElem::one(d.group);
    for (const auto& t : triples) {
        ++r.checked;
        FiberElem x = FiberElem::make(unit, t[0], "xi");
        FiberElem y = FiberElem::make(unit, t[1], "xi");
        FiberElem z = FiberElem::make(unit, t[2], "xi");
        FiberElem lhs = fiber_mul(d, &xi, fiber_mul(d, &xi, x, y), z);
        FiberElem rhs = fiber_mul(d, &xi, x, fiber_mul(d, &xi, y, z));
        if (!(lhs == rhs)) r.failures.push_back(t);
    }
    return r;
}

IsoReport cohomologous_iso(const Dynamics& d, const TwoCocycle& xi, const TwoCocycle& eta,
                           const std::function<CoeffElem(const PElem&)>& psi,
                           const std::vector<IsoSample>& samples) {
    auto psi_sym = [&](const PElem& p) {
        CoeffElem v = psi(p);
        CoeffElem sym = v + star(d.group, v);
        CoeffElem half;
        for (const auto& [g, c] : sym.support)
            half.add_term(g, c * ExactScalar::of(make_rat(1, 2)));
        return half;
    };
    auto map_fiber = [&](const FiberElem& x) {
        FiberElem out = x;
        out.twist_tag = "eta";
        CoeffElem v = psi_sym(x.p);
        if (auto t = as_rational_scalar(v)) {
            if (*t != 0) out.a = scale(ExactScalar::phase(*t), out.a);
        } else {
            out.marker += v;
        }
        return out;
    };
    IsoReport r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ++r.checked;
        const auto& s = samples[i];
        FiberElem x = FiberElem::make(s.a, s.p, "xi");
        FiberElem y = FiberElem::make(s.b, s.q, "xi");
        FiberElem lhs = map_fiber(fiber_mul(d, &xi, x, y));
        FiberElem rhs = fiber_mul(d, &eta, map_fiber(x), map_fiber(y));
        if (!(lhs == rhs)) r.failed_samples.push_back(i);
    }
    return r;
}

}  // namespace psc
