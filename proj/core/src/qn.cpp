#include "psc/qn.hpp"

#include <algorithm>

namespace psc::qn {

bool operator<(const MonoKey& a, const MonoKey& b) {
    Int am = a.m.value(), bm = b.m.value();
    if (am != bm) return am < bm;
    Int an = a.n.value(), bn = b.n.value();
    if (an != bn) return an < bn;
    if (a.k != b.k) return a.k < b.k;
    return a.l < b.l;
}

std::optional<Monomial> make_monomial(ExactScalar c, Int k, FactoredNat m, FactoredNat n, Int l) {
    if (c.is_zero()) return std::nullopt;
    Int nv = n.value();
    Int j = floor_div(l, nv);
    if (j != 0) {
        l -= j * nv;
        k -= j * m.value();
    }
    return Monomial{std::move(c), MonoKey{std::move(k), std::move(m), std::move(n), std::move(l)}};
}

AlgebraElem AlgebraElem::one() { return u_power(0); }

AlgebraElem AlgebraElem::from_monomial(const std::optional<Monomial>& m) {
    AlgebraElem r;
    if (m) r.add_term(m->key, m->c);
    return r;
}

AlgebraElem AlgebraElem::u_power(const Int& k) {
    return from_monomial(make_monomial(ExactScalar::one(), k, FactoredNat::one(), FactoredNat::one(), 0));
}

AlgebraElem AlgebraElem::isometry(const FactoredNat& m) {
    return from_monomial(make_monomial(ExactScalar::one(), 0, m, FactoredNat::one(), 0));
}

AlgebraElem AlgebraElem::coisometry(const FactoredNat& n) {
    return from_monomial(make_monomial(ExactScalar::one(), 0, FactoredNat::one(), n, 0));
}

AlgebraElem AlgebraElem::diag_mono(const Int& k, const FactoredNat& m) {
    return from_monomial(make_monomial(ExactScalar::one(), k, m, m, k));
}

void AlgebraElem::add_term(const MonoKey& key, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

AlgebraElem operator+(const AlgebraElem& a, const AlgebraElem& b) {
    AlgebraElem r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, c);
    return r;
}

AlgebraElem operator-(const AlgebraElem& a, const AlgebraElem& b) {
    AlgebraElem r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, -c);
    return r;
}

AlgebraElem scale(const ExactScalar& c, const AlgebraElem& a) {
    AlgebraElem r;
    for (const auto& [k, x] : a.terms) r.add_term(k, c * x);
    return r;
}

// ---------------------------------------------------------------------------
// Multiplication. The product
//   (u^{k1} s_{m1} s_{n1}^* u^{-l1}) (u^{k2} s_{m2} s_{n2}^* u^{-l2})
// reduces through the middle word s_{n1}^* u^t s_{m2}, t = k2 - l1:
//   split   s_{n1} = e^{-i xi(g,a)} s_g s_a,  s_{m2} = e^{-i xi(g,b)} s_g s_b
//           with g = gcd(n1, m2), a = n1/g, b = m2/g,
//   cancel  s_g^* u^t s_g = u^{t/g}   (zero unless g | t),
//   swap    s_a^* u^{t'} s_b = e^{i(xi(b,a)-xi(a,b))} u^A s_b s_a^* u^{-x0}
//           where b*x0 = -t' (mod a), 0 <= x0 < a, A = (b*x0 + t')/a,
// then reassembles s_{m1} s_b = e^{i xi(m1,b)} s_{m1 b} and
// s_a^* s_{n2}^* = e^{-i xi(n2,a)} s_{n2 a}^* and pushes the u-powers out.

std::optional<Monomial> mul(const Monomial& x, const Monomial& y, const Bicharacter& xi) {
    const Int t = y.key.k - x.key.l;
    const FactoredNat g = gcd(x.key.n, y.key.m);
    const Int gv = g.value();
    if (mod_floor(t, gv) != 0) return std::nullopt;

    const FactoredNat alpha = x.key.n.div_exact(g);
    const FactoredNat beta = y.key.m.div_exact(g);
    const Int av = alpha.value(), bv = beta.value();
    const Int tp = t / gv;

    auto x0 = solve_linear_congruence(bv, -tp, av);
    if (!x0) throw std::logic_error("mul: coprime congruence unsolvable");
    const Int bigA = (bv * *x0 + tp) / av;

    Rat phase = xi.value(g, alpha) - xi.value(g, beta) + xi.value(beta, alpha) -
                xi.value(alpha, beta) + xi.value(x.key.m, beta) - xi.value(y.key.n, alpha);

    ExactScalar c = x.c * y.c;
    if (phase != 0) c *= ExactScalar::phase(phase);
    return make_monomial(std::move(c), x.key.k + x.key.m.value() * bigA, x.key.m * beta,
                         y.key.n * alpha, y.key.l + y.key.n.value() * *x0);
}

AlgebraElem mul(const AlgebraElem& x, const AlgebraElem& y, const Bicharacter& xi) {
    AlgebraElem r;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms)
            if (auto m = mul(Monomial{cx, kx}, Monomial{cy, ky}, xi)) r.add_term(m->key, m->c);
    return r;
}

std::optional<Monomial> mul_untwisted(const Monomial& x, const Monomial& y) {
    // Compose the partial affine maps l2 + n2 t -> k2 + m2 t and
    // l1 + n1 s -> k1 + m1 s directly.
    const Int n1 = x.key.n.value(), m2 = y.key.m.value();
    auto t0 = solve_linear_congruence(m2, x.key.l - y.key.k, n1);
    if (!t0) return std::nullopt;
    const FactoredNat g = gcd(x.key.n, y.key.m);
    const Int s0 = (y.key.k + m2 * *t0 - x.key.l) / n1;
    return make_monomial(x.c * y.c, x.key.k + x.key.m.value() * s0, x.key.m * y.key.m.div_exact(g),
                         y.key.n * x.key.n.div_exact(g), y.key.l + y.key.n.value() * *t0);
}

AlgebraElem mul_untwisted(const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem r;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms)
            if (auto m = mul_untwisted(Monomial{cx, kx}, Monomial{cy, ky})) r.add_term(m->key, m->c);
    return r;
}

AlgebraElem star(const AlgebraElem& x) {
    AlgebraElem r;
    for (const auto& [key, c] : x.terms)
        if (auto m = make_monomial(c.star(), key.l, key.n, key.m, key.k)) r.add_term(m->key, m->c);
    return r;
}

AlgebraElem refine(const Monomial& x, const FactoredNat& r, const Bicharacter& xi) {
    AlgebraElem out;
    Rat phase = xi.value(x.key.m, r) - xi.value(x.key.n, r);
    ExactScalar c = x.c;
    if (phase != 0) c *= ExactScalar::phase(phase);
    const Int mv = x.key.m.value(), nv = x.key.n.value(), rv = r.value();
    const FactoredNat mr = x.key.m * r, nr = x.key.n * r;
    for (Int j = 0; j < rv; ++j)
        if (auto t = make_monomial(c, x.key.k + j * mv, mr, nr, x.key.l + j * nv))
            out.add_term(t->key, t->c);
    return out;
}

bool is_zero(const AlgebraElem& x, const Bicharacter& xi) {
    // bucket by reduced degree class m/n
    std::map<std::pair<FactoredNat, FactoredNat>, std::vector<std::pair<MonoKey, ExactScalar>>> classes;
    for (const auto& [key, c] : x.terms) {
        FactoredNat d = gcd(key.m, key.n);
        classes[{key.m.div_exact(d), key.n.div_exact(d)}].emplace_back(key, c);
    }
    for (const auto& [cls, terms] : classes) {
        FactoredNat common = FactoredNat::one();
        for (const auto& [key, c] : terms) common = lcm(common, gcd(key.m, key.n));
        AlgebraElem accum;
        for (const auto& [key, c] : terms) {
            FactoredNat r = common.div_exact(gcd(key.m, key.n));
            for (const auto& [rk, rc] : refine(Monomial{c, key}, r, xi).terms) accum.add_term(rk, rc);
        }
        if (!accum.terms.empty()) return false;
    }
    return true;
}

bool equal(const AlgebraElem& x, const AlgebraElem& y, const Bicharacter& xi) {
    return is_zero(x - y, xi);
}

AlgebraElem expect_E(const AlgebraElem& x) {
    AlgebraElem r;
    for (const auto& [key, c] : x.terms)
        if (key.m == key.n) r.add_term(key, c);
    return r;
}

AlgebraElem expect_F(const AlgebraElem& x) {
    for (const auto& [key, c] : x.terms)
        if (!(key.m == key.n))
            throw RejectedInput("expect_F: input has terms of degree != 1; apply expect_E first");
    AlgebraElem r;
    for (const auto& [key, c] : x.terms)
        if (key.k == key.l) r.add_term(key, c);
    return r;
}

AlgebraElem expect_G(const AlgebraElem& x) { return expect_F(expect_E(x)); }

// ---------------------------------------------------------------------------
// Diagonal subalgebra

bool DiagonalElem::is_projection() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const auto& e) { return e.second.is_one(); });
}

DiagonalElem DiagonalElem::refine_to(const FactoredNat& finer) const {
    if (!level.divides(finer)) throw std::invalid_argument("refine_to: level must divide target");
    DiagonalElem out;
    out.level = finer;
    const Int step = level.value(), total = finer.value();
    for (const auto& [r, c] : entries)
        for (Int rho = r; rho < total; rho += step) out.entries.emplace(rho, c);
    return out;
}

DiagonalElem DiagonalElem::support_projection() const {
    DiagonalElem out;
    out.level = level;
    for (const auto& [r, c] : entries) out.entries.emplace(r, ExactScalar::one());
    return out;
}

DiagonalElem DiagonalElem::from_algebra(const AlgebraElem& x) {
    DiagonalElem out;
    out.level = FactoredNat::one();
    for (const auto& [key, c] : x.terms) {
        if (!key.is_diagonal())
            throw std::invalid_argument("DiagonalElem::from_algebra: non-diagonal term");
        out.level = lcm(out.level, key.m);
    }
    if (out.level.value() > 1000000)
        throw std::domain_error("DiagonalElem::from_algebra: diagonal level too large");
    const Int total = out.level.value();
    for (const auto& [key, c] : x.terms) {
        const Int step = key.m.value();
        for (Int rho = key.k; rho < total; rho += step) {
            auto it = out.entries.find(rho);
            if (it == out.entries.end()) {
                out.entries.emplace(rho, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) out.entries.erase(it);
            }
        }
    }
    return out;
}

AlgebraElem DiagonalElem::to_algebra() const {
    AlgebraElem out;
    for (const auto& [r, c] : entries)
        if (auto m = make_monomial(c, r, level, level, r)) out.add_term(m->key, m->c);
    return out;
}

bool operator==(const DiagonalElem& a, const DiagonalElem& b) {
    FactoredNat common = lcm(a.level, b.level);
    return a.refine_to(common).entries == b.refine_to(common).entries;
}

bool proj_leq(const Int& k, const FactoredNat& m, const Int& l, const FactoredNat& n) {
    return n.divides(m) && mod_floor(k - l, n.value()) == 0;
}

// ---------------------------------------------------------------------------
// Orthogonal subprojection search (the technical lemma behind the witness)

namespace {

struct Prog {
    Int residue;
    FactoredNat modulus;
    bool contains(const Prog& other) const {
        return proj_leq(other.residue, other.modulus, residue, modulus);
    }
};

/// Some residue class of lcm(inside.modulus, avoid.modulus) inside `inside`
/// and disjoint from `avoid`; exists whenever inside is not contained in avoid.
std::optional<Prog> progression_difference(const Prog& inside, const Prog& avoid) {
    FactoredNat big = lcm(inside.modulus, avoid.modulus);
    const Int total = big.value(), step = inside.modulus.value();
    const Int am = avoid.modulus.value();
    for (Int rho = mod_floor(inside.residue, step); rho < total; rho += step)
        if (mod_floor(rho - avoid.residue, am) != 0) return Prog{rho, big};
    return std::nullopt;
}

bool engine_leq(const Int& k, const FactoredNat& m, const DiagonalElem& Q, const Bicharacter& xi) {
    AlgebraElem e = AlgebraElem::diag_mono(k, m);
    return equal(mul(Q.to_algebra(), e, xi), e, xi);
}

bool engine_kills(const Int& k, const FactoredNat& m, const MonoKey& mono, const Bicharacter& xi) {
    AlgebraElem e = AlgebraElem::diag_mono(k, m);
    AlgebraElem mid = AlgebraElem::from_monomial(Monomial{ExactScalar::one(), mono});
    return is_zero(mul(mul(e, mid, xi), e, xi), xi);
}

}  // namespace

SubprojectionResult find_orthogonal_subprojection(const DiagonalElem& Q, const MonoKey& mono,
                                                  const Bicharacter& xi) {
    if (Q.is_zero_rep()) throw RejectedInput("find_orthogonal_subprojection: Q = 0");
    if (!Q.is_projection())
        throw RejectedInput("find_orthogonal_subprojection: Q is not a projection");
    if (mono.is_diagonal())
        throw RejectedInput("find_orthogonal_subprojection: monomial is diagonal (k0 = l0, m0 = n0)");

    // work below a single diagonal monomial of Q
    const Prog pp{Q.entries.begin()->first, Q.level};
    const Prog range{mod_floor(mono.k, mono.m.value()), mono.m};
    const Prog domain{mod_floor(mono.l, mono.n.value()), mono.n};

    auto finish = [&](const Prog& e, const char* branch) {
        if (!engine_leq(e.residue, e.modulus, Q, xi) || !engine_kills(e.residue, e.modulus, mono, xi))
            throw std::logic_error("find_orthogonal_subprojection: verification failed");
        return SubprojectionResult{e.residue, e.modulus, branch};
    };

    // not below the range projection: move into its complement
    if (auto e = progression_difference(pp, range)) return finish(*e, "range-complement");
    if (auto e = progression_difference(pp, domain)) return finish(*e, "domain-complement");

    // now pp lies under both; sandwich and inspect the partial isometry
    AlgebraElem ppa = AlgebraElem::diag_mono(pp.residue, pp.modulus);
    AlgebraElem mid = AlgebraElem::from_monomial(Monomial{ExactScalar::one(), mono});
    AlgebraElem v = mul(mul(ppa, mid, xi), ppa, xi);
    if (v.terms.empty()) return finish(pp, "sandwich-zero");
    if (v.terms.size() != 1)
        throw std::logic_error("find_orthogonal_subprojection: sandwich is not a monomial");
    const MonoKey& vk = v.terms.begin()->first;
    const Prog vrange{mod_floor(vk.k, vk.m.value()), vk.m};
    const Prog vdomain{mod_floor(vk.l, vk.n.value()), vk.n};
    if (auto e = progression_difference(pp, vdomain)) return finish(*e, "domain-shrink");
    if (auto e = progression_difference(pp, vrange)) return finish(*e, "range-shrink");

    // endgame: both projections equal pp, which forces m0 = n0 and k0 != l0;
    // pick r >= 2 coprime to k0 - l0 so that s_r^* u^{k0-l0} s_r = 0
    if (!(mono.m == mono.n) || mono.k == mono.l)
        throw std::logic_error("find_orthogonal_subprojection: endgame reached off-pattern");
    Int delta = mono.k - mono.l;
    for (std::uint64_t r = 2;; ++r) {
        if (gcd_int(Int(static_cast<unsigned long>(r)), delta) == 1) {
            Prog e{pp.residue, lcm(pp.modulus, FactoredNat::of_value(r))};
            return finish(e, "coprime-power");
        }
    }
}

// ---------------------------------------------------------------------------
// Exact pure-infiniteness witness

Witness pure_infiniteness_witness(const AlgebraElem& x, const Bicharacter& xi) {
    if (is_zero(x, xi)) throw RejectedInput("pure_infiniteness_witness: x = 0");

    AlgebraElem xxs = mul(x, star(x), xi);
    AlgebraElem gxx = expect_G(xxs);
    if (gxx.terms.empty())
        throw std::logic_error("internal inconsistency: G(x x*) = 0 for nonzero x");
    DiagonalElem diag = DiagonalElem::from_algebra(gxx);

    // diagonal entries must be positive rationals after phase cancellation
    DiagonalElem dinv;  // entrywise 1/sqrt
    dinv.level = diag.level;
    for (const auto& [r, c] : diag.entries) {
        Rat v;
        if (!c.is_positive_rational(&v))
            throw RejectedInput("pure_infiniteness_witness: diagonal entry of G(x x*) at residue " +
                                to_string(r) + " is not a positive rational: " + to_text(c));
        dinv.entries.emplace(r, ExactScalar::of(sqrt_positive(Rat(1) / v)));
    }
    DiagonalElem Q = diag.support_projection();
    AlgebraElem d_alg = dinv.to_algebra();

    // z = d x x* d with G(z) = d^2 G(x x*) = Q exactly
    AlgebraElem z = mul(mul(d_alg, xxs, xi), d_alg, xi);
    if (!(DiagonalElem::from_algebra(expect_G(z)) == Q))
        throw std::logic_error("internal inconsistency: G(d x x* d) != Q");

    std::vector<MonoKey> off;
    for (const auto& [key, c] : z.terms)
        if (!key.is_diagonal()) off.push_back(key);

    // shrink a diagonal projection e <= Q until it kills every off-diagonal
    // term of z; shrinking preserves terms already killed
    Witness w;
    w.level = diag.level;
    w.k = Q.entries.begin()->first;
    w.m = Q.level;
    for (const MonoKey& tau : off) {
        if (engine_kills(w.k, w.m, tau, xi)) continue;
        DiagonalElem cur;
        cur.level = w.m;
        cur.entries.emplace(w.k, ExactScalar::one());
        SubprojectionResult next = find_orthogonal_subprojection(cur, tau, xi);
        w.k = next.k;
        w.m = next.m;
        ++w.killed_terms;
    }
    for (const MonoKey& tau : off)
        if (!engine_kills(w.k, w.m, tau, xi))
            throw std::logic_error("pure_infiniteness_witness: off-diagonal term survived");

    AlgebraElem um = AlgebraElem::from_monomial(
        make_monomial(ExactScalar::one(), w.k, w.m, FactoredNat::one(), 0));  // u^k s_m
    w.T = mul(star(um), d_alg, xi);
    w.R = mul(mul(star(x), d_alg, xi), um, xi);

    if (!equal(mul(mul(w.T, x, xi), w.R, xi), AlgebraElem::one(), xi))
        throw std::logic_error("pure_infiniteness_witness: T x R != 1");
    return w;
}

}  // namespace psc::qn
