#include "psc/cohomology.hpp"

#include <sstream>

namespace psc {

CoeffElem Cochain::operator()(const PTuple& t) const {
    if (static_cast<int>(t.size()) != level)
        throw std::invalid_argument("Cochain: tuple length does not match level");
    if (level == 0) return value0;
    return eval(t);
}

Cochain Cochain::constant0(CoeffElem a) {
    Cochain c;
    c.level = 0;
    c.value0 = std::move(a);
    return c;
}

Cochain Cochain::from_function(int level, std::function<CoeffElem(const PTuple&)> f) {
    if (level < 1) throw std::invalid_argument("Cochain::from_function: level must be >= 1");
    Cochain c;
    c.level = level;
    c.eval = std::move(f);
    return c;
}

Cochain Cochain::from_table(int level, std::map<PTuple, CoeffElem> table) {
    auto shared = std::make_shared<std::map<PTuple, CoeffElem>>(std::move(table));
    return from_function(level, [shared](const PTuple& t) -> CoeffElem {
        auto it = shared->find(t);
        return it == shared->end() ? CoeffElem::zero() : it->second;
    });
}

CoeffElem differential(const Dynamics& d, const Cochain& c, const PTuple& tuple) {
    const int n = c.level;
    if (static_cast<int>(tuple.size()) != n + 1)
        throw std::invalid_argument("differential: tuple length must be level + 1");
    if (n == 0) return act(d, tuple[0], c.value0) - c.value0;

    CoeffElem out = act(d, tuple[0], c(PTuple(tuple.begin() + 1, tuple.end())));
    for (int i = 1; i <= n; ++i) {
        PTuple t;
        t.reserve(n);
        for (int j = 0; j + 1 < i; ++j) t.push_back(tuple[j]);
        t.push_back(d.p_mul(tuple[i - 1], tuple[i]));
        for (int j = i + 1; j <= n; ++j) t.push_back(tuple[j]);
        CoeffElem v = c(t);
        out = (i % 2) ? out - v : out + v;
    }
    CoeffElem last = c(PTuple(tuple.begin(), tuple.end() - 1));
    out = ((n + 1) % 2) ? out - last : out + last;
    return out;
}

CoeffElem cochain_apply(const DynFamily& fam, const Cochain& c, const BarElem<DynFamily>& e) {
    if (e.level != c.level)
        throw std::invalid_argument("cochain_apply: cochain level does not match element level");
    CoeffElem out;
    for (const auto& [tuple, x] : e.terms) out += module_act(fam, x, c(tuple));
    return out;
}

WindowReport is_cocycle(const Dynamics& d, const Cochain& c, const std::vector<PTuple>& window) {
    WindowReport r;
    for (const auto& t : window) {
        ++r.checked;
        CoeffElem v = differential(d, c, t);
        if (!v.is_zero()) r.failures.emplace_back(t, std::move(v));
    }
    return r;
}

WindowReport coboundary_residual(const Dynamics& d, const Cochain& c, const Cochain& psi,
                                 const std::vector<PTuple>& window) {
    if (psi.level != c.level - 1)
        throw std::invalid_argument("coboundary_residual: psi must live one level below c");
    WindowReport r;
    for (const auto& t : window) {
        ++r.checked;
        CoeffElem v = c(t) - differential(d, psi, t);
        if (!v.is_zero()) r.failures.emplace_back(t, std::move(v));
    }
    return r;
}

Cochain build_one_cocycle(const Dynamics& d, const std::map<std::uint64_t, CoeffElem>& prime_values,
                          std::uint64_t range) {
    if (d.kind != PKind::NatMult)
        throw std::invalid_argument("build_one_cocycle: needs N^x dynamics");
    std::map<std::uint64_t, CoeffElem> table;  // q -> xi(q)
    table[1] = CoeffElem::zero();
    for (std::uint64_t q = 2; q <= range; ++q) {
        FactoredNat f = FactoredNat::of_value(q);
        if (f.factors.size() == 1 && f.factors.begin()->second == 1) {
            auto it = prime_values.find(q);
            if (it == prime_values.end())
                throw std::invalid_argument("build_one_cocycle: missing value at prime " +
                                            std::to_string(q));
            table[q] = it->second;
        } else {
            std::uint64_t pm = f.largest_prime();
            std::uint64_t rest = q / pm;
            table[q] = act(d, FactoredNat::of_value(rest), table.at(pm)) + table.at(rest);
        }
    }
    std::map<PTuple, CoeffElem> keyed;
    for (auto& [q, v] : table) keyed.emplace(PTuple{FactoredNat::of_value(q)}, std::move(v));
    return Cochain::from_table(1, std::move(keyed));
}

Cochain build_bicharacter_cochain(const Dynamics& d, const Bicharacter& bc) {
    GroupDesc g = d.group;
    return Cochain::from_function(2, [bc, g](const PTuple& t) {
        const auto& m = std::get<FactoredNat>(t[0]);
        const auto& n = std::get<FactoredNat>(t[1]);
        return CoeffElem::scalar(g, ExactScalar::of(bc.value(m, n)));
    });
}

ExactScalar obstruction_at_one(const Cochain& xi, const FactoredNat& p, const FactoredNat& q) {
    if (xi.level != 2) throw std::invalid_argument("obstruction_at_one: needs a level-2 cochain");
    CoeffElem diff = xi(PTuple{p, q}) - xi(PTuple{q, p});
    return evaluate_at_one(diff);
}

H0Report h0_fixed_point_check(const std::vector<std::uint64_t>& primes, long long degree_bound) {
    if (primes.empty()) throw std::invalid_argument("h0_fixed_point_check: need at least one prime");
    for (auto p : primes)
        if (p < 2) throw std::invalid_argument("h0_fixed_point_check: primes must be >= 2");
    H0Report r;
    r.degree_bound = degree_bound;
    std::uint64_t p = primes.front();
    // For fixed a, support(a) = p * support(a); a nonzero exponent k then
    // forces the orbit k, pk, p^2 k, ... inside the support, which escapes
    // any degree bound. Record the escape power for each exponent.
    for (long long k = -degree_bound; k <= degree_bound; ++k) {
        if (k == 0) continue;
        unsigned j = 0;
        Int orbit = int_of(k);
        const Int bound = int_of(degree_bound);
        while (orbit >= -bound && orbit <= bound) {
            orbit *= static_cast<long>(p);
            ++j;
        }
        r.max_escape_power = std::max(r.max_escape_power, j);
        ++r.exponents_certified;
    }
    r.only_constants = (r.exponents_certified == 2 * static_cast<std::uint64_t>(degree_bound));
    return r;
}

std::vector<PTuple> tuples_over_range(std::uint64_t max_value, int n) {
    std::vector<FactoredNat> base;
    for (std::uint64_t v = 1; v <= max_value; ++v) base.push_back(FactoredNat::of_value(v));
    std::vector<PTuple> out{{}};
    for (int i = 0; i < n; ++i) {
        std::vector<PTuple> next;
        next.reserve(out.size() * base.size());
        for (const auto& t : out)
            for (const auto& b : base) {
                PTuple e = t;
                e.push_back(b);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<PTuple> pairs_with_product_bound(std::uint64_t bound) {
    std::vector<PTuple> out;
    for (std::uint64_t m = 1; m <= bound; ++m)
        for (std::uint64_t n = 1; m * n <= bound; ++n)
            out.push_back(PTuple{FactoredNat::of_value(m), FactoredNat::of_value(n)});
    return out;
}

// ---------------------------------------------------------------------------
// Root-of-unity recursion table

void CycScalar::add_term(const Rat& theta, const Rat& frac, const QuadRat& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(theta, frac);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

CycScalar operator-(const CycScalar& a, const CycScalar& b) {
    CycScalar r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k.first, k.second, -c);
    return r;
}

std::string to_text(const CycScalar& s) {
    if (s.terms.empty()) return "(0)";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : s.terms) {
        const auto& [theta, frac] = key;
        if (!first) out << " + ";
        first = false;
        ExactScalar piece = ExactScalar::of(c);
        out << to_text(theta == 0 ? piece : piece * ExactScalar::phase(theta));
        if (frac != 0) out << "*cyc(" << to_string(frac) << ")";
    }
    return out.str();
}

RootTable one_cocycle_root_table(const CoeffElem& xi_at_p, std::uint64_t p, unsigned depth) {
    for (const auto& [g, c] : xi_at_p.support)
        if (g.size() != 1)
            throw std::invalid_argument("one_cocycle_root_table: needs a Laurent polynomial");
    RootTable table;
    table.prime = p;
    table.depth = depth;
    table.values.resize(depth + 1);
    table.values[0].resize(1);  // psi(1) = 0
    Int pk = 1;
    for (unsigned k = 1; k <= depth; ++k) {
        Int pk_prev = pk;
        pk *= static_cast<long>(p);
        if (!pk.fits_ulong_p()) throw std::overflow_error("one_cocycle_root_table: table too deep");
        std::uint64_t count = pk.get_ui();
        table.values[k].resize(count);
        for (std::uint64_t j = 0; j < count; ++j) {
            // z = e^{2 pi i j / p^k}; z^p lives one row up
            std::uint64_t jp = j % pk_prev.get_ui();
            CycScalar v = table.values[k - 1][jp];
            // subtract xi(p)(z) = sum_g c_g z^g
            for (const auto& [g, c] : xi_at_p.support) {
                Rat frac = make_rat(int_of(g[0]) * Int(static_cast<unsigned long>(j)), pk);
                frac -= Rat(floor_div(frac.get_num(), frac.get_den()));  // reduce mod 1
                for (const auto& [theta, coef] : c.terms) v.add_term(theta, frac, -coef);
            }
            table.values[k][j] = std::move(v);
        }
    }
    return table;
}

}  // namespace psc
