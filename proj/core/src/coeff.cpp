#include "psc/coeff.hpp"

#include "text_cursor.hpp"

#include <algorithm>
#include <sstream>

namespace psc {

namespace {

long long chk_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("group exponent overflow");
    return r;
}

long long chk_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("group exponent overflow");
    return r;
}

long long mod_floor_ll(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

GroupElem group_zero(const GroupDesc& g) { return GroupElem(g.size(), 0); }

GroupElem group_reduce(const GroupDesc& g, GroupElem e) {
    if (e.size() != g.size()) throw std::invalid_argument("group element has wrong length");
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        e[g.free_rank + i] = mod_floor_ll(e[g.free_rank + i], g.torsion[i]);
    return e;
}

GroupElem group_add(const GroupDesc& g, const GroupElem& a, const GroupElem& b) {
    GroupElem r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = chk_add(a[i], b[i]);
    return group_reduce(g, std::move(r));
}

GroupElem group_neg(const GroupDesc& g, const GroupElem& a) {
    GroupElem r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = -a[i];
    return group_reduce(g, std::move(r));
}

Endo Endo::identity(std::size_t n) {
    Endo e;
    e.mat.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) e.mat[i][i] = 1;
    return e;
}

Endo Endo::scaling(long long c) {
    Endo e;
    e.mat = {{c}};
    return e;
}

std::string to_text(const PElem& p) {
    if (const auto* f = std::get_if<FactoredNat>(&p)) return f->value().get_str();
    if (const auto* n = std::get_if<NatAddElem>(&p)) return std::to_string(n->n);
    return "#" + std::to_string(std::get<MonoidElem>(p).idx);
}

// ---------------------------------------------------------------------------
// Dynamics

namespace {

GroupElem apply_matrix(const GroupDesc& g, const Endo& e, const GroupElem& v) {
    GroupElem r(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < g.size(); ++j) acc = chk_add(acc, chk_mul(e.mat[i][j], v[j]));
        r[i] = acc;
    }
    return group_reduce(g, std::move(r));
}

Endo compose(const GroupDesc& g, const Endo& a, const Endo& b) {
    std::size_t n = g.size();
    Endo c;
    c.mat.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc = chk_add(acc, chk_mul(a.mat[i][k], b.mat[k][j]));
            c.mat[i][j] = acc;
        }
    // keep torsion rows reduced so iterated compositions stay small
    for (std::size_t i = g.free_rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.mat[i][j] = mod_floor_ll(c.mat[i][j], g.torsion[i - g.free_rank]);
    return c;
}

}  // namespace

void Dynamics::validate_endo(const Endo& e, const std::string& what) const {
    std::size_t n = group.size();
    if (e.mat.size() != n) throw std::invalid_argument(what + ": endomorphism matrix has wrong size");
    for (const auto& row : e.mat)
        if (row.size() != n) throw std::invalid_argument(what + ": endomorphism matrix not square");
    // torsion generators must land in the torsion part with compatible order
    for (std::size_t j = group.free_rank; j < n; ++j) {
        long long order = group.torsion[j - group.free_rank];
        for (std::size_t i = 0; i < group.free_rank; ++i)
            if (e.mat[i][j] != 0)
                throw std::invalid_argument(what + ": torsion generator maps outside the torsion part");
        for (std::size_t i = group.free_rank; i < n; ++i)
            if (mod_floor_ll(chk_mul(order, e.mat[i][j]), group.torsion[i - group.free_rank]) != 0)
                throw std::invalid_argument(what + ": endomorphism ignores a torsion order");
    }
}

std::vector<GroupElem> Dynamics::torsion_elements() const {
    std::vector<GroupElem> out{group_zero(group)};
    for (std::size_t i = 0; i < group.torsion.size(); ++i) {
        std::vector<GroupElem> next;
        for (const auto& e : out)
            for (long long v = 0; v < group.torsion[i]; ++v) {
                GroupElem f = e;
                f[group.free_rank + i] = v;
                next.push_back(std::move(f));
            }
        out = std::move(next);
        if (out.size() > 65536) throw std::domain_error("torsion part too large to enumerate");
    }
    return out;
}

void Dynamics::check_injective(const Endo& e, const std::string& what) const {
    // free block must have nonzero determinant
    unsigned d = group.free_rank;
    if (d > 0) {
        std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < d; ++j) m[i][j] = Rat(static_cast<long>(e.mat[i][j]));
        Rat det = 1;
        for (unsigned col = 0; col < d; ++col) {
            unsigned piv = col;
            while (piv < d && m[piv][col] == 0) ++piv;
            if (piv == d) throw std::invalid_argument(what + ": endomorphism not injective on the free part");
            if (piv != col) {
                std::swap(m[piv], m[col]);
                det = -det;
            }
            det *= m[col][col];
            for (unsigned r = col + 1; r < d; ++r) {
                Rat f = m[r][col] / m[col][col];
                for (unsigned c = col; c < d; ++c) m[r][c] -= f * m[col][c];
            }
        }
        if (det == 0) throw std::invalid_argument(what + ": endomorphism not injective on the free part");
    }
    // kernel must meet the torsion subgroup trivially
    for (const auto& s : torsion_elements()) {
        if (s == group_zero(group)) continue;
        if (apply_matrix(group, e, s) == group_zero(group))
            throw std::invalid_argument(what + ": endomorphism kills a torsion element");
    }
}

Dynamics Dynamics::nat_mult(GroupDesc g, std::map<std::uint64_t, Endo> prime_theta) {
    Dynamics d;
    d.group = std::move(g);
    d.kind = PKind::NatMult;
    d.prime_theta_ = std::move(prime_theta);
    for (const auto& [p, e] : d.prime_theta_) {
        if (FactoredNat::of_value(p).factors.size() != 1 || FactoredNat::of_value(p).valuation(p) != 1)
            throw std::invalid_argument("nat_mult: " + std::to_string(p) + " is not prime");
        d.validate_endo(e, "theta_" + std::to_string(p));
        d.check_injective(e, "theta_" + std::to_string(p));
    }
    // commutativity gives theta_p . theta_q = theta_{pq} on generators
    for (const auto& [p, ep] : d.prime_theta_)
        for (const auto& [q, eq] : d.prime_theta_) {
            Endo pq = compose(d.group, ep, eq);
            Endo qp = compose(d.group, eq, ep);
            for (std::size_t j = 0; j < d.group.size(); ++j) {
                GroupElem gen = group_zero(d.group);
                gen[j] = 1;
                if (apply_matrix(d.group, pq, gen) != apply_matrix(d.group, qp, gen))
                    throw std::invalid_argument("nat_mult: theta_" + std::to_string(p) + " and theta_" +
                                                std::to_string(q) + " do not commute");
            }
        }
    return d;
}

Dynamics Dynamics::nat_add(GroupDesc g, Endo phi) {
    Dynamics d;
    d.group = std::move(g);
    d.kind = PKind::NatAdd;
    d.validate_endo(phi, "phi");
    d.check_injective(phi, "phi");
    d.phi_ = std::move(phi);
    return d;
}

Dynamics Dynamics::finite_monoid(GroupDesc g, std::vector<std::vector<std::uint32_t>> table,
                                 std::uint32_t identity, std::vector<Endo> theta) {
    Dynamics d;
    d.group = std::move(g);
    d.kind = PKind::FiniteMonoid;
    std::size_t n = table.size();
    if (n == 0 || identity >= n || theta.size() != n)
        throw std::invalid_argument("finite_monoid: malformed data");
    for (const auto& row : table) {
        if (row.size() != n) throw std::invalid_argument("finite_monoid: table not square");
        for (auto v : row)
            if (v >= n) throw std::invalid_argument("finite_monoid: table entry out of range");
    }
    for (std::uint32_t a = 0; a < n; ++a)
        if (table[identity][a] != a || table[a][identity] != a)
            throw std::invalid_argument("finite_monoid: identity is not neutral");
    d.table_ = std::move(table);
    d.identity_ = identity;
    for (std::size_t a = 0; a < n; ++a) {
        d.validate_endo(theta[a], "theta_" + std::to_string(a));
        d.check_injective(theta[a], "theta_" + std::to_string(a));
    }
    d.monoid_theta_ = std::move(theta);
    // theta_{ab} = theta_a . theta_b on generators
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
            Endo ab = compose(d.group, d.monoid_theta_[a], d.monoid_theta_[b]);
            for (std::size_t j = 0; j < d.group.size(); ++j) {
                GroupElem gen = group_zero(d.group);
                gen[j] = 1;
                if (apply_matrix(d.group, ab, gen) !=
                    apply_matrix(d.group, d.monoid_theta_[d.table_[a][b]], gen))
                    throw std::invalid_argument("finite_monoid: theta is not an action");
            }
        }
    return d;
}

Dynamics Dynamics::laurent_nat_mult(const std::vector<std::uint64_t>& primes) {
    std::map<std::uint64_t, Endo> theta;
    for (auto p : primes) theta.emplace(p, Endo::scaling(static_cast<long long>(p)));
    return nat_mult(GroupDesc::integers(), std::move(theta));
}

Dynamics Dynamics::cyclic_group_algebra(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    std::vector<Endo> theta(n, Endo::identity(0));
    return finite_monoid(GroupDesc::trivial(), std::move(table), 0, std::move(theta));
}

PElem Dynamics::p_identity() const {
    switch (kind) {
        case PKind::NatMult: return FactoredNat::one();
        case PKind::NatAdd: return NatAddElem{0};
        case PKind::FiniteMonoid: return MonoidElem{identity_};
    }
    throw std::logic_error("unreachable");
}

PElem Dynamics::p_mul(const PElem& a, const PElem& b) const {
    switch (kind) {
        case PKind::NatMult: return std::get<FactoredNat>(a) * std::get<FactoredNat>(b);
        case PKind::NatAdd: return NatAddElem{std::get<NatAddElem>(a).n + std::get<NatAddElem>(b).n};
        case PKind::FiniteMonoid:
            return MonoidElem{table_[std::get<MonoidElem>(a).idx][std::get<MonoidElem>(b).idx]};
    }
    throw std::logic_error("unreachable");
}

bool Dynamics::p_is_identity(const PElem& p) const { return p == p_identity(); }

Endo Dynamics::theta_matrix(const PElem& p) const {
    switch (kind) {
        case PKind::NatMult: {
            Endo acc = Endo::identity(group.size());
            for (const auto& [prime, e] : std::get<FactoredNat>(p).factors) {
                auto it = prime_theta_.find(prime);
                if (it == prime_theta_.end())
                    throw std::invalid_argument("dynamics has no endomorphism for prime " +
                                                std::to_string(prime));
                for (std::uint32_t i = 0; i < e; ++i) acc = compose(group, acc, it->second);
            }
            return acc;
        }
        case PKind::NatAdd: {
            Endo acc = Endo::identity(group.size());
            for (std::uint64_t i = 0; i < std::get<NatAddElem>(p).n; ++i) acc = compose(group, acc, *phi_);
            return acc;
        }
        case PKind::FiniteMonoid: return monoid_theta_[std::get<MonoidElem>(p).idx];
    }
    throw std::logic_error("unreachable");
}

GroupElem Dynamics::theta_apply(const PElem& p, const GroupElem& g) const {
    return apply_matrix(group, theta_matrix(p), group_reduce(group, g));
}

bool Dynamics::theta_in_image(const PElem& p, const GroupElem& g, GroupElem* preimage) const {
    Endo m = theta_matrix(p);
    unsigned d = group.free_rank;
    GroupElem target = group_reduce(group, g);

    // Solve the free block A w = v exactly over Q, then require integrality.
    GroupElem w(d, 0);
    if (d > 0) {
        std::vector<std::vector<Rat>> a(d, std::vector<Rat>(d + 1));
        for (unsigned i = 0; i < d; ++i) {
            for (unsigned j = 0; j < d; ++j) a[i][j] = Rat(static_cast<long>(m.mat[i][j]));
            a[i][d] = Rat(static_cast<long>(target[i]));
        }
        for (unsigned col = 0; col < d; ++col) {
            unsigned piv = col;
            while (piv < d && a[piv][col] == 0) ++piv;
            if (piv == d) throw std::logic_error("theta_in_image: singular free block");
            std::swap(a[piv], a[col]);
            for (unsigned r = 0; r < d; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Rat f = a[r][col] / a[col][col];
                for (unsigned c = col; c <= d; ++c) a[r][c] -= f * a[col][c];
            }
        }
        for (unsigned i = 0; i < d; ++i) {
            Rat wi = a[i][d] / a[i][i];
            if (wi.get_den() != 1) return false;
            if (!wi.get_num().fits_slong_p()) throw std::overflow_error("theta_in_image: huge preimage");
            w[i] = wi.get_num().get_si();
        }
    }

    // Any torsion completion must reproduce g exactly.
    for (const auto& s : torsion_elements()) {
        GroupElem candidate(group.size(), 0);
        for (unsigned i = 0; i < d; ++i) candidate[i] = w[i];
        for (std::size_t i = d; i < group.size(); ++i) candidate[i] = s[i];
        if (apply_matrix(group, m, candidate) == target) {
            if (preimage) *preimage = group_reduce(group, candidate);
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// CoeffElem

CoeffElem CoeffElem::scalar(const GroupDesc& g, const ExactScalar& c) {
    return monomial(group_zero(g), c);
}

CoeffElem CoeffElem::monomial(GroupElem g, ExactScalar c) {
    CoeffElem r;
    if (!c.is_zero()) r.support.emplace(std::move(g), std::move(c));
    return r;
}

CoeffElem CoeffElem::u_pow(long long k, ExactScalar c) { return monomial(GroupElem{k}, std::move(c)); }

void CoeffElem::add_term(const GroupElem& g, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = support.find(g);
    if (it == support.end()) {
        support.emplace(g, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) support.erase(it);
    }
}

CoeffElem operator+(const CoeffElem& a, const CoeffElem& b) {
    CoeffElem r = a;
    for (const auto& [g, c] : b.support) r.add_term(g, c);
    return r;
}

CoeffElem operator-(const CoeffElem& a, const CoeffElem& b) {
    CoeffElem r = a;
    for (const auto& [g, c] : b.support) r.add_term(g, -c);
    return r;
}

CoeffElem operator-(const CoeffElem& a) {
    CoeffElem r;
    for (const auto& [g, c] : a.support) r.support.emplace(g, -c);
    return r;
}

CoeffElem scale(const ExactScalar& c, const CoeffElem& a) {
    CoeffElem r;
    for (const auto& [g, x] : a.support) r.add_term(g, c * x);
    return r;
}

CoeffElem mul(const GroupDesc& desc, const CoeffElem& a, const CoeffElem& b) {
    CoeffElem r;
    for (const auto& [g, c] : a.support)
        for (const auto& [h, d] : b.support) r.add_term(group_add(desc, g, h), c * d);
    return r;
}

CoeffElem star(const GroupDesc& desc, const CoeffElem& a) {
    CoeffElem r;
    for (const auto& [g, c] : a.support) r.add_term(group_neg(desc, g), c.star());
    return r;
}

ExactScalar evaluate_at_one(const CoeffElem& a) {
    ExactScalar s;
    for (const auto& [g, c] : a.support) s += c;
    return s;
}

CoeffElem act(const Dynamics& d, const PElem& p, const CoeffElem& a) {
    CoeffElem r;
    for (const auto& [g, c] : a.support) r.add_term(d.theta_apply(p, g), c);
    return r;
}

CoeffElem cond_expectation(const Dynamics& d, const PElem& p, const CoeffElem& a) {
    CoeffElem r;
    for (const auto& [g, c] : a.support)
        if (d.theta_in_image(p, g)) r.add_term(g, c);
    return r;
}

CoeffElem transfer(const Dynamics& d, const PElem& p, const CoeffElem& a) {
    if (d.kind != PKind::NatMult || d.group.free_rank != 1 || !d.group.torsion.empty())
        throw std::domain_error("transfer: defined only for the Laurent model (G = Z, P = N^x)");
    Int pv = std::get<FactoredNat>(p).value();
    if (!pv.fits_slong_p()) throw std::overflow_error("transfer: semigroup element too large");
    long long pl = pv.get_si();
    CoeffElem r;
    for (const auto& [g, c] : a.support)
        if (g[0] % pl == 0) r.add_term(GroupElem{g[0] / pl}, c);
    return r;
}

CoeffElem inner_product(const Dynamics& d, const PElem& p, const CoeffElem& a, const CoeffElem& b) {
    CoeffElem prod = mul(d.group, star(d.group, a), b);
    CoeffElem r;
    for (const auto& [g, c] : prod.support) {
        GroupElem pre;
        if (d.theta_in_image(p, g, &pre)) r.add_term(pre, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_text(const CoeffElem& a, const GroupDesc& desc) {
    if (a.is_zero()) return "(0)";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : a.support) {
        if (!first) out << " + ";
        first = false;
        out << "(" << to_text(c) << ")";
        bool trivial = std::all_of(g.begin(), g.end(), [](long long v) { return v == 0; });
        if (trivial) continue;
        if (desc.free_rank == 1 && desc.torsion.empty()) {
            out << "*u^" << g[0];
        } else {
            out << "*g[";
            for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i];
            out << "]";
        }
    }
    return out.str();
}

CoeffElem parse_coeff(const std::string& text, const GroupDesc& desc) {
    detail::Cursor c{text};
    CoeffElem result;
    bool first = true;
    while (true) {
        int sign = 1;
        if (c.try_eat('-'))
            sign = -1;
        else if (!c.try_eat('+') && !first)
            break;
        if (c.done()) {
            if (first) break;
            c.fail("dangling sign");
        }
        first = false;
        ExactScalar coeff = ExactScalar::one();
        GroupElem g = group_zero(desc);
        bool any = false;
        do {
            if (c.try_word("u^")) {
                if (desc.free_rank != 1 || !desc.torsion.empty())
                    c.fail("'u^' requires the Laurent model G = Z");
                Int k = c.parse_int();
                if (!k.fits_slong_p()) c.fail("exponent too large");
                g = group_add(desc, g, GroupElem{k.get_si()});
            } else if (c.try_word("u")) {
                if (desc.free_rank != 1 || !desc.torsion.empty())
                    c.fail("'u' requires the Laurent model G = Z");
                g = group_add(desc, g, GroupElem{1});
            } else if (c.try_word("g[")) {
                GroupElem e;
                if (!c.try_eat(']')) {
                    do {
                        Int v = c.parse_int();
                        if (!v.fits_slong_p()) c.fail("coordinate too large");
                        e.push_back(v.get_si());
                    } while (c.try_eat(','));
                    c.expect(']');
                }
                if (e.size() != desc.size()) c.fail("group element has wrong length");
                g = group_add(desc, g, group_reduce(desc, e));
            } else if (c.try_word("ph(")) {
                Rat theta = c.parse_rational();
                c.expect(')');
                coeff *= ExactScalar::phase(theta);
            } else if (c.try_word("sqrt(")) {
                Rat x = c.parse_rational();
                c.expect(')');
                coeff *= ExactScalar::of(sqrt_positive(x));
            } else if (c.try_eat('(')) {
                // a parenthesized scalar subexpression
                std::size_t depth = 1;
                std::size_t start = c.pos;
                while (c.pos < c.s.size() && depth) {
                    if (c.s[c.pos] == '(') ++depth;
                    if (c.s[c.pos] == ')') --depth;
                    ++c.pos;
                }
                if (depth) c.fail("unbalanced parenthesis");
                coeff *= parse_scalar(std::string(c.s.substr(start, c.pos - 1 - start)));
            } else if (c.try_word("i")) {
                coeff *= ExactScalar::imaginary_unit();
            } else if (c.looks_like_number()) {
                coeff *= ExactScalar::of(c.parse_rational());
            } else {
                c.fail("expected coefficient factor");
            }
            any = true;
        } while (c.try_eat('*'));
        if (!any) c.fail("empty term");
        if (sign < 0) coeff = -coeff;
        result.add_term(g, coeff);
    }
    if (!c.done()) c.fail("trailing input");
    return result;
}

}  // namespace psc
