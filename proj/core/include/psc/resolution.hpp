#pragma once

#include "psc/coeff.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace psc {

// ---------------------------------------------------------------------------
// Skew-product ring R = ZG x_theta P, spanned by pairs (g, p) = g*1_p with
// multiplication (g p)(h q) = (g theta_p(h))(pq).

struct SkewRingElem {
    std::map<std::pair<GroupElem, PElem>, ExactScalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const std::pair<GroupElem, PElem>& key, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend SkewRingElem operator+(const SkewRingElem& a, const SkewRingElem& b) {
        SkewRingElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, c);
        return r;
    }
    friend SkewRingElem operator-(const SkewRingElem& a, const SkewRingElem& b) {
        SkewRingElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, -c);
        return r;
    }
    friend bool operator==(const SkewRingElem& a, const SkewRingElem& b) { return a.terms == b.terms; }
};

/// The family of product systems coming from dynamics (G, P, theta): free
/// rank-one fibers over A = C*(G), ring R the skew product, Psi(g 1_p) = g.
class DynFamily {
public:
    using P = PElem;
    using Ring = SkewRingElem;
    using Mod = CoeffElem;
    static constexpr bool free_fibers = true;

    explicit DynFamily(Dynamics d) : dyn(std::move(d)) {}
    Dynamics dyn;

    P p_identity() const { return dyn.p_identity(); }
    P p_mul(const P& a, const P& b) const { return dyn.p_mul(a, b); }

    Ring from_part(const P& p, const Mod& a) const {
        Ring r;
        for (const auto& [g, c] : a.support) r.add_term({g, p}, c);
        return r;
    }
    Ring one(const P& p) const { return from_part(p, Mod::one(dyn.group)); }
    Ring embed(const Mod& a) const { return from_part(p_identity(), a); }

    Ring ring_mul(const Ring& x, const Ring& y) const {
        Ring r;
        for (const auto& [kx, cx] : x.terms)
            for (const auto& [ky, cy] : y.terms) {
                GroupElem g = group_add(dyn.group, kx.first, dyn.theta_apply(kx.second, ky.first));
                r.add_term({std::move(g), p_mul(kx.second, ky.second)}, cx * cy);
            }
        return r;
    }

    Mod psi(const Ring& x) const {
        Mod m;
        for (const auto& [k, c] : x.terms) m.add_term(k.first, c);
        return m;
    }

    /// Decomposition of x by its P-grade, each piece written as a*1_p.
    std::vector<std::pair<P, Mod>> grade_parts(const Ring& x) const {
        std::map<P, Mod> buckets;
        for (const auto& [k, c] : x.terms) buckets[k.second].add_term(k.first, c);
        return {buckets.begin(), buckets.end()};
    }
};

// ---------------------------------------------------------------------------
// Path algebra of a finite directed graph: ring spanned by directed paths
// graded by length, multiplication by concatenation, Psi(mu) = source(mu).

struct Graph {
    struct Edge {
        std::uint32_t range, source;  // the edge points source -> range
    };
    std::uint32_t vertices = 0;
    std::vector<Edge> edges;

    /// Three vertices 0,1,2 with a loop at 0 and a 3-cycle.
    static Graph triangle_with_loop();
};

struct GraphPath {
    // edges listed in travel order: source(mu) = source of the first edge,
    // range(mu) = range of the last; an empty path is the vertex itself.
    // Invariant: vertex == source(mu).
    std::vector<std::uint32_t> edges;
    std::uint32_t vertex = 0;

    friend auto operator<=>(const GraphPath&, const GraphPath&) = default;
};

struct PathRingElem {
    std::map<GraphPath, ExactScalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const GraphPath& key, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend PathRingElem operator+(const PathRingElem& a, const PathRingElem& b) {
        PathRingElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, c);
        return r;
    }
    friend PathRingElem operator-(const PathRingElem& a, const PathRingElem& b) {
        PathRingElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, -c);
        return r;
    }
    friend bool operator==(const PathRingElem& a, const PathRingElem& b) { return a.terms == b.terms; }
};

struct VertexElem {
    std::map<std::uint32_t, ExactScalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(std::uint32_t v, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(v);
        if (it == terms.end()) {
            terms.emplace(v, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend VertexElem operator+(const VertexElem& a, const VertexElem& b) {
        VertexElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, c);
        return r;
    }
    friend VertexElem operator-(const VertexElem& a, const VertexElem& b) {
        VertexElem r = a;
        for (const auto& [k, c] : b.terms) r.add_term(k, -c);
        return r;
    }
    friend bool operator==(const VertexElem& a, const VertexElem& b) { return a.terms == b.terms; }
};

class GraphFamily {
public:
    using P = NatAddElem;
    using Ring = PathRingElem;
    using Mod = VertexElem;
    static constexpr bool free_fibers = false;

    explicit GraphFamily(Graph g) : graph(std::move(g)) {}
    Graph graph;

    P p_identity() const { return NatAddElem{0}; }
    P p_mul(const P& a, const P& b) const { return NatAddElem{a.n + b.n}; }

    std::uint32_t range_of(const GraphPath& mu) const {
        return mu.edges.empty() ? mu.vertex : graph.edges[mu.edges.back()].range;
    }

    std::vector<GraphPath> paths_of_length(std::uint64_t n) const;

    /// Unit sections 1_n = (1_1)^n with 1_1 = sum_e e / outdeg(source(e)).
    /// The weights make Psi(1_n) = 1, which closes the resolution at the
    /// bottom: Psi(x 1_p) = Psi(x) Psi(1_p) = Psi(x). Requires every vertex
    /// to emit at least one edge.
    Ring one(const P& p) const {
        if (p.n == 0) {
            Ring unit;
            for (std::uint32_t v = 0; v < graph.vertices; ++v)
                unit.add_term(GraphPath{{}, v}, ExactScalar::one());
            return unit;
        }
        std::vector<std::uint32_t> outdeg(graph.vertices, 0);
        for (const auto& e : graph.edges) ++outdeg[e.source];
        Ring step;
        for (std::uint32_t e = 0; e < graph.edges.size(); ++e) {
            std::uint32_t v = graph.edges[e].source;
            step.add_term(GraphPath{{e}, v},
                          ExactScalar::of(make_rat(1, static_cast<long>(outdeg[v]))));
        }
        for (std::uint32_t v = 0; v < graph.vertices; ++v)
            if (outdeg[v] == 0)
                throw std::domain_error("graph unit section needs an outgoing edge at every vertex");
        Ring r = step;
        for (std::uint64_t i = 1; i < p.n; ++i) r = ring_mul(r, step);
        return r;
    }

    Ring embed(const Mod& a) const {
        Ring r;
        for (const auto& [v, c] : a.terms) r.add_term(GraphPath{{}, v}, c);
        return r;
    }

    /// mu nu = "travel mu, then nu", defined when range(mu) = source(nu);
    /// vertices act as right units at the range, so Psi(x y) = Psi(x Psi(y))
    /// holds with Psi = source.
    Ring ring_mul(const Ring& x, const Ring& y) const {
        Ring r;
        for (const auto& [mu, cx] : x.terms)
            for (const auto& [nu, cy] : y.terms) {
                if (range_of(mu) != nu.vertex) continue;  // concatenation undefined
                GraphPath prod;
                prod.edges = mu.edges;
                prod.edges.insert(prod.edges.end(), nu.edges.begin(), nu.edges.end());
                prod.vertex = mu.vertex;
                r.add_term(prod, cx * cy);
            }
        return r;
    }

    Mod psi(const Ring& x) const {
        Mod m;
        for (const auto& [mu, c] : x.terms) m.add_term(mu.vertex, c);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Bar-type free resolution ... -> F_2 -> F_1 -> F_0 -> M -> 0 with free
// R-module basis tuples [p_1,...,p_n] and splitting homotopies.

template <class Fam>
struct BarElem {
    using Tuple = std::vector<typename Fam::P>;
    int level = 0;
    std::map<Tuple, typename Fam::Ring> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Tuple& t, const typename Fam::Ring& x) {
        if (x.is_zero()) return;
        auto it = terms.find(t);
        if (it == terms.end()) {
            terms.emplace(t, x);
        } else {
            it->second = it->second + x;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend bool operator==(const BarElem& a, const BarElem& b) {
        return a.level == b.level && a.terms == b.terms;
    }
};

/// The boundary on levels >= 1:
///   d(x [p1..pn]) = x 1_{p1} [p2..pn]
///                 + sum_i (-1)^i x [.., p_i p_{i+1}, ..]
///                 + (-1)^n x [p1..p_{n-1}].
template <class Fam>
BarElem<Fam> bar_boundary(const Fam& fam, const BarElem<Fam>& e) {
    if (e.level < 1) throw std::invalid_argument("bar_boundary: level must be >= 1");
    BarElem<Fam> out;
    out.level = e.level - 1;
    for (const auto& [tuple, x] : e.terms) {
        const std::size_t n = tuple.size();
        { // leading term
            typename BarElem<Fam>::Tuple t(tuple.begin() + 1, tuple.end());
            out.add_term(t, fam.ring_mul(x, fam.one(tuple[0])));
        }
        for (std::size_t i = 1; i < n; ++i) {  // merge p_i p_{i+1}
            typename BarElem<Fam>::Tuple t;
            t.reserve(n - 1);
            for (std::size_t j = 0; j + 1 < i; ++j) t.push_back(tuple[j]);
            t.push_back(fam.p_mul(tuple[i - 1], tuple[i]));
            for (std::size_t j = i + 1; j < n; ++j) t.push_back(tuple[j]);
            typename Fam::Ring signed_x = (i % 2) ? (typename Fam::Ring{} - x) : x;
            out.add_term(t, signed_x);
        }
        { // trailing term
            typename BarElem<Fam>::Tuple t(tuple.begin(), tuple.end() - 1);
            typename Fam::Ring signed_x = (n % 2) ? (typename Fam::Ring{} - x) : x;
            out.add_term(t, signed_x);
        }
    }
    return out;
}

/// d_{-1} on level 0: x [] -> x harpoon 1 = Psi(x).
template <class Fam>
typename Fam::Mod bar_boundary_to_module(const Fam& fam, const BarElem<Fam>& e) {
    if (e.level != 0) throw std::invalid_argument("bar_boundary_to_module: level must be 0");
    typename Fam::Mod m;
    for (const auto& [tuple, x] : e.terms) m = m + fam.psi(x);
    return m;
}

/// Splitting homotopy h_n(a 1_{p0} [p1..pn]) = a [p0, p1..pn]; requires free
/// rank-one fibers so ring coefficients decompose by grade.
template <class Fam>
BarElem<Fam> bar_homotopy(const Fam& fam, const BarElem<Fam>& e) {
    static_assert(Fam::free_fibers, "homotopy needs free rank-one fibers");
    BarElem<Fam> out;
    out.level = e.level + 1;
    for (const auto& [tuple, x] : e.terms) {
        for (const auto& [p0, a] : fam.grade_parts(x)) {
            typename BarElem<Fam>::Tuple t;
            t.reserve(tuple.size() + 1);
            t.push_back(p0);
            t.insert(t.end(), tuple.begin(), tuple.end());
            out.add_term(t, fam.embed(a));
        }
    }
    return out;
}

/// h_{-1}(a) = a [].
template <class Fam>
BarElem<Fam> bar_homotopy_from_module(const Fam& fam, const typename Fam::Mod& a) {
    BarElem<Fam> out;
    out.level = 0;
    out.add_term({}, fam.embed(a));
    return out;
}

/// The module action x harpoon a = Psi(x a); on basis elements
/// (g 1_p) harpoon h = g theta_p(h).
template <class Fam>
typename Fam::Mod module_act(const Fam& fam, const typename Fam::Ring& x,
                             const typename Fam::Mod& a) {
    return fam.psi(fam.ring_mul(x, fam.embed(a)));
}

}  // namespace psc
