#include "psc/resolution.hpp"

#include <doctest.h>

#include <random>

using namespace psc;

namespace {

DynFamily nxz_family() { return DynFamily(Dynamics::laurent_nat_mult({2, 3, 5, 7})); }

PElem fn(std::uint64_t v) { return FactoredNat::of_value(v); }

SkewRingElem ring_of(long long uexp, std::uint64_t p, ExactScalar c = ExactScalar::one()) {
    SkewRingElem r;
    r.add_term({GroupElem{uexp}, fn(p)}, c);
    return r;
}

ExactScalar rand_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    ExactScalar s = ExactScalar::of(make_rat(num(rng), den(rng)));
    return s.is_zero() ? ExactScalar::one() : s;
}

SkewRingElem rand_ring(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> e(-3, 3), nt(1, 3);
    std::uniform_int_distribution<std::uint64_t> p(1, 8);
    SkewRingElem r;
    for (int i = 0, n = nt(rng); i < n; ++i)
        r.add_term({GroupElem{e(rng)}, fn(p(rng))}, rand_coeff(rng));
    return r;
}

BarElem<DynFamily> rand_bar(std::mt19937_64& rng, int level) {
    std::uniform_int_distribution<std::uint64_t> p(1, 8);
    std::uniform_int_distribution<int> nt(1, 2);
    BarElem<DynFamily> e;
    e.level = level;
    for (int i = 0, n = nt(rng); i < n; ++i) {
        std::vector<PElem> t;
        for (int j = 0; j < level; ++j) t.push_back(fn(p(rng)));
        e.add_term(t, rand_ring(rng));
    }
    return e;
}

}  // namespace

TEST_CASE("boundary of [p] is (1_p - 1)[]") {
    DynFamily fam = nxz_family();
    BarElem<DynFamily> e;
    e.level = 1;
    e.add_term({fn(3)}, fam.one(fam.p_identity()));
    BarElem<DynFamily> b = bar_boundary(fam, e);
    BarElem<DynFamily> expected;
    expected.level = 0;
    expected.add_term({}, fam.one(fn(3)) - fam.one(fam.p_identity()));
    CHECK(b == expected);
}

TEST_CASE("boundary of [p,q] is 1_p[q] - [pq] + [p]") {
    DynFamily fam = nxz_family();
    BarElem<DynFamily> e;
    e.level = 2;
    e.add_term({fn(2), fn(3)}, fam.one(fam.p_identity()));
    BarElem<DynFamily> b = bar_boundary(fam, e);

    BarElem<DynFamily> expected;
    expected.level = 1;
    expected.add_term({fn(3)}, fam.one(fn(2)));
    expected.add_term({fn(6)}, SkewRingElem{} - fam.one(fam.p_identity()));
    expected.add_term({fn(2)}, fam.one(fam.p_identity()));
    CHECK(b == expected);
}

TEST_CASE("d d = 0 on random elements, levels 1..5") {
    DynFamily fam = nxz_family();
    std::mt19937_64 rng(21);
    for (int level = 1; level <= 5; ++level)
        for (int i = 0; i < 40; ++i) {
            auto e = rand_bar(rng, level);
            if (level == 1)
                CHECK(bar_boundary_to_module(fam, bar_boundary(fam, e)).is_zero());
            else
                CHECK(bar_boundary(fam, bar_boundary(fam, e)).is_zero());
        }
}

TEST_CASE("homotopy formulas") {
    DynFamily fam = nxz_family();
    CoeffElem uu = CoeffElem::u_pow(1);

    // h_{-1}(u) = u []
    BarElem<DynFamily> h = bar_homotopy_from_module(fam, uu);
    BarElem<DynFamily> expected;
    expected.level = 0;
    expected.add_term({}, fam.embed(uu));
    CHECK(h == expected);

    // h_0(u 1_2 []) = u [2]
    BarElem<DynFamily> e0;
    e0.level = 0;
    e0.add_term({}, ring_of(1, 2));
    BarElem<DynFamily> h0 = bar_homotopy(fam, e0);
    BarElem<DynFamily> expected0;
    expected0.level = 1;
    expected0.add_term({fn(2)}, fam.embed(uu));
    CHECK(h0 == expected0);
}

TEST_CASE("d h + h d = id on random elements, levels 0..3") {
    DynFamily fam = nxz_family();
    std::mt19937_64 rng(22);
    for (int level = 0; level <= 3; ++level)
        for (int i = 0; i < 40; ++i) {
            auto e = rand_bar(rng, level);
            BarElem<DynFamily> lhs = bar_boundary(fam, bar_homotopy(fam, e));
            BarElem<DynFamily> other =
                level == 0 ? bar_homotopy_from_module(fam, bar_boundary_to_module(fam, e))
                           : bar_homotopy(fam, bar_boundary(fam, e));
            for (const auto& [t, x] : other.terms) lhs.add_term(t, x);
            CHECK(lhs == e);
        }
}

TEST_CASE("module action: (g 1_p) harpoon h = g theta_p(h)") {
    DynFamily fam = nxz_family();
    // (u^2 1_3) harpoon u = u^2 * u^3 = u^5
    CHECK(module_act(fam, ring_of(2, 3), CoeffElem::u_pow(1)) == CoeffElem::u_pow(5));
    std::mt19937_64 rng(26);
    std::uniform_int_distribution<int> e(-3, 3);
    std::uniform_int_distribution<std::uint64_t> p(1, 8);
    for (int i = 0; i < 100; ++i) {
        long long g = e(rng), h = e(rng);
        std::uint64_t pp = p(rng);
        CHECK(module_act(fam, ring_of(g, pp), CoeffElem::u_pow(h)) ==
              CoeffElem::u_pow(g + static_cast<long long>(pp) * h));
    }
}

TEST_CASE("psi on the dynamics family") {
    DynFamily fam = nxz_family();
    CHECK(fam.psi(ring_of(2, 3)) == CoeffElem::u_pow(2));  // Psi(u^2 1_3) = u^2
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        SkewRingElem x = rand_ring(rng), y = rand_ring(rng);
        CHECK(fam.psi(fam.ring_mul(x, y)) == fam.psi(fam.ring_mul(x, fam.embed(fam.psi(y)))));
    }
}

TEST_CASE("graph family: psi is the source vertex and dd = 0") {
    GraphFamily fam(Graph::triangle_with_loop());

    // single edges: psi(mu) = source(mu)
    for (std::uint32_t e = 0; e < 4; ++e) {
        PathRingElem r;
        GraphPath mu{{e}, fam.graph.edges[e].source};
        r.add_term(mu, ExactScalar::one());
        VertexElem expected;
        expected.add_term(fam.graph.edges[e].source, ExactScalar::one());
        CHECK(fam.psi(r) == expected);
    }

    // concatenation respects sources/ranges: 1_m 1_n = 1_{m+n}
    for (std::uint64_t m = 0; m <= 3; ++m)
        for (std::uint64_t n = 0; m + n <= 4; ++n)
            CHECK(fam.ring_mul(fam.one(NatAddElem{m}), fam.one(NatAddElem{n})) ==
                  fam.one(NatAddElem{m + n}));

    std::mt19937_64 rng(24);
    std::uniform_int_distribution<std::uint64_t> len(0, 2);
    std::uniform_int_distribution<int> nt(1, 2);
    auto rand_path_ring = [&](std::mt19937_64& r) {
        PathRingElem out;
        for (int i = 0, n = nt(r); i < n; ++i) {
            auto paths = fam.paths_of_length(len(r));
            std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
            out.add_term(paths[pick(r)], rand_coeff(r));
        }
        return out;
    };
    for (int level = 1; level <= 4; ++level)
        for (int i = 0; i < 30; ++i) {
            BarElem<GraphFamily> e;
            e.level = level;
            std::vector<NatAddElem> t;
            for (int j = 0; j < level; ++j) t.push_back(NatAddElem{len(rng)});
            e.add_term(t, rand_path_ring(rng));
            if (level == 1)
                CHECK(bar_boundary_to_module(fam, bar_boundary(fam, e)).is_zero());
            else
                CHECK(bar_boundary(fam, bar_boundary(fam, e)).is_zero());
        }

    // Psi identity on the graph ring
    for (int i = 0; i < 200; ++i) {
        PathRingElem x = rand_path_ring(rng), y = rand_path_ring(rng);
        CHECK(fam.psi(fam.ring_mul(x, y)) == fam.psi(fam.ring_mul(x, fam.embed(fam.psi(y)))));
    }
}

TEST_CASE("group algebra family Z/4: dd = 0 and homotopies") {
    DynFamily fam(Dynamics::cyclic_group_algebra(4));
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<std::uint32_t> g(0, 3);
    std::uniform_int_distribution<int> nt(1, 2);
    auto rand_ring4 = [&](std::mt19937_64& r) {
        SkewRingElem out;
        for (int i = 0, n = nt(r); i < n; ++i) out.add_term({GroupElem{}, MonoidElem{g(r)}}, rand_coeff(r));
        return out;
    };
    for (int level = 1; level <= 4; ++level)
        for (int i = 0; i < 30; ++i) {
            BarElem<DynFamily> e;
            e.level = level;
            std::vector<PElem> t;
            for (int j = 0; j < level; ++j) t.push_back(MonoidElem{g(rng)});
            e.add_term(t, rand_ring4(rng));
            if (level == 1)
                CHECK(bar_boundary_to_module(fam, bar_boundary(fam, e)).is_zero());
            else
                CHECK(bar_boundary(fam, bar_boundary(fam, e)).is_zero());
            if (level <= 3) {
                BarElem<DynFamily> lhs = bar_boundary(fam, bar_homotopy(fam, e));
                BarElem<DynFamily> other = bar_homotopy(fam, bar_boundary(fam, e));
                for (const auto& [tt, x] : other.terms) lhs.add_term(tt, x);
                CHECK(lhs == e);
            }
        }
}
