#include <doctest.h>

#include <numeric>

#include "mis/bnb.hpp"
#include "mis/census.hpp"
#include "mis/errors.hpp"
#include "mis/generate.hpp"
#include "mis/rng.hpp"
#include "mis/sla.hpp"

using namespace mis;

namespace {

std::vector<int> identity_order(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

SlaResult solve_census(const Graph& g) {
    SlaOptions opts;
    opts.mode = SlaMode::census;
    if (!g.has_coords()) opts.order = identity_order(g.n);
    return sla_solve(g, opts);
}

SlaResult solve_size(const Graph& g) {
    SlaOptions opts;
    if (!g.has_coords()) opts.order = identity_order(g.n);
    return sla_solve(g, opts);
}

void check_against_oracle(const Graph& g) {
    const Census oracle = brute_force_census(g);
    const SlaResult c = solve_census(g);
    CHECK(c.census.mis_size == oracle.mis_size);
    CHECK(c.census.d_mis == oracle.d_mis);
    CHECK(c.census.d_mis_m1 == oracle.d_mis_m1);

    const SlaResult s = solve_size(g);
    CHECK(s.census.mis_size == oracle.mis_size);
    CHECK(static_cast<int>(s.witness.size()) == oracle.mis_size);
    CHECK(validate_independent_set(g, s.witness));
}

}  // namespace

TEST_CASE("sweep order sorts by coordinates") {
    const Graph g = make_graph(
        4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
        {{{1, 1}, {0, 0}, {1, 0}, {0, 1}}});
    CHECK(sweep_order(g) == std::vector<int>{1, 3, 2, 0});
    CHECK(sweep_order(g, true) == std::vector<int>{1, 2, 3, 0});
    CHECK_THROWS_AS(sweep_order(make_graph(2, {{0, 1}})), InvalidInputError);
}

TEST_CASE("fib bound convention") {
    CHECK(fib_bound(1) == 1);
    CHECK(fib_bound(3) == 3);
    CHECK(fib_bound(10) == 89);
}

TEST_CASE("advance: first node yields the two root variants") {
    const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    SweepEngine eng(p3, identity_order(3), SlaMode::size_only, 1 << 20, false);
    eng.advance(0);
    CHECK(eng.variant_count() == 2);  // node 0 unassigned / assigned
    eng.advance(1);
    // Node 1 is blocked in the x0=1 variant: children are {00, 01 invalid ->
    // only 00 emitted} plus {10}; boundary projects to node 1's frontier.
    CHECK(eng.variant_count() == 2);
    eng.advance(2);
    CHECK(eng.best_size() == 2);
    CHECK_THROWS_AS(eng.advance(2), InvalidInputError);
}

TEST_CASE("advance rejects out-of-order nodes") {
    const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    SweepEngine eng(p3, identity_order(3), SlaMode::size_only, 1 << 20, false);
    CHECK_THROWS_AS(eng.advance(2), InvalidInputError);
}

TEST_CASE("census matches oracle on named small graphs") {
    check_against_oracle(make_graph(3, {{0, 1}, {1, 2}}));  // path
    check_against_oracle(
        make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));  // K4
    check_against_oracle(make_graph(5, {}));                               // empty
    const SlaResult empty5 = solve_census(make_graph(5, {}));
    CHECK(empty5.census.mis_size == 5);
    CHECK(empty5.census.d_mis == 1);
    CHECK(empty5.census.d_mis_m1 == 5);
}

TEST_CASE("census equals oracle on random instance families") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        LatticeSpec spec;
        spec.L = 4 + static_cast<int>(seed % 3);
        spec.rho_ppt = 800;
        spec.r2 = 2;
        spec.seed = seed;
        const Graph ud = generate_ud_lattice(spec);
        if (ud.n <= 30) {
            check_against_oracle(ud);
            ++checked;
        }

        Xoshiro256 rng(seed);
        const int n = 8 + static_cast<int>(rng.below(10));
        const auto max_m = static_cast<long long>(n) * (n - 1) / 2;
        const Graph er = generate_er_gnm(n, rng.below(max_m + 1), seed * 31);
        check_against_oracle(er);
        ++checked;

        const Graph rw = rewire(ud, 0.5, seed * 77);
        if (rw.n <= 30) {
            check_against_oracle(rw);
            ++checked;
        }
    }
    CHECK(checked >= 24);
}

TEST_CASE("order robustness: x-then-y and y-then-x sweeps agree") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        LatticeSpec spec;
        spec.L = 6;
        spec.rho_ppt = 800;
        spec.r2 = 2;
        spec.seed = seed;
        const Graph g = generate_ud_lattice(spec);

        SlaOptions cx, cy;
        cx.mode = cy.mode = SlaMode::census;
        cy.sweep_y_first = true;
        const SlaResult a = sla_solve(g, cx);
        const SlaResult b = sla_solve(g, cy);
        CHECK(a.census.mis_size == b.census.mis_size);
        CHECK(a.census.d_mis == b.census.d_mis);
        CHECK(a.census.d_mis_m1 == b.census.d_mis_m1);
    }
}

TEST_CASE("fibonacci bound holds on Union-Jack instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LatticeSpec spec;
        spec.L = 5 + static_cast<int>(seed);
        spec.rho_ppt = 800;
        spec.r2 = 2;
        spec.seed = seed * 13;
        const Graph g = generate_ud_lattice(spec);
        const SlaResult r = solve_size(g);
        CHECK(r.variants_peak <= fib_bound(spec.L + 1));
    }
}

TEST_CASE("witness reconstruction across checkpointed columns") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        LatticeSpec spec;
        spec.L = 9;
        spec.rho_ppt = 850;
        spec.r2 = 2;
        spec.seed = seed;
        const Graph g = generate_ud_lattice(spec);
        const SlaResult s = solve_size(g);
        CHECK(validate_independent_set(g, s.witness));
        CHECK(static_cast<int>(s.witness.size()) == s.census.mis_size);
        CHECK(s.steps == g.n);
    }
}

TEST_CASE("variant budget produces a clean resource error") {
    LatticeSpec spec;
    spec.L = 9;
    spec.rho_ppt = 1000;
    spec.r2 = 2;
    spec.seed = 3;
    const Graph g = generate_ud_lattice(spec);
    SlaOptions opts;
    opts.max_variants = 4;
    CHECK_THROWS_AS(sla_solve(g, opts), ResourceError);
}

TEST_CASE("boundaries wider than one word solve correctly") {
    // r = 4 on a full 17x17 lattice pushes the frontier past 64 positions,
    // crossing into the two-word variant keys mid-sweep.
    LatticeSpec spec;
    spec.L = 17;
    spec.rho_ppt = 1000;
    spec.r2 = 16;
    spec.seed = 1;
    const Graph g = generate_ud_lattice(spec);

    const SlaResult s = solve_size(g);
    CHECK(validate_independent_set(g, s.witness));
    CHECK(static_cast<int>(s.witness.size()) == s.census.mis_size);

    const SlaResult c = solve_census(g);
    CHECK(c.census.mis_size == s.census.mis_size);
    CHECK(c.census.d_mis >= 1);

    const auto b = bnb_solve(g);
    CHECK(b.mis_size == s.census.mis_size);
}

TEST_CASE("coordinate-free graphs require an explicit order") {
    const Graph er = generate_er_gnm(6, 7, 9);
    CHECK_THROWS_AS(sla_solve(er), InvalidInputError);
    SlaOptions opts;
    opts.order = identity_order(er.n);
    const SlaResult r = sla_solve(er, opts);
    CHECK(r.census.mis_size == brute_force_census(er).mis_size);
}
