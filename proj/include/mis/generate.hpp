#pragma once

#include <cstdint>
#include <utility>

#include "mis/graph.hpp"

namespace mis {

// Unit-disk lattice instance parameters. The disk radius is specified by
// its integer square r2 (sqrt(2) -> 2, r = 3 -> 9) so edge membership is
// an exact integer predicate. Filling is stored in parts per thousand.
struct LatticeSpec {
    int L = 0;
    int rho_ppt = 1000;
    int r2 = 2;
    std::uint64_t seed = 0;
    // Per-site Bernoulli(rho) occupancy instead of exactly round(rho*L^2)
    // nodes. Default keeps the node count deterministic.
    bool bernoulli_fill = false;
};

struct GenMeta {
    int resample_attempts = 1;  // total placement draws until connected
};

// Places N = round(rho*L^2) distinct sites uniformly at random on the LxL
// grid (or Bernoulli-occupied sites), connects all pairs within squared
// distance r2, and resamples with derived sub-seeds until the graph is a
// single component (up to 1000 attempts). Node ids follow (x, y) order.
Graph generate_ud_lattice(const LatticeSpec& spec, GenMeta* meta = nullptr);

// (4L^2 - 6L + 2, rho^2 * max), the edge-count ceiling for Union-Jack
// connectivity and its expectation under Bernoulli filling.
std::pair<long long, double> edge_count_bounds(int L, double rho);

// Uniform G(n, m): m distinct unordered pairs without replacement.
Graph generate_er_gnm(int n, long long m, std::uint64_t seed);

// Replaces round(epsilon*|E|) uniformly chosen edges, one at a time in
// selection order, each by a uniformly random non-edge of the current
// graph. Node and edge counts are preserved; coords are kept as labels.
Graph rewire(const Graph& g, double epsilon, std::uint64_t seed);

}  // namespace mis
