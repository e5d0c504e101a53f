#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mis/graph.hpp"

namespace mis {

struct BnbConfig {
    std::optional<double> time_limit_s;
    // Known optimum: the search stops as soon as an incumbent reaches it
    // (time-to-solution mode). Must be the true optimum for the timing to
    // mean anything; a smaller value yields a spurious early stop.
    std::optional<int> target;
    // Keeps the engine free of primal rounding / warm starts so recorded
    // incumbents come from the tree search alone.
    bool disable_rounding_heuristics = true;
    bool process_clock = false;  // CPU time instead of wall clock
};

enum class BnbStatus { optimal, target_reached, timeout };

struct IncumbentEvent {
    double time_s = 0.0;
    int size = 0;
};

struct BnbResult {
    int mis_size = 0;
    std::vector<int> witness;
    std::optional<double> tts_s;  // first incumbent of final size
    std::optional<double> tto_s;  // search exhausted (optimality proven)
    std::vector<IncumbentEvent> incumbents;
    std::uint64_t nodes_explored = 0;
    BnbStatus status = BnbStatus::optimal;
};

struct Reduction {
    Graph residual;
    std::vector<int> residual_to_orig;
    std::vector<int> forced_in;  // original ids forced into every MIS
    int offset = 0;              // |forced_in|; MIS(g) = offset + MIS(residual)
};

// Exhaustively applies the isolated-vertex and pendant rules (lowest id
// first): an isolated vertex joins the set; a degree-1 vertex joins and
// its neighbour is removed.
Reduction reduce(const Graph& g);

// Greedy clique partition of `free_nodes`: each clique is seeded with the
// lowest uncovered id and grown by the lowest mutually adjacent id. The
// number of cliques is an admissible upper bound on the MIS within the
// free set.
int clique_cover_bound(const Graph& g, const std::vector<int>& free_nodes);

// Depth-first branch and bound on a maximum-degree free vertex, include
// branch first, pruned by the clique-cover bound. Deterministic given the
// graph; only timings vary run to run.
BnbResult bnb_solve(const Graph& g, const BnbConfig& cfg = {});

// The integer program "max sum x_i s.t. x_i + x_j <= 1 per edge" in LP
// text format, byte-stable for a given graph.
std::string export_ilp(const Graph& g);

}  // namespace mis
