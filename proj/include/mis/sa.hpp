#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mis/graph.hpp"
#include "mis/rng.hpp"

namespace mis {

// Incremental bookkeeping of the valid feasible-space moves. Every node is
// in exactly one class: selected, free (no selected neighbour), one_nb
// (exactly one selected neighbour) or blocked (two or more). The selected
// set is independent by construction at all times.
class MoveTables {
  public:
    MoveTables(const Graph& g, const std::vector<int>& selected);
    MoveTables(Graph&&, const std::vector<int>&) = delete;  // graph must outlive the tables

    const std::vector<int>& in_set() const { return in_set_; }
    const std::vector<int>& free_nodes() const { return free_; }
    const std::vector<int>& one_nb() const { return one_nb_; }
    int selected_count() const { return static_cast<int>(in_set_.size()); }
    int selected_neighbours(int v) const { return sel_nb_count_[v]; }

    void add(int v);     // v must be free
    void remove(int v);  // v must be selected
    // v must have exactly one selected neighbour; exchanges the two.
    void swap(int v);

    std::vector<int> selected_sorted() const;
    // Full recount from scratch; compares against the incremental state.
    bool consistent() const;

  private:
    enum class Cls : std::uint8_t { selected, free, one_nb, blocked };
    void move_class(int v, Cls to);

    const Graph* g_;
    std::vector<int> in_set_, free_, one_nb_;
    std::vector<int> pos_;  // index of v within its class vector
    std::vector<Cls> cls_;
    std::vector<int> sel_nb_count_;
};

struct SaSchedule {
    double t_start = 1.0;
    double t_end = 0.05;
    int depth = 32;  // sweeps; one sweep proposes N moves
};

struct SaBias {
    double add = 4.0;
    double swap = 4.0;
    double remove = 1.0;
};

struct SaConfig {
    SaSchedule schedule;
    int num_restarts = 1;
    SaBias bias;
    std::uint64_t seed = 0;
    bool random_greedy_init = false;  // default: every restart starts empty
};

struct SaResult {
    int best_size = 0;
    std::vector<int> best_set;
    std::vector<int> per_restart_best;
    std::uint64_t proposals = 0;
    std::optional<bool> success;  // set when a target optimum was supplied
};

struct PmisEstimate {
    int successes = 0;
    int shots = 0;
    double p_point = 0.0;
    bool zero_success = false;
};

// One biased feasible-space proposal: add (delta +1), swap (0) or remove
// (-1), chosen by weight over the non-empty classes, then Metropolis-
// accepted. Returns (delta, accepted); rejected moves leave the tables
// untouched.
std::pair<int, bool> propose_and_apply(MoveTables& tables, double temperature,
                                       const SaBias& bias, Xoshiro256& rng);

// Geometric cooling from t_start to t_end applied per proposal, restarted
// num_restarts times from scratch with derived sub-streams.
SaResult sa_run(const Graph& g, const SaConfig& cfg, std::optional<int> target = {});

// Fraction of single-restart runs that reach the known optimum.
PmisEstimate estimate_pmis(const Graph& g, const SaConfig& cfg, int shots, int optimum);

// Parallel tempering over a strictly decreasing temperature ladder with
// alternating even/odd neighbour exchanges every exchange_interval sweeps.
SaResult pt_run(const Graph& g, const std::vector<double>& ladder, int sweeps,
                int exchange_interval, std::uint64_t seed);

// -sum(x) + V * sum over edges of x_i x_j. Diagnostic only; the samplers
// above never leave the feasible space.
double penalty_energy(const Graph& g, const std::vector<std::uint8_t>& x, double V);

}  // namespace mis
