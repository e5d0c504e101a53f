#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mis/census.hpp"
#include "mis/graph.hpp"

namespace mis {

enum class SlaMode { size_only, census };

struct SlaOptions {
    SlaMode mode = SlaMode::size_only;
    // Explicit processing order; required for graphs without coordinates.
    std::vector<int> order;
    bool sweep_y_first = false;
    // Variant-table budget. Exceeding it raises ResourceError naming the
    // peak reached, so runaway radii fail cleanly instead of swapping.
    std::size_t max_variants = std::size_t(1) << 26;
    bool want_witness = true;  // size mode reconstructs and verifies a witness
};

struct SlaResult {
    Census census;              // degeneracy counts populated in census mode
    std::vector<int> witness;   // size mode only (census re-runs are cheap)
    std::size_t variants_peak = 0;
    int steps = 0;
    double wall_time_s = 0.0;
};

// Nodes sorted by (x, y) ascending, or (y, x) when y_first. Requires coords.
std::vector<int> sweep_order(const Graph& g, bool y_first = false);

// Fib(L+1) with Fib(1) = Fib(2) = 1: the variant-count ceiling of a
// one-dimensional strip of L sites.
std::uint64_t fib_bound(int L);

// Dynamic program over the sweep boundary. Variants are keyed by the set
// of unprocessed nodes blocked by assigned boundary nodes; assignments
// with identical blocked sets admit identical completions, so merging
// them is lossless for both the optimum and the top-two degeneracy
// counts. One advance() per node in sweep order.
class SweepEngine {
  public:
    SweepEngine(const Graph& g, std::vector<int> order, SlaMode mode,
                std::size_t max_variants, bool keep_witness_checkpoints);
    ~SweepEngine();
    SweepEngine(SweepEngine&&) noexcept;

    void advance(int node);

    std::size_t variant_count() const;
    std::size_t variants_peak() const;
    int processed_count() const;

    // Valid once every node has been advanced.
    int best_size() const;
    Census final_census() const;            // census mode
    std::vector<int> reconstruct_witness();  // size mode with checkpoints

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

SlaResult sla_solve(const Graph& g, const SlaOptions& opts = {});

}  // namespace mis
