#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mis {

// Immutable undirected graph. Nodes are 0..n-1; edges are stored as (i, j)
// with i < j in lexicographic order; adjacency lists are sorted. Optional
// integer lattice coordinates, one per node, for geometric instances.
struct Graph {
    int n = 0;
    std::vector<std::array<int, 2>> coords;  // empty when non-geometric
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    bool has_coords() const { return !coords.empty(); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;
};

// Builds a Graph from an edge list, normalizing edge order and adjacency.
// Throws InvalidInputError on self-loops, duplicates or out-of-range ids.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<std::array<int, 2>> coords = {});

// True iff no edge has both endpoints in s. Out-of-range ids throw.
bool validate_independent_set(const Graph& g, const std::vector<int>& s);

// 2|E| / (n(n-1)). Requires n >= 2.
double graph_density(const Graph& g);

bool is_connected(const Graph& g);

}  // namespace mis
