#include "mis/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "mis/errors.hpp"

namespace mis {

int Graph::max_degree() const {
    int d = 0;
    for (const auto& nb : adj) d = std::max(d, static_cast<int>(nb.size()));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& nb = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const int other = adj[u].size() <= adj[v].size() ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<std::array<int, 2>> coords) {
    if (n < 0) throw InvalidInputError("node count must be non-negative");
    if (!coords.empty() && static_cast<int>(coords.size()) != n)
        throw InvalidInputError("coords size must match node count");

    for (auto& [a, b] : edges) {
        if (a == b) throw InvalidInputError("self-loop in edge list");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw InvalidInputError("edge endpoint out of range");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw InvalidInputError("duplicate edge in edge list");

    Graph g;
    g.n = n;
    g.coords = std::move(coords);
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (const auto& [a, b] : g.edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

bool validate_independent_set(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in(g.n, 0);
    for (int v : s) {
        if (v < 0 || v >= g.n) throw InvalidInputError("node id out of range");
        in[v] = 1;
    }
    for (const auto& [a, b] : g.edges)
        if (in[a] && in[b]) return false;
    return true;
}

double graph_density(const Graph& g) {
    if (g.n < 2) throw InvalidInputError("density undefined for n < 2");
    return 2.0 * g.edge_count() / (static_cast<double>(g.n) * (g.n - 1));
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == g.n;
}

}  // namespace mis
