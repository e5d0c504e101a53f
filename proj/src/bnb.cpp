#include "mis/bnb.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <ctime>
#include <sstream>

#include "mis/errors.hpp"

namespace mis {

namespace {

double process_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

class Clock {
  public:
    explicit Clock(bool process) : process_(process) {
        if (process_) p0_ = process_seconds();
        else w0_ = std::chrono::steady_clock::now();
    }
    double elapsed() const {
        if (process_) return process_seconds() - p0_;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - w0_).count();
    }

  private:
    bool process_;
    double p0_ = 0.0;
    std::chrono::steady_clock::time_point w0_;
};

// Fixed-width bitset over graph nodes.
struct BitRow {
    std::vector<std::uint64_t> w;

    explicit BitRow(int words = 0) : w(words, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void clear(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
};

struct Searcher {
    const Graph& g;
    BnbConfig cfg;  // target already shifted to the residual problem
    int words;
    std::vector<BitRow> nbr;
    Clock clock;

    BnbResult result;
    std::vector<int> current;
    int incumbent = -1;
    std::uint64_t check_counter = 0;
    bool stopped = false;  // timeout or target hit

    Searcher(const Graph& graph, const BnbConfig& config)
        : g(graph), cfg(config), words((graph.n + 63) / 64), clock(config.process_clock) {
        nbr.assign(g.n, BitRow(words));
        for (const auto& [a, b] : g.edges) {
            nbr[a].set(b);
            nbr[b].set(a);
        }
    }

    int greedy_clique_cover(const BitRow& free) const {
        BitRow uncovered = free;
        int cliques = 0;
        for (int base = 0; base < words; ++base) {
            while (uncovered.w[base]) {
                const int v = base * 64 + std::countr_zero(uncovered.w[base]);
                ++cliques;
                uncovered.clear(v);
                // Grow: candidates adjacent to every member so far.
                BitRow cand(words);
                for (int k = 0; k < words; ++k) cand.w[k] = uncovered.w[k] & nbr[v].w[k];
                while (cand.any()) {
                    int u = -1;
                    for (int k = 0; k < words; ++k)
                        if (cand.w[k]) {
                            u = k * 64 + std::countr_zero(cand.w[k]);
                            break;
                        }
                    uncovered.clear(u);
                    cand.clear(u);
                    for (int k = 0; k < words; ++k) cand.w[k] &= nbr[u].w[k];
                }
            }
        }
        return cliques;
    }

    void record_incumbent() {
        incumbent = static_cast<int>(current.size());
        result.incumbents.push_back({clock.elapsed(), incumbent});
        result.witness = current;
        if (cfg.target && incumbent >= *cfg.target) {
            result.status = BnbStatus::target_reached;
            stopped = true;
        }
    }

    bool out_of_time() {
        if (!cfg.time_limit_s) return false;
        if ((++check_counter & 1023u) != 0) return false;
        if (clock.elapsed() >= *cfg.time_limit_s) {
            result.status = BnbStatus::timeout;
            stopped = true;
            return true;
        }
        return false;
    }

    void dfs(BitRow free) {
        if (stopped) return;
        ++result.nodes_explored;
        if (out_of_time()) return;

        // Branch vertex: maximum degree within the free subgraph.
        int v = -1, best_deg = -1, free_count = 0;
        for (int base = 0; base < words; ++base) {
            for (std::uint64_t bits = free.w[base]; bits;) {
                const int u = base * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                ++free_count;
                int d = 0;
                for (int k = 0; k < words; ++k)
                    d += std::popcount(nbr[u].w[k] & free.w[k]);
                if (d > best_deg) {
                    best_deg = d;
                    v = u;
                }
            }
        }
        if (v < 0) {
            if (static_cast<int>(current.size()) > incumbent) record_incumbent();
            return;
        }

        const int bound = greedy_clique_cover(free);
        if (static_cast<int>(current.size()) + bound <= incumbent) return;

        // Include v first: favors reaching large incumbents early.
        BitRow inc = free;
        inc.clear(v);
        for (int k = 0; k < words; ++k) inc.w[k] &= ~nbr[v].w[k];
        current.push_back(v);
        dfs(inc);
        current.pop_back();
        if (stopped) return;

        BitRow exc = free;
        exc.clear(v);
        dfs(exc);
    }
};

}  // namespace

Reduction reduce(const Graph& g) {
    std::vector<char> alive(g.n, 1);
    std::vector<int> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
    std::vector<int> forced;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.n && !changed; ++v) {
            if (!alive[v]) continue;
            if (deg[v] == 0) {
                forced.push_back(v);
                alive[v] = 0;
                changed = true;
            } else if (deg[v] == 1) {
                forced.push_back(v);
                alive[v] = 0;
                for (int u : g.adj[v]) {
                    if (!alive[u]) continue;
                    alive[u] = 0;
                    for (int w : g.adj[u])
                        if (alive[w]) --deg[w];
                }
                changed = true;
            }
        }
    }

    Reduction r;
    std::vector<int> remap(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        if (alive[v]) {
            remap[v] = static_cast<int>(r.residual_to_orig.size());
            r.residual_to_orig.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges)
        if (alive[a] && alive[b]) edges.emplace_back(remap[a], remap[b]);
    r.residual = make_graph(static_cast<int>(r.residual_to_orig.size()), std::move(edges));
    std::sort(forced.begin(), forced.end());
    r.forced_in = std::move(forced);
    r.offset = static_cast<int>(r.forced_in.size());
    return r;
}

int clique_cover_bound(const Graph& g, const std::vector<int>& free_nodes) {
    for (int v : free_nodes)
        if (v < 0 || v >= g.n) throw InvalidInputError("free node out of range");
    std::vector<char> uncovered(g.n, 0);
    for (int v : free_nodes) uncovered[v] = 1;

    int cliques = 0;
    for (int v = 0; v < g.n; ++v) {
        if (!uncovered[v]) continue;
        ++cliques;
        uncovered[v] = 0;
        std::vector<int> clique{v};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int u = 0; u < g.n && !grew; ++u) {
                if (!uncovered[u]) continue;
                bool adj_all = true;
                for (int c : clique)
                    if (!g.has_edge(u, c)) {
                        adj_all = false;
                        break;
                    }
                if (adj_all) {
                    clique.push_back(u);
                    uncovered[u] = 0;
                    grew = true;
                }
            }
        }
    }
    return cliques;
}

BnbResult bnb_solve(const Graph& g, const BnbConfig& cfg) {
    const Reduction red = reduce(g);
    // The forced vertices are part of every solution reported below.
    const int offset = red.offset;

    BnbConfig local = cfg;
    if (cfg.target) local.target = *cfg.target - offset;
    Searcher s(red.residual, local);

    BitRow all((red.residual.n + 63) / 64);
    for (int v = 0; v < red.residual.n; ++v) all.set(v);

    if (local.target && *local.target <= 0) {
        // Forced vertices alone reach the target.
        s.result.status = BnbStatus::target_reached;
        s.result.incumbents.push_back({s.clock.elapsed(), 0});
    } else {
        s.dfs(all);
        if (!s.stopped) s.result.status = BnbStatus::optimal;
    }

    BnbResult out = std::move(s.result);
    out.mis_size = std::max(s.incumbent, 0) + offset;

    std::vector<int> witness = red.forced_in;
    for (int v : out.witness) witness.push_back(red.residual_to_orig[v]);
    std::sort(witness.begin(), witness.end());
    out.witness = std::move(witness);

    for (auto& ev : out.incumbents) ev.size += offset;
    if (!out.incumbents.empty()) out.tts_s = out.incumbents.back().time_s;
    else if (offset > 0) out.tts_s = 0.0;
    if (out.status == BnbStatus::optimal) out.tto_s = s.clock.elapsed();
    return out;
}

std::string export_ilp(const Graph& g) {
    std::ostringstream lp;
    lp << "Maximize\n obj:";
    for (int v = 0; v < g.n; ++v) lp << (v == 0 ? " x" : " + x") << v;
    lp << "\nSubject To\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        lp << " c" << e << ": x" << g.edges[e].first << " + x" << g.edges[e].second
           << " <= 1\n";
    lp << "Binaries\n";
    for (int v = 0; v < g.n; ++v) {
        lp << (v % 10 == 0 ? (v == 0 ? " x" : "\n x") : " x") << v;
    }
    lp << "\nEnd\n";
    return lp.str();
}

}  // namespace mis
