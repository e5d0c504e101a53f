#include "mis/sla.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>

#include "mis/errors.hpp"
#include "mis/rng.hpp"

namespace mis {

namespace {

// Variant keys are bitsets over frontier positions. Union-Jack boundaries
// fit in one word; larger radii widen to two on demand. Boundaries past
// 128 positions fail with an explicit resource error.
struct Mask64 {
    std::uint64_t w0 = 0;
    bool operator==(const Mask64&) const = default;
};

struct Mask128 {
    std::uint64_t w0 = 0, w1 = 0;
    bool operator==(const Mask128&) const = default;
};

constexpr int kMaxBoundary = 128;

constexpr int capacity(Mask64) { return 64; }
constexpr int capacity(Mask128) { return 128; }

inline bool test_bit(const Mask64& m, int p) { return (m.w0 >> p) & 1u; }
inline bool test_bit(const Mask128& m, int p) {
    return p < 64 ? (m.w0 >> p) & 1u : (m.w1 >> (p - 64)) & 1u;
}

inline void set_bit(Mask64& m, int p) { m.w0 |= 1ULL << p; }
inline void set_bit(Mask128& m, int p) {
    if (p < 64) m.w0 |= 1ULL << p;
    else m.w1 |= 1ULL << (p - 64);
}

inline Mask64 or_mask(const Mask64& a, const Mask64& b) { return {a.w0 | b.w0}; }
inline Mask128 or_mask(const Mask128& a, const Mask128& b) {
    return {a.w0 | b.w0, a.w1 | b.w1};
}

// Deletes bit p and compacts all higher bits down by one position.
inline Mask64 remove_bit(Mask64 m, int p) {
    const std::uint64_t low = p == 0 ? 0 : (1ULL << p) - 1;
    m.w0 = (m.w0 & low) | ((m.w0 >> 1) & ~low);
    return m;
}

inline Mask128 remove_bit(Mask128 m, int p) {
    if (p < 64) {
        const std::uint64_t low = p == 0 ? 0 : (1ULL << p) - 1;
        const std::uint64_t cross = (m.w1 & 1ULL) << 63;
        m.w0 = (m.w0 & low) | ((m.w0 >> 1) & ~low) | cross;
        m.w1 >>= 1;
    } else {
        const int q = p - 64;
        const std::uint64_t low = q == 0 ? 0 : (1ULL << q) - 1;
        m.w1 = (m.w1 & low) | ((m.w1 >> 1) & ~low);
    }
    return m;
}

inline std::uint64_t hash_mask(const Mask64& m) { return splitmix64_mix(m.w0); }
inline std::uint64_t hash_mask(const Mask128& m) {
    return splitmix64_mix(m.w0 ^ (m.w1 * 0x9e3779b97f4a7c15ULL));
}

inline Mask128 widen(const Mask64& m) { return {m.w0, 0}; }

template <class M>
struct Entry {
    M key;
    std::int32_t best = 0;
    // Witness replay: (parent entry << 1) | assigned.
    std::uint32_t aux = 0;
};

// Open-addressing table keyed on the mask. Entries keep insertion order so
// every run is deterministic; buckets are never iterated.
template <class M>
class Table {
  public:
    void reset(std::size_t expected) {
        entries.clear();
        entries.reserve(expected + expected / 4 + 16);
        std::size_t cap = 64;
        while (cap < expected * 2) cap <<= 1;
        buckets.assign(cap, 0);
        bmask = cap - 1;
    }

    // Returns (entry index, inserted).
    std::pair<std::uint32_t, bool> find_or_insert(const M& key) {
        if ((entries.size() + 1) * 10 >= buckets.size() * 7) grow();
        std::size_t b = hash_mask(key) & bmask;
        while (true) {
            const std::uint32_t slot = buckets[b];
            if (slot == 0) {
                entries.push_back(Entry<M>{key, 0, 0});
                buckets[b] = static_cast<std::uint32_t>(entries.size());
                return {static_cast<std::uint32_t>(entries.size() - 1), true};
            }
            if (entries[slot - 1].key == key) return {slot - 1, false};
            b = (b + 1) & bmask;
        }
    }

    const Entry<M>* find(const M& key) const {
        std::size_t b = hash_mask(key) & bmask;
        while (true) {
            const std::uint32_t slot = buckets[b];
            if (slot == 0) return nullptr;
            if (entries[slot - 1].key == key) return &entries[slot - 1];
            b = (b + 1) & bmask;
        }
    }

    std::vector<Entry<M>> entries;

  private:
    void grow() {
        std::vector<std::uint32_t> nb(buckets.size() * 2, 0);
        const std::size_t nm = nb.size() - 1;
        for (std::uint32_t i = 0; i < entries.size(); ++i) {
            std::size_t b = hash_mask(entries[i].key) & nm;
            while (nb[b] != 0) b = (b + 1) & nm;
            nb[b] = i + 1;
        }
        buckets = std::move(nb);
        bmask = nm;
    }

    std::vector<std::uint32_t> buckets;
    std::size_t bmask = 0;
};

struct CountPair {
    BigInt best;     // configurations achieving the entry's best
    BigInt best_m1;  // configurations one below
};

// Tracks the frontier (unprocessed nodes adjacent to processed ones).
// Masks index into `frontier`; removing a processed node compacts the
// positions above it by one, matching remove_bit.
struct FrontierTracker {
    const Graph* g = nullptr;
    std::vector<char> processed;
    std::vector<int> frontier;
    std::vector<int> fpos;  // node -> frontier position or -1

    void init(const Graph& graph) {
        g = &graph;
        processed.assign(graph.n, 0);
        frontier.clear();
        fpos.assign(graph.n, -1);
    }

    struct StepInfo {
        int p_u = -1;                 // u's old frontier position, -1 if absent
        std::vector<int> add_positions;  // unprocessed neighbours, new indexing
    };

    StepInfo step(int u) {
        StepInfo s;
        s.p_u = fpos[u];
        if (s.p_u >= 0) {
            frontier.erase(frontier.begin() + s.p_u);
            for (std::size_t q = s.p_u; q < frontier.size(); ++q)
                fpos[frontier[q]] = static_cast<int>(q);
            fpos[u] = -1;
        }
        processed[u] = 1;

        std::vector<int> fresh;
        for (int w : g->adj[u])
            if (!processed[w] && fpos[w] < 0) fresh.push_back(w);
        std::sort(fresh.begin(), fresh.end());
        for (int w : fresh) {
            fpos[w] = static_cast<int>(frontier.size());
            frontier.push_back(w);
        }
        if (static_cast<int>(frontier.size()) > kMaxBoundary)
            throw ResourceError("sweep boundary exceeds " + std::to_string(kMaxBoundary) +
                                " tracked positions");

        for (int w : g->adj[u])
            if (!processed[w]) s.add_positions.push_back(fpos[w]);
        return s;
    }
};

template <class M>
M build_mask(const std::vector<int>& positions) {
    M m{};
    for (int p : positions) set_bit(m, p);
    return m;
}

}  // namespace

std::vector<int> sweep_order(const Graph& g, bool y_first) {
    if (!g.has_coords())
        throw InvalidInputError("sweep order requires coordinates; supply an explicit order");
    std::vector<int> order(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ca = g.coords[a];
        const auto& cb = g.coords[b];
        if (y_first) return std::pair(ca[1], ca[0]) < std::pair(cb[1], cb[0]);
        return ca < cb;
    });
    return order;
}

std::uint64_t fib_bound(int L) {
    if (L < 1) throw InvalidInputError("fib_bound requires L >= 1");
    if (L > 91) throw ResourceError("fib_bound overflows 64 bits beyond L = 91");
    std::uint64_t a = 1, b = 1;  // Fib(1), Fib(2)
    for (int i = 2; i <= L; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return L == 1 ? a : b;  // Fib(L+1)
}

struct SweepEngine::Impl {
    const Graph* g = nullptr;
    std::vector<int> order;
    SlaMode mode = SlaMode::size_only;
    std::size_t max_variants = 0;
    bool checkpoints = false;

    FrontierTracker tracker;
    bool wide = false;  // switched once the frontier outgrows one word
    Table<Mask64> cur64;
    Table<Mask128> cur128;
    std::vector<CountPair> cur_counts;
    std::size_t peak = 0;
    int next_idx = 0;

    // Witness checkpoints: one per column (consecutive order positions
    // sharing the monotone coordinate, or blocks of 32 for explicit
    // orders). Snapshot keys are stored widened; the replay runs wide.
    std::vector<int> column_of_pos;
    struct Snapshot {
        int order_pos = 0;
        std::vector<int> frontier;
        std::vector<Entry<Mask128>> entries;
    };
    std::vector<Snapshot> snaps;

    void init(const Graph& graph, std::vector<int> ord) {
        g = &graph;
        order = std::move(ord);
        tracker.init(graph);
        cur64.reset(1);
        cur64.find_or_insert(Mask64{});  // empty prefix, best 0
        if (mode == SlaMode::census) cur_counts.push_back({1, 0});

        int axis = -1;
        if (graph.has_coords()) {
            for (int a = 0; a < 2 && axis < 0; ++a) {
                bool monotone = true;
                for (std::size_t i = 1; i < order.size() && monotone; ++i)
                    monotone = graph.coords[order[i - 1]][a] <= graph.coords[order[i]][a];
                if (monotone) axis = a;
            }
        }
        column_of_pos.resize(order.size());
        int col = -1;
        int prev_key = -1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int k = axis >= 0 ? graph.coords[order[i]][axis] : static_cast<int>(i / 32);
            if (col < 0 || k != prev_key) {
                ++col;
                prev_key = k;
            }
            column_of_pos[i] = col;
        }
    }

    std::size_t table_size() const { return wide ? cur128.entries.size() : cur64.entries.size(); }

    void widen_table() {
        cur128.reset(cur64.entries.size());
        for (const auto& e : cur64.entries) {
            const auto [idx, inserted] = cur128.find_or_insert(widen(e.key));
            cur128.entries[idx].best = e.best;
            cur128.entries[idx].aux = e.aux;
        }
        cur64 = Table<Mask64>{};
        wide = true;
    }

    void take_snapshot() {
        Snapshot s;
        s.order_pos = next_idx;
        s.frontier = tracker.frontier;
        if (wide) {
            s.entries = cur128.entries;
        } else {
            s.entries.reserve(cur64.entries.size());
            for (const auto& e : cur64.entries)
                s.entries.push_back({widen(e.key), e.best, e.aux});
        }
        snaps.push_back(std::move(s));
    }

    // Core transition shared by the forward pass and witness replay.
    template <class M, bool kCensus, bool kAux>
    void apply_step(const FrontierTracker::StepInfo& st, const Table<M>& in,
                    const std::vector<CountPair>* in_counts, Table<M>& out,
                    std::vector<CountPair>* out_counts) {
        out.reset(in.entries.size() * 2);
        if constexpr (kCensus) {
            out_counts->clear();
            out_counts->reserve(in.entries.size() * 2);
        }
        const M add = build_mask<M>(st.add_positions);

        for (std::uint32_t pi = 0; pi < in.entries.size(); ++pi) {
            const Entry<M>& pe = in.entries[pi];
            const M base = st.p_u >= 0 ? remove_bit(pe.key, st.p_u) : pe.key;

            const auto emit = [&](const M& key, std::int32_t cand, bool took) {
                auto [idx, inserted] = out.find_or_insert(key);
                Entry<M>& e = out.entries[idx];
                if constexpr (!kCensus) {
                    if (inserted) {
                        e.best = cand;
                        if constexpr (kAux) e.aux = (pi << 1) | static_cast<std::uint32_t>(took);
                    } else if (cand > e.best) {
                        e.best = cand;
                        if constexpr (kAux) e.aux = (pi << 1) | static_cast<std::uint32_t>(took);
                    }
                } else {
                    const CountPair& pc = (*in_counts)[pi];
                    if (inserted) {
                        e.best = cand;
                        out_counts->push_back({pc.best, pc.best_m1});
                    } else {
                        CountPair& oc = (*out_counts)[idx];
                        // Top-two merge: contributions two or more below the
                        // entry's best can never catch up (identical blocked
                        // sets admit identical completions), so dropping
                        // them cannot disturb either final count.
                        if (cand == e.best) {
                            oc.best += pc.best;
                            oc.best_m1 += pc.best_m1;
                        } else if (cand == e.best - 1) {
                            oc.best_m1 += pc.best;
                        } else if (cand == e.best + 1) {
                            oc.best_m1 = oc.best + pc.best_m1;
                            oc.best = pc.best;
                            e.best = cand;
                        } else if (cand > e.best) {
                            oc.best = pc.best;
                            oc.best_m1 = pc.best_m1;
                            e.best = cand;
                        }
                    }
                }
            };

            emit(base, pe.best, false);
            if (st.p_u < 0 || !test_bit(pe.key, st.p_u))
                emit(or_mask(base, add), pe.best + 1, true);
        }

        if (out.entries.size() > max_variants)
            throw ResourceError("variant table exceeded budget (" +
                                std::to_string(max_variants) + ") at peak " +
                                std::to_string(out.entries.size()));
    }

    void advance(int node) {
        if (next_idx >= static_cast<int>(order.size()) || order[next_idx] != node)
            throw InvalidInputError("advance called out of sweep order");
        if (checkpoints &&
            (next_idx == 0 || column_of_pos[next_idx] != column_of_pos[next_idx - 1]))
            take_snapshot();

        const auto st = tracker.step(node);
        if (!wide && static_cast<int>(tracker.frontier.size()) > 64) widen_table();

        std::vector<CountPair> next_counts;
        if (wide) {
            Table<Mask128> next;
            if (mode == SlaMode::census)
                apply_step<Mask128, true, false>(st, cur128, &cur_counts, next, &next_counts);
            else
                apply_step<Mask128, false, false>(st, cur128, nullptr, next, nullptr);
            cur128 = std::move(next);
        } else {
            Table<Mask64> next;
            if (mode == SlaMode::census)
                apply_step<Mask64, true, false>(st, cur64, &cur_counts, next, &next_counts);
            else
                apply_step<Mask64, false, false>(st, cur64, nullptr, next, nullptr);
            cur64 = std::move(next);
        }
        cur_counts = std::move(next_counts);
        peak = std::max(peak, table_size());
        ++next_idx;
    }

    void require_done() const {
        if (next_idx != static_cast<int>(order.size()))
            throw InvalidInputError("sweep incomplete");
    }

    int final_best() const {
        return wide ? cur128.entries.front().best : cur64.entries.front().best;
    }

    std::vector<int> reconstruct_witness() {
        require_done();
        if (!checkpoints) throw InvalidInputError("witness requires checkpoints");
        // The frontier is empty at the end, so exactly one variant remains.
        Mask128 target{};
        std::vector<int> witness;

        for (auto sit = snaps.rbegin(); sit != snaps.rend(); ++sit) {
            const Snapshot& snap = *sit;
            const int last =
                (sit == snaps.rbegin()) ? static_cast<int>(order.size()) : (sit - 1)->order_pos;

            // Re-run the column with back references recorded.
            FrontierTracker tr;
            tr.init(*g);
            for (int i = 0; i < snap.order_pos; ++i) tr.processed[order[i]] = 1;
            tr.frontier = snap.frontier;
            for (std::size_t q = 0; q < tr.frontier.size(); ++q)
                tr.fpos[tr.frontier[q]] = static_cast<int>(q);

            std::vector<Table<Mask128>> tables(last - snap.order_pos + 1);
            tables[0].reset(snap.entries.size());
            for (const Entry<Mask128>& e : snap.entries) {
                const auto [idx, inserted] = tables[0].find_or_insert(e.key);
                tables[0].entries[idx].best = e.best;
            }
            for (int i = snap.order_pos; i < last; ++i) {
                const auto st = tr.step(order[i]);
                apply_step<Mask128, false, true>(st, tables[i - snap.order_pos], nullptr,
                                                 tables[i - snap.order_pos + 1], nullptr);
            }

            const Entry<Mask128>* t = tables.back().find(target);
            if (!t) throw std::logic_error("witness replay lost the target variant");
            auto idx = static_cast<std::uint32_t>(t - tables.back().entries.data());
            for (int i = last - 1; i >= snap.order_pos; --i) {
                const Entry<Mask128>& e = tables[i - snap.order_pos + 1].entries[idx];
                if (e.aux & 1u) witness.push_back(order[i]);
                idx = e.aux >> 1;
            }
            target = tables[0].entries[idx].key;
        }
        std::sort(witness.begin(), witness.end());
        return witness;
    }
};

SweepEngine::SweepEngine(const Graph& g, std::vector<int> order, SlaMode mode,
                         std::size_t max_variants, bool keep_witness_checkpoints)
    : impl_(std::make_unique<Impl>()) {
    if (static_cast<int>(order.size()) != g.n)
        throw InvalidInputError("sweep order must cover every node exactly once");
    std::vector<char> seen(g.n, 0);
    for (int v : order) {
        if (v < 0 || v >= g.n || seen[v]) throw InvalidInputError("invalid sweep order");
        seen[v] = 1;
    }
    impl_->mode = mode;
    impl_->max_variants = max_variants;
    impl_->checkpoints = keep_witness_checkpoints && mode == SlaMode::size_only;
    impl_->init(g, std::move(order));
}

SweepEngine::~SweepEngine() = default;
SweepEngine::SweepEngine(SweepEngine&&) noexcept = default;

void SweepEngine::advance(int node) { impl_->advance(node); }
std::size_t SweepEngine::variant_count() const { return impl_->table_size(); }
std::size_t SweepEngine::variants_peak() const { return impl_->peak; }
int SweepEngine::processed_count() const { return impl_->next_idx; }

int SweepEngine::best_size() const {
    impl_->require_done();
    return impl_->final_best();
}

Census SweepEngine::final_census() const {
    impl_->require_done();
    if (impl_->mode != SlaMode::census)
        throw InvalidInputError("census requested from a size-only sweep");
    Census c;
    c.mis_size = impl_->final_best();
    c.d_mis = impl_->cur_counts.front().best;
    c.d_mis_m1 = impl_->cur_counts.front().best_m1;
    return c;
}

std::vector<int> SweepEngine::reconstruct_witness() { return impl_->reconstruct_witness(); }

SlaResult sla_solve(const Graph& g, const SlaOptions& opts) {
    if (g.n == 0) throw InvalidInputError("cannot solve the empty graph");
    std::vector<int> order = opts.order;
    if (order.empty()) order = sweep_order(g, opts.sweep_y_first);

    const auto t0 = std::chrono::steady_clock::now();
    SweepEngine eng(g, order, opts.mode, opts.max_variants,
                    opts.want_witness && opts.mode == SlaMode::size_only);
    for (int v : order) eng.advance(v);

    SlaResult res;
    res.steps = g.n;
    res.variants_peak = eng.variants_peak();
    if (opts.mode == SlaMode::census) {
        res.census = eng.final_census();
    } else {
        res.census.mis_size = eng.best_size();
        if (opts.want_witness) {
            res.witness = eng.reconstruct_witness();
            if (static_cast<int>(res.witness.size()) != res.census.mis_size ||
                !validate_independent_set(g, res.witness))
                throw std::logic_error("witness verification failed");
        }
    }
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace mis
