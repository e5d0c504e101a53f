#include "mis/sa.hpp"

#include <algorithm>
#include <cmath>

#include "mis/errors.hpp"

namespace mis {

MoveTables::MoveTables(const Graph& g, const std::vector<int>& selected) : g_(&g) {
    if (!validate_independent_set(g, selected))
        throw InvalidInputError("initial set is not independent");
    cls_.assign(g.n, Cls::free);
    pos_.assign(g.n, -1);
    sel_nb_count_.assign(g.n, 0);

    std::vector<char> sel(g.n, 0);
    for (int v : selected) sel[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (sel[v])
            for (int u : g_->adj[v]) ++sel_nb_count_[u];

    for (int v = 0; v < g.n; ++v) {
        Cls c;
        if (sel[v]) c = Cls::selected;
        else if (sel_nb_count_[v] == 0) c = Cls::free;
        else if (sel_nb_count_[v] == 1) c = Cls::one_nb;
        else c = Cls::blocked;
        cls_[v] = Cls::blocked;  // placeholder; move_class appends properly
        move_class(v, c);
    }
}

void MoveTables::move_class(int v, Cls to) {
    const Cls from = cls_[v];
    if (from == to && pos_[v] >= 0) return;
    auto list_of = [&](Cls c) -> std::vector<int>* {
        switch (c) {
            case Cls::selected: return &in_set_;
            case Cls::free: return &free_;
            case Cls::one_nb: return &one_nb_;
            default: return nullptr;
        }
    };
    if (auto* from_list = list_of(from); from_list && pos_[v] >= 0) {
        const int p = pos_[v];
        const int last = from_list->back();
        (*from_list)[p] = last;
        pos_[last] = p;
        from_list->pop_back();
        pos_[v] = -1;
    }
    cls_[v] = to;
    if (auto* to_list = list_of(to)) {
        pos_[v] = static_cast<int>(to_list->size());
        to_list->push_back(v);
    } else {
        pos_[v] = -1;
    }
}

void MoveTables::add(int v) {
    move_class(v, Cls::selected);
    for (int u : g_->adj[v]) {
        const int c = ++sel_nb_count_[u];
        if (c == 1) move_class(u, Cls::one_nb);
        else if (c == 2) move_class(u, Cls::blocked);
    }
}

void MoveTables::remove(int v) {
    move_class(v, Cls::free);  // a selected node has no selected neighbours
    for (int u : g_->adj[v]) {
        const int c = --sel_nb_count_[u];
        if (cls_[u] == Cls::selected) continue;
        if (c == 0) move_class(u, Cls::free);
        else if (c == 1) move_class(u, Cls::one_nb);
    }
}

void MoveTables::swap(int v) {
    int w = -1;
    for (int u : g_->adj[v])
        if (cls_[u] == Cls::selected) {
            w = u;
            break;
        }
    remove(w);
    add(v);
}

std::vector<int> MoveTables::selected_sorted() const {
    std::vector<int> s = in_set_;
    std::sort(s.begin(), s.end());
    return s;
}

bool MoveTables::consistent() const {
    MoveTables fresh(*g_, selected_sorted());
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(in_set_) == sorted(fresh.in_set_) && sorted(free_) == sorted(fresh.free_) &&
           sorted(one_nb_) == sorted(fresh.one_nb_) && sel_nb_count_ == fresh.sel_nb_count_;
}

std::pair<int, bool> propose_and_apply(MoveTables& tables, double temperature,
                                       const SaBias& bias, Xoshiro256& rng) {
    const bool can_add = !tables.free_nodes().empty();
    const bool can_swap = !tables.one_nb().empty();
    const bool can_remove = !tables.in_set().empty();

    double total = 0.0;
    if (can_add) total += bias.add;
    if (can_swap) total += bias.swap;
    if (can_remove) total += bias.remove;
    // A non-empty graph always has a valid class: no selection means every
    // node is free, and blocked nodes imply selected ones.
    if (total == 0.0) throw std::logic_error("no move class available");
    const double r = rng.uniform01() * total;

    double acc = can_add ? bias.add : 0.0;
    if (can_add && r < acc) {
        const auto& f = tables.free_nodes();
        tables.add(f[rng.below(f.size())]);
        return {+1, true};
    }
    acc += can_swap ? bias.swap : 0.0;
    if (can_swap && r < acc) {
        const auto& o = tables.one_nb();
        tables.swap(o[rng.below(o.size())]);
        return {0, true};
    }
    // Remove: delta -1, accepted with probability e^(-1/T).
    const auto& s = tables.in_set();
    const int v = s[rng.below(s.size())];
    if (rng.uniform01() < std::exp(-1.0 / temperature)) {
        tables.remove(v);
        return {-1, true};
    }
    return {-1, false};
}

namespace {

struct RunBest {
    int size = -1;
    std::vector<int> set;
};

// One annealing run (depth * N proposals) from the configured start state.
RunBest single_run(const Graph& g, const SaConfig& cfg, std::uint64_t run_seed) {
    Xoshiro256 rng(run_seed);
    MoveTables tables(g, {});
    if (cfg.random_greedy_init) {
        while (!tables.free_nodes().empty()) {
            const auto& f = tables.free_nodes();
            tables.add(f[rng.below(f.size())]);
        }
    }

    const long long steps =
        static_cast<long long>(cfg.schedule.depth) * std::max(1, g.n);
    const double ratio = cfg.schedule.t_end / cfg.schedule.t_start;
    const double decay = steps > 1 ? std::pow(ratio, 1.0 / static_cast<double>(steps - 1)) : 1.0;

    RunBest best;
    best.size = tables.selected_count();
    best.set = tables.selected_sorted();

    double t = cfg.schedule.t_start;
    for (long long k = 0; k < steps; ++k) {
        propose_and_apply(tables, t, cfg.bias, rng);
        if (tables.selected_count() > best.size) {
            best.size = tables.selected_count();
            best.set = tables.selected_sorted();
        }
        t *= decay;
    }
    return best;
}

void validate_config(const Graph& g, const SaConfig& cfg) {
    if (g.n == 0) throw InvalidInputError("cannot anneal the empty graph");
    if (cfg.schedule.t_start <= 0 || cfg.schedule.t_end <= 0 ||
        cfg.schedule.t_end > cfg.schedule.t_start)
        throw InvalidSpecError("schedule requires 0 < t_end <= t_start");
    if (cfg.schedule.depth < 1) throw InvalidSpecError("depth must be >= 1");
    if (cfg.num_restarts < 1) throw InvalidSpecError("num_restarts must be >= 1");
    if (cfg.bias.add <= 0 || cfg.bias.swap <= 0 || cfg.bias.remove <= 0)
        throw InvalidSpecError("bias weights must be positive");
}

}  // namespace

SaResult sa_run(const Graph& g, const SaConfig& cfg, std::optional<int> target) {
    validate_config(g, cfg);
    SaResult res;
    for (int r = 0; r < cfg.num_restarts; ++r) {
        const RunBest rb = single_run(g, cfg, derive_seed(cfg.seed, stream::sa_restart, r));
        res.per_restart_best.push_back(rb.size);
        if (rb.size > res.best_size || r == 0) {
            res.best_size = rb.size;
            res.best_set = rb.set;
        }
    }
    res.proposals = static_cast<std::uint64_t>(cfg.num_restarts) *
                    static_cast<std::uint64_t>(cfg.schedule.depth) * std::max(1, g.n);
    if (target) res.success = res.best_size >= *target;
    return res;
}

PmisEstimate estimate_pmis(const Graph& g, const SaConfig& cfg, int shots, int optimum) {
    if (shots < 1) throw InvalidInputError("shots must be >= 1");
    validate_config(g, cfg);
    PmisEstimate est;
    est.shots = shots;
    for (int s = 0; s < shots; ++s) {
        const RunBest rb = single_run(g, cfg, derive_seed(cfg.seed, stream::sa_shot, s));
        if (rb.size >= optimum) ++est.successes;
    }
    est.p_point = static_cast<double>(est.successes) / shots;
    est.zero_success = est.successes == 0;
    return est;
}

SaResult pt_run(const Graph& g, const std::vector<double>& ladder, int sweeps,
                int exchange_interval, std::uint64_t seed) {
    if (g.n == 0) throw InvalidInputError("cannot anneal the empty graph");
    if (ladder.size() < 2) throw InvalidSpecError("temperature ladder needs >= 2 chains");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] < ladder[i - 1]) || ladder[i] <= 0)
            throw InvalidSpecError("ladder must be strictly decreasing and positive");
    if (sweeps < 1 || exchange_interval < 1)
        throw InvalidSpecError("sweeps and exchange_interval must be >= 1");

    const int chains = static_cast<int>(ladder.size());
    std::vector<MoveTables> state;
    std::vector<Xoshiro256> rng;
    state.reserve(chains);
    for (int c = 0; c < chains; ++c) {
        state.emplace_back(g, std::vector<int>{});
        rng.emplace_back(derive_seed(seed, stream::pt_chain, c));
    }
    Xoshiro256 xrng(derive_seed(seed, stream::pt_exchange, 0));
    const SaBias bias;

    SaResult res;
    res.best_size = 0;
    res.best_set = {};
    auto consider = [&](const MoveTables& t) {
        if (t.selected_count() > res.best_size) {
            res.best_size = t.selected_count();
            res.best_set = t.selected_sorted();
        }
    };

    for (int sweep = 1; sweep <= sweeps; ++sweep) {
        for (int c = 0; c < chains; ++c) {
            for (int k = 0; k < g.n; ++k) propose_and_apply(state[c], ladder[c], bias, rng[c]);
            consider(state[c]);
        }
        if (sweep % exchange_interval == 0) {
            // Alternate even/odd adjacent pairings between exchange rounds.
            const int start = (sweep / exchange_interval) % 2 == 1 ? 0 : 1;
            for (int i = start; i + 1 < chains; i += 2) {
                const int si = state[i].selected_count();
                const int sj = state[i + 1].selected_count();
                // Larger sets migrate toward lower temperatures.
                const double expo =
                    (1.0 / ladder[i] - 1.0 / ladder[i + 1]) * static_cast<double>(sj - si);
                if (expo >= 0.0 || xrng.uniform01() < std::exp(expo))
                    std::swap(state[i], state[i + 1]);
            }
        }
    }
    res.proposals = static_cast<std::uint64_t>(sweeps) * g.n * chains;
    return res;
}

double penalty_energy(const Graph& g, const std::vector<std::uint8_t>& x, double V) {
    if (static_cast<int>(x.size()) != g.n)
        throw InvalidInputError("assignment length must equal node count");
    if (V <= 0) throw InvalidInputError("penalty V must be positive");
    double e = 0.0;
    for (int v = 0; v < g.n; ++v) e -= x[v];
    for (const auto& [a, b] : g.edges) e += V * x[a] * x[b];
    return e;
}

}  // namespace mis
