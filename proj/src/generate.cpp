#include "mis/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_set>

#include "mis/errors.hpp"
#include "mis/rng.hpp"

namespace mis {

namespace {

constexpr int kMaxPlacementAttempts = 1000;

// One placement draw: chosen sites in (x, y) lexicographic node order.
std::vector<std::array<int, 2>> draw_sites(const LatticeSpec& spec, std::uint64_t sub_seed) {
    const int L = spec.L;
    const long long total = static_cast<long long>(L) * L;
    Xoshiro256 rng(sub_seed);
    std::vector<int> chosen;

    if (spec.bernoulli_fill) {
        for (long long s = 0; s < total; ++s)
            if (rng.below(1000) < static_cast<std::uint64_t>(spec.rho_ppt))
                chosen.push_back(static_cast<int>(s));
    } else {
        const long long want =
            (static_cast<long long>(spec.rho_ppt) * total + 500) / 1000;  // round(rho*L^2)
        std::vector<int> sites(total);
        std::iota(sites.begin(), sites.end(), 0);
        for (long long k = 0; k < want; ++k) {
            const auto j = k + static_cast<long long>(rng.below(total - k));
            std::swap(sites[k], sites[j]);
        }
        chosen.assign(sites.begin(), sites.begin() + want);
        std::sort(chosen.begin(), chosen.end());
    }

    std::vector<std::array<int, 2>> coords;
    coords.reserve(chosen.size());
    for (int s : chosen) coords.push_back({s % L, s / L});  // site id = x + L*y
    std::sort(coords.begin(), coords.end());
    return coords;
}

Graph build_unit_disk(int L, int r2, std::vector<std::array<int, 2>> coords) {
    const int n = static_cast<int>(coords.size());
    std::vector<int> site_to_node(static_cast<std::size_t>(L) * L, -1);
    for (int i = 0; i < n; ++i)
        site_to_node[coords[i][0] + static_cast<std::size_t>(L) * coords[i][1]] = i;

    const int window = static_cast<int>(std::sqrt(static_cast<double>(r2))) + 1;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        const int x = coords[i][0], y = coords[i][1];
        for (int dy = -window; dy <= window; ++dy) {
            const int yy = y + dy;
            if (yy < 0 || yy >= L) continue;
            for (int dx = -window; dx <= window; ++dx) {
                const int xx = x + dx;
                if (xx < 0 || xx >= L) continue;
                if (dx * dx + dy * dy > r2) continue;
                const int j = site_to_node[xx + static_cast<std::size_t>(L) * yy];
                if (j > i) edges.emplace_back(i, j);
            }
        }
    }
    return make_graph(n, std::move(edges), std::move(coords));
}

}  // namespace

Graph generate_ud_lattice(const LatticeSpec& spec, GenMeta* meta) {
    if (spec.L < 1) throw InvalidSpecError("lattice side L must be >= 1");
    if (spec.rho_ppt < 1 || spec.rho_ppt > 1000)
        throw InvalidSpecError("filling must be in (0, 1] (1..1000 ppt)");
    if (spec.r2 < 1) throw InvalidSpecError("squared radius r2 must be >= 1");

    const long long total = static_cast<long long>(spec.L) * spec.L;
    if (!spec.bernoulli_fill &&
        (static_cast<long long>(spec.rho_ppt) * total + 500) / 1000 == 0)
        throw InvalidSpecError("node count rounds to zero for this (L, rho)");

    for (int attempt = 1; attempt <= kMaxPlacementAttempts; ++attempt) {
        auto coords = draw_sites(spec, derive_seed(spec.seed, stream::placement, attempt - 1));
        if (coords.empty()) continue;  // possible under Bernoulli filling
        Graph g = build_unit_disk(spec.L, spec.r2, std::move(coords));
        if (is_connected(g)) {
            if (meta) meta->resample_attempts = attempt;
            return g;
        }
    }
    throw ResourceError("no connected placement found in " +
                        std::to_string(kMaxPlacementAttempts) + " attempts");
}

std::pair<long long, double> edge_count_bounds(int L, double rho) {
    if (L < 1) throw InvalidSpecError("L must be >= 1");
    if (!(rho > 0.0 && rho <= 1.0)) throw InvalidSpecError("rho must be in (0, 1]");
    const long long max_edges =
        std::max(0LL, 4LL * L * L - 6LL * L + 2);
    return {max_edges, rho * rho * static_cast<double>(max_edges)};
}

Graph generate_er_gnm(int n, long long m, std::uint64_t seed) {
    if (n < 0) throw InvalidSpecError("n must be non-negative");
    const long long all = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > all)
        throw InvalidSpecError("edge count out of range for G(n, m)");

    // Floyd's algorithm: uniform m-subset of pair indices.
    Xoshiro256 rng(derive_seed(seed, stream::er_edges, 0));
    std::unordered_set<long long> picked;
    picked.reserve(static_cast<std::size_t>(m) * 2 + 1);
    for (long long j = all - m; j < all; ++j) {
        const auto t = static_cast<long long>(rng.below(j + 1));
        picked.insert(picked.count(t) ? j : t);
    }

    // Pair index k (row-major over i < j) -> (i, j).
    std::vector<std::pair<int, int>> edges;
    edges.reserve(picked.size());
    for (long long k : picked) {
        int lo = 0, hi = n - 1;  // find i: base(i) <= k < base(i+1)
        auto base = [&](long long i) { return i * n - i * (i + 1) / 2; };
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (base(mid) <= k) lo = mid;
            else hi = mid - 1;
        }
        const int i = lo;
        const int j = static_cast<int>(k - base(i)) + i + 1;
        edges.emplace_back(i, j);
    }
    return make_graph(n, std::move(edges));
}

Graph rewire(const Graph& g, double epsilon, std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw InvalidSpecError("epsilon must be in [0, 1]");
    const long long m = g.edge_count();
    const auto k = static_cast<long long>(std::llround(epsilon * static_cast<double>(m)));
    if (k == 0) return g;

    Xoshiro256 rng(derive_seed(seed, stream::rewire, 0));

    // Uniform k-subset of edge indices; processing order is draw order.
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (long long t = 0; t < k; ++t) {
        const auto j = t + static_cast<long long>(rng.below(m - t));
        std::swap(idx[t], idx[j]);
    }

    const auto key = [n = g.n](int a, int b) {
        if (a > b) std::swap(a, b);
        return static_cast<long long>(a) * n + b;
    };
    std::unordered_set<long long> present;
    present.reserve(static_cast<std::size_t>(m) * 2);
    for (const auto& [a, b] : g.edges) present.insert(key(a, b));

    const long long all = static_cast<long long>(g.n) * (g.n - 1) / 2;
    std::vector<std::pair<int, int>> current = g.edges;
    for (long long t = 0; t < k; ++t) {
        const auto [olda, oldb] = g.edges[idx[t]];
        const long long avail = all - static_cast<long long>(present.size());
        if (avail == 0)
            throw ResourceError("graph too dense to rewire: no non-edge available");

        int na, nb;
        if (avail <= 4LL * g.n) {
            // Few gaps left: enumerate non-edges and index uniformly.
            std::vector<std::pair<int, int>> gaps;
            gaps.reserve(avail);
            for (int a = 0; a < g.n; ++a)
                for (int b = a + 1; b < g.n; ++b)
                    if (!present.count(key(a, b))) gaps.emplace_back(a, b);
            const auto pick = gaps[rng.below(gaps.size())];
            na = pick.first;
            nb = pick.second;
        } else {
            do {
                na = static_cast<int>(rng.below(g.n));
                nb = static_cast<int>(rng.below(g.n));
            } while (na == nb || present.count(key(na, nb)));
            if (na > nb) std::swap(na, nb);
        }

        present.erase(key(olda, oldb));
        present.insert(key(na, nb));
        auto it = std::find(current.begin(), current.end(), std::make_pair(olda, oldb));
        *it = {na, nb};
    }
    return make_graph(g.n, std::move(current), g.coords);
}

}  // namespace mis
