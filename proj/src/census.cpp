#include "mis/census.hpp"

#include <bit>
#include <cstdint>
#include <vector>

#include "mis/errors.hpp"

namespace mis {

namespace {

// Coefficients of the independence polynomial: counts[k] = number of
// independent sets of size k within the still-active vertex mask.
// Counts fit in 64 bits for n <= 34 (bounded by 2^n).
using Poly = std::vector<std::uint64_t>;

void add_shifted(Poly& acc, const Poly& p, int shift) {
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += p[i];
}

Poly ispoly(std::uint64_t active, const std::vector<std::uint64_t>& nbr) {
    if (active == 0) return {1};

    // Branch vertex: maximum degree within the active set, lowest id first.
    int v = -1, best_deg = -1;
    for (std::uint64_t rest = active; rest;) {
        const int u = std::countr_zero(rest);
        rest &= rest - 1;
        const int d = std::popcount(nbr[u] & active);
        if (d > best_deg) {
            best_deg = d;
            v = u;
        }
    }

    if (best_deg == 0) {
        // All isolated: binomial row over the remaining k vertices.
        const int k = std::popcount(active);
        Poly p(k + 1);
        p[0] = 1;
        for (int i = 1; i <= k; ++i) p[i] = p[i - 1] * (k - i + 1) / i;
        return p;
    }

    Poly without = ispoly(active & ~(1ULL << v), nbr);
    Poly with = ispoly(active & ~(nbr[v] | (1ULL << v)), nbr);
    add_shifted(without, with, 1);
    return without;
}

}  // namespace

Census brute_force_census(const Graph& g) {
    if (g.n > 34) throw ResourceError("brute-force census guarded to n <= 34");
    if (g.n == 0) throw InvalidInputError("census undefined for the empty graph");

    std::vector<std::uint64_t> nbr(g.n, 0);
    for (const auto& [a, b] : g.edges) {
        nbr[a] |= 1ULL << b;
        nbr[b] |= 1ULL << a;
    }
    const std::uint64_t all = g.n == 64 ? ~0ULL : (1ULL << g.n) - 1;
    const Poly p = ispoly(all, nbr);

    int mis = static_cast<int>(p.size()) - 1;
    while (mis > 0 && p[mis] == 0) --mis;

    Census c;
    c.mis_size = mis;
    c.d_mis = p[mis];
    c.d_mis_m1 = mis >= 1 ? BigInt(p[mis - 1]) : BigInt(0);
    return c;
}

}  // namespace mis
