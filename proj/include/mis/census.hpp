#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "mis/graph.hpp"

namespace mis {

using BigInt = boost::multiprecision::cpp_int;

// Exact ground- and first-excited-state degeneracies: the number of
// independent sets of size |MIS| and |MIS|-1 (not only maximal ones).
struct Census {
    int mis_size = 0;
    BigInt d_mis = 0;
    BigInt d_mis_m1 = 0;

    bool operator==(const Census&) const = default;
};

// Exhaustive census by branching on a maximum-degree vertex. Guarded to
// n <= 34; the independent oracle every solver is checked against.
Census brute_force_census(const Graph& g);

}  // namespace mis
