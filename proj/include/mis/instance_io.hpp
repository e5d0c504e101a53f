#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mis/generate.hpp"
#include "mis/graph.hpp"

namespace mis {

// Provenance carried alongside a graph in the instance file (format_version 1).
struct InstanceInfo {
    std::string kind;  // "ud_lattice" | "er_gnm" | "rewired"
    std::optional<int> L;
    std::optional<int> rho_ppt;
    std::optional<int> r2;
    std::uint64_t seed = 0;
    std::optional<int> epsilon_ppt;  // rewired only
    int resample_attempts = 1;
};

// Canonical serialization: fixed field order, sorted edges, so files are
// diffable and hashes stable.
std::string instance_to_json(const Graph& g, const InstanceInfo& info);

struct LoadedInstance {
    Graph graph;
    InstanceInfo info;
};
LoadedInstance instance_from_json(const std::string& text);

LoadedInstance load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const Graph& g, const InstanceInfo& info);

// Short stable identifier used in CSV rows, e.g. "ud-L13-r800-q2-s42".
std::string instance_id(const InstanceInfo& info, int n);

}  // namespace mis
