#include "mis/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mis/errors.hpp"

namespace mis {

using ordered_json = nlohmann::ordered_json;

std::string instance_to_json(const Graph& g, const InstanceInfo& info) {
    ordered_json j;
    j["format_version"] = 1;
    j["kind"] = info.kind;
    j["L"] = info.L ? ordered_json(*info.L) : ordered_json(nullptr);
    j["rho_ppt"] = info.rho_ppt ? ordered_json(*info.rho_ppt) : ordered_json(nullptr);
    j["r2"] = info.r2 ? ordered_json(*info.r2) : ordered_json(nullptr);
    j["seed"] = info.seed;
    if (info.epsilon_ppt) j["epsilon_ppt"] = *info.epsilon_ppt;
    j["n"] = g.n;
    if (g.has_coords()) {
        auto arr = ordered_json::array();
        for (const auto& c : g.coords) arr.push_back({c[0], c[1]});
        j["coords"] = std::move(arr);
    } else {
        j["coords"] = nullptr;
    }
    auto earr = ordered_json::array();
    for (const auto& [a, b] : g.edges) earr.push_back({a, b});
    j["edges"] = std::move(earr);
    j["meta"] = {{"resample_attempts", info.resample_attempts}};
    return j.dump(2) + "\n";
}

LoadedInstance instance_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("instance parse error: ") + e.what());
    }
    if (j.value("format_version", 0) != 1)
        throw InvalidInputError("unsupported instance format_version");

    InstanceInfo info;
    info.kind = j.at("kind").get<std::string>();
    if (!j.at("L").is_null()) info.L = j.at("L").get<int>();
    if (!j.at("rho_ppt").is_null()) info.rho_ppt = j.at("rho_ppt").get<int>();
    if (!j.at("r2").is_null()) info.r2 = j.at("r2").get<int>();
    info.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("epsilon_ppt") && !j.at("epsilon_ppt").is_null())
        info.epsilon_ppt = j.at("epsilon_ppt").get<int>();
    if (j.contains("meta") && j.at("meta").contains("resample_attempts"))
        info.resample_attempts = j.at("meta").at("resample_attempts").get<int>();

    const int n = j.at("n").get<int>();
    std::vector<std::array<int, 2>> coords;
    if (!j.at("coords").is_null())
        for (const auto& c : j.at("coords")) coords.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());

    return {make_graph(n, std::move(edges), std::move(coords)), std::move(info)};
}

LoadedInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

void save_instance_file(const std::string& path, const Graph& g, const InstanceInfo& info) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write instance file: " + path);
    out << instance_to_json(g, info);
}

std::string instance_id(const InstanceInfo& info, int n) {
    std::ostringstream id;
    if (info.kind == "ud_lattice") {
        id << "ud-L" << info.L.value_or(0) << "-r" << info.rho_ppt.value_or(0) << "-q"
           << info.r2.value_or(0);
    } else if (info.kind == "er_gnm") {
        id << "er-n" << n;
    } else {
        id << "rw-L" << info.L.value_or(0) << "-r" << info.rho_ppt.value_or(0) << "-q"
           << info.r2.value_or(0) << "-e" << info.epsilon_ppt.value_or(0);
    }
    id << "-s" << info.seed;
    return id.str();
}

}  // namespace mis
