#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mis/bnb.hpp"
#include "mis/census.hpp"
#include "mis/generate.hpp"
#include "mis/graph.hpp"
#include "mis/sa.hpp"

namespace mis {

enum class ExperimentKind { scaling, radius, rewire, hardness, filling };

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct SolverSelection {
    bool sla = false;
    bool bnb = false;
    bool sa = false;
    bool pt = false;
    bool brute = false;

    int count() const { return sla + bnb + sa + pt + brute; }
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::scaling;
    std::vector<int> L_list;
    std::vector<int> rho_ppt_list;      // default {800}
    std::vector<int> r2_list;           // default {2}
    std::vector<int> epsilon_ppt_list;  // default {0}
    int seeds_per_point = 25;
    SolverSelection solvers;
    SaConfig sa;
    int sa_shots = 0;  // > 0: estimate success probability per instance
    std::vector<double> pt_ladder = {2.0, 1.0, 0.5, 0.2};
    int pt_sweeps = 32;
    int pt_exchange_interval = 4;
    BnbConfig bnb;
    bool census = false;  // exact degeneracy counts on every instance
    std::uint64_t master_seed = 1;
    int workers = 1;
    bool strip_timing = false;  // blank timing columns (reproducibility checks)
    std::size_t job_budget = 200000;
    std::size_t sla_max_variants = std::size_t(1) << 26;
    std::string out_path;  // CSV path; empty writes to stdout
};

// One CSV row. Missing metrics stay unset and serialize as empty fields.
struct ResultRow {
    std::string instance_id;
    std::string solver;
    std::optional<int> L, rho_ppt, r2, epsilon_ppt;
    int n = 0;
    std::uint64_t seed = 0;
    std::optional<int> mis_size;
    std::optional<BigInt> d_mis, d_mis_m1;
    std::optional<double> hardness;
    std::optional<double> tts_s, tto_s;
    std::optional<double> p_mis;
    std::optional<int> shots;
    std::string status;
};

extern const char* const kCsvHeader;
std::string csv_line(const ResultRow& row, bool strip_timing);

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    std::string csv;       // header + rows in canonical order
    std::string manifest;  // JSON: config, code version, clock mode
    int failed_jobs = 0;
    int total_jobs = 0;
};

// Expands the parameter grid, runs every (instance, solver) job on a
// worker pool, and emits rows sorted by (parameter point, seed, solver)
// independent of scheduling. Per-job failures become status rows; the
// batch only fails when every job does.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

void write_experiment_files(const ExperimentConfig& cfg, const ExperimentOutput& out);

// Signal-safe: stops the worker pool after the jobs in flight finish, so a
// partial batch still flushes completed rows and the manifest.
void request_interrupt();

}  // namespace mis
