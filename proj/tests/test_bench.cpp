#include <doctest.h>

#include <map>
#include <sstream>

#include "mis/bench.hpp"
#include "mis/errors.hpp"

using namespace mis;

namespace {

ExperimentConfig small_scaling() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::scaling;
    cfg.L_list = {5, 6};
    cfg.seeds_per_point = 4;
    cfg.solvers.sla = true;
    cfg.solvers.bnb = true;
    cfg.solvers.sa = true;
    cfg.sa.num_restarts = 2;
    cfg.sa.schedule.depth = 8;
    cfg.master_seed = 7;
    cfg.strip_timing = true;
    return cfg;
}

}  // namespace

TEST_CASE("experiment rows are canonical and cross-solver consistent") {
    const ExperimentOutput out = run_experiment(small_scaling());
    CHECK(out.failed_jobs == 0);
    CHECK(out.total_jobs == 8);
    CHECK(out.rows.size() == 8 * 3);

    std::map<std::string, int> exact_by_instance;
    for (const auto& row : out.rows) {
        CHECK(row.n > 0);
        if (row.solver == "sla") {
            REQUIRE(row.mis_size.has_value());
            exact_by_instance[row.instance_id] = *row.mis_size;
        }
    }
    for (const auto& row : out.rows) {
        if (row.solver == "bnb") {
            CHECK(row.status == "optimal");
            CHECK(*row.mis_size == exact_by_instance.at(row.instance_id));
        }
        if (row.solver == "sa") {
            CHECK(*row.mis_size <= exact_by_instance.at(row.instance_id));
            CHECK(row.status == "feasible");
        }
    }
}

TEST_CASE("worker count never changes the emitted bytes") {
    ExperimentConfig cfg = small_scaling();
    cfg.workers = 1;
    const std::string csv1 = run_experiment(cfg).csv;
    cfg.workers = 8;
    const std::string csv8 = run_experiment(cfg).csv;
    CHECK(csv1 == csv8);
    CHECK(csv1.find(kCsvHeader) == 0);
}

TEST_CASE("census columns populated when requested") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::hardness;
    cfg.L_list = {5};
    cfg.seeds_per_point = 3;
    cfg.solvers.sla = true;
    cfg.solvers.sa = true;
    cfg.census = true;
    cfg.sa_shots = 8;
    cfg.sa.schedule.depth = 8;
    const ExperimentOutput out = run_experiment(cfg);
    CHECK(out.failed_jobs == 0);
    for (const auto& row : out.rows) {
        if (row.solver == "sla") {
            REQUIRE(row.d_mis.has_value());
            CHECK(*row.d_mis >= 1);
            REQUIRE(row.hardness.has_value());
            CHECK(*row.hardness > 0);
        }
        if (row.solver == "sa") {
            REQUIRE(row.shots.has_value());
            CHECK(*row.shots == 8);
            REQUIRE(row.p_mis.has_value());
        }
    }
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.L_list = {5};
    CHECK_THROWS_AS(run_experiment(cfg), InvalidSpecError);  // no solver

    cfg.solvers.sa = true;
    cfg.census = true;
    CHECK_THROWS_AS(run_experiment(cfg), InvalidSpecError);  // census needs sla/brute

    cfg.census = false;
    cfg.seeds_per_point = 1000000;
    CHECK_THROWS_AS(run_experiment(cfg), InvalidSpecError);  // job budget
}

TEST_CASE("csv line formats empties, not zeros") {
    ResultRow row;
    row.instance_id = "x";
    row.solver = "sa";
    row.n = 5;
    row.seed = 9;
    row.status = "feasible";
    const std::string line = csv_line(row, false);
    CHECK(line == "x,sa,,,,,5,9,,,,,,,,,feasible");
}

TEST_CASE("manifest records the configuration") {
    ExperimentConfig cfg = small_scaling();
    const ExperimentOutput out = run_experiment(cfg);
    CHECK(out.manifest.find("\"kind\": \"scaling\"") != std::string::npos);
    CHECK(out.manifest.find("\"master_seed\": 7") != std::string::npos);
    CHECK(out.manifest.find("\"code_version\"") != std::string::npos);
    CHECK(out.manifest.find("\"clock\": \"wall\"") != std::string::npos);
}
