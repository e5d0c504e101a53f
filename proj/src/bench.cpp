#include "mis/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mis/census.hpp"
#include "mis/errors.hpp"
#include "mis/instance_io.hpp"
#include "mis/metrics.hpp"
#include "mis/rng.hpp"
#include "mis/sla.hpp"

namespace mis {

namespace {

std::atomic<bool> g_interrupted{false};

struct ParamPoint {
    int index = 0;
    int L = 0, rho_ppt = 800, r2 = 2, epsilon_ppt = 0;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Job {
    ParamPoint point;
    int seed_idx = 0;
};

std::vector<ResultRow> run_job(const ExperimentConfig& cfg, const Job& job) {
    const ParamPoint& pt = job.point;
    const std::uint64_t point_seed =
        derive_seed(cfg.master_seed, stream::instance,
                    (static_cast<std::uint64_t>(cfg.kind) << 32) |
                        static_cast<std::uint64_t>(pt.index));
    const std::uint64_t instance_seed =
        derive_seed(point_seed, stream::instance_seed_idx, job.seed_idx);

    LatticeSpec spec;
    spec.L = pt.L;
    spec.rho_ppt = pt.rho_ppt;
    spec.r2 = pt.r2;
    spec.seed = instance_seed;
    GenMeta meta;
    Graph g = generate_ud_lattice(spec, &meta);
    if (pt.epsilon_ppt > 0) g = rewire(g, pt.epsilon_ppt / 1000.0, instance_seed);

    InstanceInfo info;
    info.kind = pt.epsilon_ppt > 0 ? "rewired" : "ud_lattice";
    info.L = pt.L;
    info.rho_ppt = pt.rho_ppt;
    info.r2 = pt.r2;
    info.seed = instance_seed;
    if (pt.epsilon_ppt > 0) info.epsilon_ppt = pt.epsilon_ppt;
    info.resample_attempts = meta.resample_attempts;
    const std::string id = instance_id(info, g.n);

    auto base_row = [&](const char* solver) {
        ResultRow r;
        r.instance_id = id;
        r.solver = solver;
        r.L = pt.L;
        r.rho_ppt = pt.rho_ppt;
        r.r2 = pt.r2;
        r.epsilon_ppt = pt.epsilon_ppt;
        r.n = g.n;
        r.seed = instance_seed;
        return r;
    };

    std::vector<ResultRow> rows;
    std::optional<int> optimum;

    if (cfg.solvers.sla) {
        ResultRow r = base_row("sla");
        SlaOptions opts;
        opts.max_variants = cfg.sla_max_variants;
        if (!g.has_coords()) {
            opts.order.resize(g.n);
            for (int i = 0; i < g.n; ++i) opts.order[i] = i;
        }
        const SlaResult sr = sla_solve(g, opts);
        r.mis_size = sr.census.mis_size;
        r.tts_s = sr.wall_time_s;
        r.tto_s = sr.wall_time_s;  // the sweep proves optimality as it finishes
        r.status = "optimal";
        if (cfg.census) {
            SlaOptions copts = opts;
            copts.mode = SlaMode::census;
            const SlaResult cr = sla_solve(g, copts);
            r.d_mis = cr.census.d_mis;
            r.d_mis_m1 = cr.census.d_mis_m1;
            r.hardness = hardness(cr.census.mis_size, cr.census.d_mis, cr.census.d_mis_m1);
        }
        optimum = sr.census.mis_size;
        rows.push_back(std::move(r));
    }

    if (cfg.solvers.bnb) {
        ResultRow r = base_row("bnb");
        const BnbResult br = bnb_solve(g, cfg.bnb);
        r.mis_size = br.mis_size;
        r.tts_s = br.tts_s;
        r.tto_s = br.tto_s;
        switch (br.status) {
            case BnbStatus::optimal: r.status = "optimal"; break;
            case BnbStatus::target_reached: r.status = "target-reached"; break;
            case BnbStatus::timeout: r.status = "timeout"; break;
        }
        if (br.status == BnbStatus::optimal && !optimum) optimum = br.mis_size;
        rows.push_back(std::move(r));
    }

    if (cfg.solvers.brute) {
        ResultRow r = base_row("brute");
        const auto t0 = std::chrono::steady_clock::now();
        const Census c = brute_force_census(g);
        r.tts_s = elapsed_s(t0);
        r.tto_s = r.tts_s;
        r.mis_size = c.mis_size;
        r.d_mis = c.d_mis;
        r.d_mis_m1 = c.d_mis_m1;
        r.hardness = hardness(c.mis_size, c.d_mis, c.d_mis_m1);
        r.status = "optimal";
        if (!optimum) optimum = c.mis_size;
        rows.push_back(std::move(r));
    }

    if (cfg.solvers.sa) {
        ResultRow r = base_row("sa");
        SaConfig sa_cfg = cfg.sa;
        sa_cfg.seed = derive_seed(instance_seed, stream::solver_sa, 0);
        const SaResult sr = sa_run(g, sa_cfg, optimum);
        r.mis_size = sr.best_size;
        r.status = "feasible";
        if (cfg.sa_shots > 0 && optimum) {
            SaConfig shot_cfg = sa_cfg;
            shot_cfg.num_restarts = 1;
            const auto t0 = std::chrono::steady_clock::now();
            const PmisEstimate est = estimate_pmis(g, shot_cfg, cfg.sa_shots, *optimum);
            const double tau = elapsed_s(t0) / cfg.sa_shots;
            r.p_mis = est.p_point;
            r.shots = est.shots;
            if (est.zero_success) {
                // Lower bound from the censored estimate.
                r.status = "censored";
                r.tts_s = tts99(tau, 1.0 / (est.shots + 1));
            } else {
                r.tts_s = tts99(tau, est.p_point);
            }
        }
        rows.push_back(std::move(r));
    }

    if (cfg.solvers.pt) {
        ResultRow r = base_row("pt");
        const SaResult pr = pt_run(g, cfg.pt_ladder, cfg.pt_sweeps, cfg.pt_exchange_interval,
                                   derive_seed(instance_seed, stream::solver_pt, 0));
        r.mis_size = pr.best_size;
        r.status = "feasible";
        rows.push_back(std::move(r));
    }

    return rows;
}

std::string manifest_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["code_version"] = "0.1.0";
    j["kind"] = kind_name(cfg.kind);
    j["L_list"] = cfg.L_list;
    j["rho_ppt_list"] = cfg.rho_ppt_list;
    j["r2_list"] = cfg.r2_list;
    j["epsilon_ppt_list"] = cfg.epsilon_ppt_list;
    j["seeds_per_point"] = cfg.seeds_per_point;
    j["solvers"] = nlohmann::ordered_json::array();
    if (cfg.solvers.sla) j["solvers"].push_back("sla");
    if (cfg.solvers.bnb) j["solvers"].push_back("bnb");
    if (cfg.solvers.sa) j["solvers"].push_back("sa");
    if (cfg.solvers.pt) j["solvers"].push_back("pt");
    if (cfg.solvers.brute) j["solvers"].push_back("brute");
    j["sa"] = {{"t_start", cfg.sa.schedule.t_start},
               {"t_end", cfg.sa.schedule.t_end},
               {"depth", cfg.sa.schedule.depth},
               {"num_restarts", cfg.sa.num_restarts},
               {"bias", {cfg.sa.bias.add, cfg.sa.bias.swap, cfg.sa.bias.remove}},
               {"shots", cfg.sa_shots}};
    j["pt"] = {{"ladder", cfg.pt_ladder},
               {"sweeps", cfg.pt_sweeps},
               {"exchange_interval", cfg.pt_exchange_interval}};
    j["bnb"] = {{"time_limit_s", cfg.bnb.time_limit_s ? nlohmann::ordered_json(*cfg.bnb.time_limit_s)
                                                      : nlohmann::ordered_json(nullptr)},
                {"disable_rounding_heuristics", cfg.bnb.disable_rounding_heuristics}};
    j["clock"] = cfg.bnb.process_clock ? "process" : "wall";
    j["census"] = cfg.census;
    j["master_seed"] = cfg.master_seed;
    j["workers"] = cfg.workers;
    j["sla_max_variants"] = cfg.sla_max_variants;
    j["strip_timing"] = cfg.strip_timing;
    return j.dump(2) + "\n";
}

}  // namespace

const char* const kCsvHeader =
    "instance_id,solver,L,rho_ppt,r2,epsilon_ppt,n,seed,mis_size,d_mis,d_mis_m1,"
    "hardness,tts_s,tto_s,p_mis,shots,status";

std::string csv_line(const ResultRow& row, bool strip_timing) {
    std::ostringstream s;
    auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : ""; };
    auto opt_big = [](const std::optional<BigInt>& v) { return v ? v->str() : std::string(); };
    auto opt_dbl = [&](const std::optional<double>& v) { return v ? fmt_double(*v) : ""; };
    s << row.instance_id << ',' << row.solver << ',' << opt_int(row.L) << ','
      << opt_int(row.rho_ppt) << ',' << opt_int(row.r2) << ',' << opt_int(row.epsilon_ppt)
      << ',' << row.n << ',' << row.seed << ',' << opt_int(row.mis_size) << ','
      << opt_big(row.d_mis) << ',' << opt_big(row.d_mis_m1) << ',' << opt_dbl(row.hardness)
      << ',' << (strip_timing ? "" : opt_dbl(row.tts_s)) << ','
      << (strip_timing ? "" : opt_dbl(row.tto_s)) << ',' << opt_dbl(row.p_mis) << ','
      << opt_int(row.shots) << ',' << row.status;
    return s.str();
}

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::scaling: return "scaling";
        case ExperimentKind::radius: return "radius";
        case ExperimentKind::rewire: return "rewire";
        case ExperimentKind::hardness: return "hardness";
        case ExperimentKind::filling: return "filling";
    }
    return "scaling";
}

ExperimentKind kind_from_name(const std::string& name) {
    if (name == "scaling") return ExperimentKind::scaling;
    if (name == "radius") return ExperimentKind::radius;
    if (name == "rewire") return ExperimentKind::rewire;
    if (name == "hardness") return ExperimentKind::hardness;
    if (name == "filling") return ExperimentKind::filling;
    throw InvalidSpecError("unknown experiment kind: " + name);
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    if (cfg.solvers.count() == 0) throw InvalidSpecError("select at least one solver");
    if (cfg.L_list.empty()) throw InvalidSpecError("L_list must not be empty");
    if (cfg.seeds_per_point < 1) throw InvalidSpecError("seeds_per_point must be >= 1");
    if (cfg.census && !(cfg.solvers.sla || cfg.solvers.brute))
        throw InvalidSpecError("census requires the sla or brute solver");

    const auto rho_list = cfg.rho_ppt_list.empty() ? std::vector<int>{800} : cfg.rho_ppt_list;
    const auto r2_list = cfg.r2_list.empty() ? std::vector<int>{2} : cfg.r2_list;
    const auto eps_list =
        cfg.epsilon_ppt_list.empty() ? std::vector<int>{0} : cfg.epsilon_ppt_list;

    std::vector<ParamPoint> points;
    for (int L : cfg.L_list)
        for (int rho : rho_list)
            for (int r2 : r2_list)
                for (int eps : eps_list) {
                    ParamPoint p;
                    p.index = static_cast<int>(points.size());
                    p.L = L;
                    p.rho_ppt = rho;
                    p.r2 = r2;
                    p.epsilon_ppt = eps;
                    points.push_back(p);
                }

    std::vector<Job> jobs;
    for (const auto& p : points)
        for (int s = 0; s < cfg.seeds_per_point; ++s) jobs.push_back({p, s});

    const std::size_t job_count = jobs.size() * static_cast<std::size_t>(cfg.solvers.count());
    if (job_count > cfg.job_budget)
        throw InvalidSpecError("experiment size " + std::to_string(job_count) +
                               " exceeds job budget " + std::to_string(cfg.job_budget));

    std::vector<std::vector<ResultRow>> results(jobs.size());
    std::vector<char> done(jobs.size(), 0);
    std::atomic<std::size_t> next{0};
    std::atomic<int> failed{0};

    const int workers = std::max(1, cfg.workers);
    auto worker = [&]() {
        while (!g_interrupted.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            try {
                results[i] = run_job(cfg, jobs[i]);
            } catch (const std::exception& e) {
                ResultRow r;
                r.solver = "-";
                r.n = 0;
                r.seed = 0;
                r.L = jobs[i].point.L;
                r.rho_ppt = jobs[i].point.rho_ppt;
                r.r2 = jobs[i].point.r2;
                r.epsilon_ppt = jobs[i].point.epsilon_ppt;
                r.status = std::string("error: ") + e.what();
                results[i] = {std::move(r)};
                failed.fetch_add(1);
            }
            done[i] = 1;
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    ExperimentOutput out;
    out.total_jobs = static_cast<int>(jobs.size());
    out.failed_jobs = failed.load();
    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!done[i]) continue;  // interrupted before this job ran
        for (const auto& row : results[i]) {
            csv << csv_line(row, cfg.strip_timing) << '\n';
            out.rows.push_back(row);
        }
    }
    out.csv = csv.str();
    out.manifest = manifest_json(cfg);
    return out;
}

void request_interrupt() { g_interrupted.store(true, std::memory_order_relaxed); }

void write_experiment_files(const ExperimentConfig& cfg, const ExperimentOutput& out) {
    if (cfg.out_path.empty()) {
        std::fputs(out.csv.c_str(), stdout);
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw InvalidInputError("cannot write " + cfg.out_path);
    f << out.csv;
    std::ofstream m(cfg.out_path + ".manifest.json");
    if (!m) throw InvalidInputError("cannot write manifest for " + cfg.out_path);
    m << out.manifest;
}

}  // namespace mis
