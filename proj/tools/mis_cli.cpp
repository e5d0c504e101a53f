// Benchmark CLI: instance generation, solving, degeneracy census, ILP
// export, batch experiments and scaling fits.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mis/bench.hpp"
#include "mis/bnb.hpp"
#include "mis/census.hpp"
#include "mis/errors.hpp"
#include "mis/generate.hpp"
#include "mis/instance_io.hpp"
#include "mis/metrics.hpp"
#include "mis/sa.hpp"
#include "mis/sla.hpp"

namespace {

using nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw mis::InvalidInputError("cannot write " + path);
    f << text;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

mis::SolverSelection parse_solvers(const std::string& csv) {
    mis::SolverSelection sel;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "sla") sel.sla = true;
        else if (tok == "bnb") sel.bnb = true;
        else if (tok == "sa") sel.sa = true;
        else if (tok == "pt") sel.pt = true;
        else if (tok == "brute") sel.brute = true;
        else if (!tok.empty()) throw mis::InvalidSpecError("unknown solver: " + tok);
    }
    return sel;
}

ordered_json witness_json(const std::vector<int>& w) {
    return ordered_json(w);
}

// --- solve ---------------------------------------------------------------

struct SolveArgs {
    std::string in_path, out_path;
    std::string solver = "sla";
    bool census = false;
    std::optional<double> time_limit;
    std::optional<int> target;
    std::string clock = "wall";
    int depth = 32;
    int restarts = 1;
    double t_start = 1.0, t_end = 0.05;
    std::string bias = "4,4,1";
    int shots = 0;
    std::uint64_t seed = 0;
    std::size_t max_variants = std::size_t(1) << 26;
    std::string ladder = "2.0,1.0,0.5,0.2";
    int sweeps = 32;
    int exchange_interval = 4;
};

mis::SaConfig sa_config_from(const SolveArgs& a) {
    mis::SaConfig cfg;
    cfg.schedule.depth = a.depth;
    cfg.schedule.t_start = a.t_start;
    cfg.schedule.t_end = a.t_end;
    cfg.num_restarts = a.restarts;
    cfg.seed = a.seed;
    const auto b = parse_int_list(a.bias);
    if (b.size() == 3) {
        cfg.bias.add = b[0];
        cfg.bias.swap = b[1];
        cfg.bias.remove = b[2];
    }
    return cfg;
}

int cmd_solve(const SolveArgs& a) {
    const auto inst = mis::load_instance_file(a.in_path);
    const mis::Graph& g = inst.graph;
    ordered_json j;
    j["instance_id"] = mis::instance_id(inst.info, g.n);
    j["solver"] = a.solver;

    if (a.solver == "sla") {
        mis::SlaOptions opts;
        opts.mode = a.census ? mis::SlaMode::census : mis::SlaMode::size_only;
        opts.max_variants = a.max_variants;
        if (!g.has_coords()) {
            opts.order.resize(g.n);
            for (int i = 0; i < g.n; ++i) opts.order[i] = i;
        }
        const auto r = mis::sla_solve(g, opts);
        j["mis_size"] = r.census.mis_size;
        j["d_mis"] = a.census ? ordered_json(r.census.d_mis.str()) : ordered_json(nullptr);
        j["d_mis_m1"] = a.census ? ordered_json(r.census.d_mis_m1.str()) : ordered_json(nullptr);
        j["witness"] = witness_json(r.witness);
        j["variants_peak"] = r.variants_peak;
        j["steps"] = r.steps;
        j["wall_time_s"] = r.wall_time_s;
    } else if (a.solver == "bnb") {
        mis::BnbConfig cfg;
        cfg.time_limit_s = a.time_limit;
        cfg.target = a.target;
        cfg.process_clock = a.clock == "process";
        const auto r = mis::bnb_solve(g, cfg);
        j["mis_size"] = r.mis_size;
        j["witness"] = witness_json(r.witness);
        j["tts_s"] = r.tts_s ? ordered_json(*r.tts_s) : ordered_json(nullptr);
        j["tto_s"] = r.tto_s ? ordered_json(*r.tto_s) : ordered_json(nullptr);
        auto inc = ordered_json::array();
        for (const auto& ev : r.incumbents) inc.push_back({ev.time_s, ev.size});
        j["incumbents"] = std::move(inc);
        j["nodes_explored"] = r.nodes_explored;
        j["status"] = r.status == mis::BnbStatus::optimal          ? "optimal"
                      : r.status == mis::BnbStatus::target_reached ? "target-reached"
                                                                   : "timeout";
    } else if (a.solver == "sa") {
        const auto r = mis::sa_run(g, sa_config_from(a), a.target);
        j["best_size"] = r.best_size;
        j["best_set"] = witness_json(r.best_set);
        j["per_restart_best"] = r.per_restart_best;
        j["proposals"] = r.proposals;
        j["success"] = r.success ? ordered_json(*r.success) : ordered_json(nullptr);
        if (a.shots > 0 && a.target) {
            auto scfg = sa_config_from(a);
            scfg.num_restarts = 1;
            const auto est = mis::estimate_pmis(g, scfg, a.shots, *a.target);
            j["p_mis"] = est.p_point;
            j["shots"] = est.shots;
            j["zero_success"] = est.zero_success;
        }
    } else if (a.solver == "pt") {
        std::vector<double> ladder;
        std::stringstream ss(a.ladder);
        std::string tok;
        while (std::getline(ss, tok, ',')) ladder.push_back(std::stod(tok));
        const auto r = mis::pt_run(g, ladder, a.sweeps, a.exchange_interval, a.seed);
        j["best_size"] = r.best_size;
        j["best_set"] = witness_json(r.best_set);
        j["proposals"] = r.proposals;
    } else if (a.solver == "brute") {
        const auto c = mis::brute_force_census(g);
        j["mis_size"] = c.mis_size;
        j["d_mis"] = c.d_mis.str();
        j["d_mis_m1"] = c.d_mis_m1.str();
    } else {
        throw mis::InvalidSpecError("unknown solver: " + a.solver);
    }
    write_text(a.out_path, j.dump(2) + "\n");
    return 0;
}

// --- fit -----------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw mis::InvalidInputError("results file is missing column: " + name);
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw mis::InvalidInputError("cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (ss.eof() && !line.empty() && line.back() == ',') fields.push_back("");
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            fields.resize(t.header.size());
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

int cmd_fit(const std::string& in_path, const std::string& kind, const std::string& solver,
            double percentile, double min_h, const std::string& out_path) {
    const CsvTable t = read_csv(in_path);
    const int c_solver = t.col("solver");
    const int c_id = t.col("instance_id");

    mis::FitResult fit;
    std::vector<std::pair<double, double>> points;

    if (kind == "loglinear") {
        const int c_n = t.col("n"), c_tts = t.col("tts_s");
        for (const auto& r : t.rows)
            if (r[c_solver] == solver && !r[c_tts].empty())
                points.emplace_back(std::stod(r[c_n]), std::stod(r[c_tts]));
        fit = mis::fit_loglinear_top(points, percentile);
    } else {
        // Join hardness (census row) with the solver row per instance.
        const int c_h = t.col("hardness");
        const int c_val = t.col(kind == "powerlaw" ? "p_mis" : "tts_s");
        std::map<std::string, double> h_by_id;
        for (const auto& r : t.rows)
            if (!r[c_h].empty()) h_by_id[r[c_id]] = std::stod(r[c_h]);
        for (const auto& r : t.rows) {
            if (r[c_solver] != solver || r[c_val].empty()) continue;
            const auto it = h_by_id.find(r[c_id]);
            if (it != h_by_id.end()) points.emplace_back(it->second, std::stod(r[c_val]));
        }
        fit = kind == "powerlaw" ? mis::fit_pmis_powerlaw(points)
                                 : mis::tts_hardness_scaling(points, min_h);
    }

    ordered_json j;
    j["kind"] = fit.kind;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    if (fit.kind != "loglinear") {
        j["alpha"] = fit.alpha;
        j["c"] = fit.c;
    } else {
        // Exponential base b in tts ~ b^n implied by the log10 slope.
        j["base2_exponent"] = fit.slope * std::log2(10.0);
    }
    j["points_used"] = fit.points_used;
    j["points_excluded"] = fit.points_excluded;
    auto arr = ordered_json::array();
    for (const auto& [x, y] : points) arr.push_back({x, y});
    j["points"] = std::move(arr);
    write_text(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum-independent-set solvers and hardness benchmarks "
                 "on unit-disk lattice graphs"};
    app.require_subcommand(1);
    std::signal(SIGINT, [](int) { mis::request_interrupt(); });

    try {
        // gen
        auto* gen = app.add_subcommand("gen", "generate an instance file");
        std::string g_kind = "ud", g_out;
        int g_L = 13, g_rho = 800, g_r2 = 2, g_n = 0;
        long long g_m = 0;
        std::uint64_t g_seed = 1;
        bool g_bernoulli = false;
        gen->add_option("--kind", g_kind, "ud | er");
        gen->add_option("--L", g_L);
        gen->add_option("--rho-ppt", g_rho);
        gen->add_option("--r2", g_r2);
        gen->add_option("--n", g_n, "er only");
        gen->add_option("--m", g_m, "er only");
        gen->add_option("--seed", g_seed);
        gen->add_flag("--bernoulli", g_bernoulli, "per-site occupancy instead of fixed N");
        gen->add_option("--out", g_out);

        // rewire
        auto* rw = app.add_subcommand("rewire", "rewire a fraction of edges");
        std::string rw_in, rw_out;
        int rw_eps = 0;
        std::uint64_t rw_seed = 1;
        rw->add_option("--in", rw_in)->required();
        rw->add_option("--epsilon-ppt", rw_eps)->required();
        rw->add_option("--seed", rw_seed);
        rw->add_option("--out", rw_out);

        // solve
        auto* solve = app.add_subcommand("solve", "run one solver on an instance");
        SolveArgs sa;
        solve->add_option("--in", sa.in_path)->required();
        solve->add_option("--solver", sa.solver, "sla | bnb | sa | pt | brute");
        solve->add_flag("--census", sa.census, "exact degeneracy counts (sla)");
        double sa_tl = 0.0;
        solve->add_option("--time-limit", sa_tl, "seconds (bnb)");
        int sa_target = -1;
        solve->add_option("--target", sa_target, "known optimum (bnb tts mode / sa success)");
        solve->add_option("--clock", sa.clock, "wall | process");
        solve->add_option("--depth", sa.depth);
        solve->add_option("--restarts", sa.restarts);
        solve->add_option("--t-start", sa.t_start);
        solve->add_option("--t-end", sa.t_end);
        solve->add_option("--bias", sa.bias, "w_add,w_swap,w_remove");
        solve->add_option("--shots", sa.shots);
        solve->add_option("--seed", sa.seed);
        solve->add_option("--max-variants", sa.max_variants);
        solve->add_option("--ladder", sa.ladder, "pt temperatures, decreasing");
        solve->add_option("--sweeps", sa.sweeps);
        solve->add_option("--exchange-interval", sa.exchange_interval);
        solve->add_option("--out", sa.out_path);

        // census
        auto* cen = app.add_subcommand("census", "hardness census row for an instance");
        std::string cen_in, cen_out;
        std::size_t cen_budget = std::size_t(1) << 26;
        cen->add_option("--in", cen_in)->required();
        cen->add_option("--max-variants", cen_budget);
        cen->add_option("--out", cen_out);

        // export-ilp
        auto* ilp = app.add_subcommand("export-ilp", "write the integer program in LP format");
        std::string ilp_in, ilp_out;
        ilp->add_option("--in", ilp_in)->required();
        ilp->add_option("--out", ilp_out);

        // bench
        auto* bench = app.add_subcommand("bench", "run an experiment batch");
        std::string b_kind = "scaling";
        bench->add_option("kind", b_kind, "scaling | radius | rewire | hardness | filling");
        std::string b_L = "7,9,11", b_rho, b_r2, b_eps, b_solvers = "sla,bnb";
        int b_seeds = 25, b_workers = 1, b_depth = 32, b_restarts = 4, b_shots = 0;
        double b_tstart = 1.0, b_tend = 0.05, b_tl = 0.0;
        std::uint64_t b_master = 1;
        bool b_census = false, b_strip = false;
        std::string b_clock = "wall", b_out;
        std::size_t b_maxvar = std::size_t(1) << 26;
        bench->add_option("--L-list", b_L);
        bench->add_option("--rho-list", b_rho);
        bench->add_option("--r2-list", b_r2);
        bench->add_option("--eps-list", b_eps);
        bench->add_option("--seeds", b_seeds, "instances per parameter point");
        bench->add_option("--solvers", b_solvers);
        bench->add_option("--depth", b_depth);
        bench->add_option("--restarts", b_restarts);
        bench->add_option("--t-start", b_tstart);
        bench->add_option("--t-end", b_tend);
        bench->add_option("--shots", b_shots, "success-probability shots per instance");
        bench->add_flag("--census", b_census, "exact degeneracy census per instance");
        bench->add_option("--time-limit", b_tl, "bnb time limit, seconds");
        bench->add_option("--seed", b_master, "master seed");
        bench->add_option("--workers", b_workers);
        bench->add_option("--clock", b_clock, "wall | process");
        bench->add_flag("--strip-timing", b_strip, "blank timing columns");
        bench->add_option("--max-variants", b_maxvar);
        bench->add_option("--out", b_out, "CSV path (manifest written alongside)");

        // fit
        auto* fit = app.add_subcommand("fit", "fit scaling laws to a results CSV");
        std::string f_in, f_kind = "loglinear", f_solver = "bnb", f_out;
        double f_pct = 0.02, f_minh = 10.0;
        fit->add_option("--in", f_in)->required();
        fit->add_option("--kind", f_kind, "loglinear | powerlaw | tts-hardness");
        fit->add_option("--solver", f_solver, "solver whose rows are fitted");
        fit->add_option("--percentile", f_pct, "top fraction kept per size group");
        fit->add_option("--min-h", f_minh, "hardness threshold (tts-hardness)");
        fit->add_option("--out", f_out);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;  // help exits cleanly; bad flags are config errors
        }

        if (gen->parsed()) {
            mis::InstanceInfo info;
            mis::Graph g;
            if (g_kind == "ud") {
                mis::LatticeSpec spec;
                spec.L = g_L;
                spec.rho_ppt = g_rho;
                spec.r2 = g_r2;
                spec.seed = g_seed;
                spec.bernoulli_fill = g_bernoulli;
                mis::GenMeta meta;
                g = mis::generate_ud_lattice(spec, &meta);
                info.kind = "ud_lattice";
                info.L = g_L;
                info.rho_ppt = g_rho;
                info.r2 = g_r2;
                info.resample_attempts = meta.resample_attempts;
            } else if (g_kind == "er") {
                g = mis::generate_er_gnm(g_n, g_m, g_seed);
                info.kind = "er_gnm";
            } else {
                throw mis::InvalidSpecError("unknown instance kind: " + g_kind);
            }
            info.seed = g_seed;
            write_text(g_out, mis::instance_to_json(g, info));
        } else if (rw->parsed()) {
            auto inst = mis::load_instance_file(rw_in);
            const auto out = mis::rewire(inst.graph, rw_eps / 1000.0, rw_seed);
            mis::InstanceInfo info = inst.info;
            info.kind = "rewired";
            info.epsilon_ppt = rw_eps;
            info.seed = rw_seed;
            write_text(rw_out, mis::instance_to_json(out, info));
        } else if (solve->parsed()) {
            if (sa_tl > 0) sa.time_limit = sa_tl;
            if (sa_target >= 0) sa.target = sa_target;
            return cmd_solve(sa);
        } else if (cen->parsed()) {
            const auto inst = mis::load_instance_file(cen_in);
            mis::SlaOptions opts;
            opts.mode = mis::SlaMode::census;
            opts.max_variants = cen_budget;
            if (!inst.graph.has_coords()) {
                opts.order.resize(inst.graph.n);
                for (int i = 0; i < inst.graph.n; ++i) opts.order[i] = i;
            }
            const auto r = mis::sla_solve(inst.graph, opts);
            const double h = mis::hardness(r.census.mis_size, r.census.d_mis, r.census.d_mis_m1);
            std::ostringstream row;
            row << "instance_id,n,L,rho_ppt,r2,seed,mis_size,d_mis,d_mis_m1,hardness\n"
                << mis::instance_id(inst.info, inst.graph.n) << ',' << inst.graph.n << ','
                << (inst.info.L ? std::to_string(*inst.info.L) : "") << ','
                << (inst.info.rho_ppt ? std::to_string(*inst.info.rho_ppt) : "") << ','
                << (inst.info.r2 ? std::to_string(*inst.info.r2) : "") << ',' << inst.info.seed
                << ',' << r.census.mis_size << ',' << r.census.d_mis.str() << ','
                << r.census.d_mis_m1.str() << ',' << h << "\n";
            write_text(cen_out, row.str());
        } else if (ilp->parsed()) {
            const auto inst = mis::load_instance_file(ilp_in);
            write_text(ilp_out, mis::export_ilp(inst.graph));
        } else if (bench->parsed()) {
            mis::ExperimentConfig cfg;
            cfg.kind = mis::kind_from_name(b_kind);
            cfg.L_list = parse_int_list(b_L);
            cfg.rho_ppt_list = parse_int_list(b_rho);
            cfg.r2_list = parse_int_list(b_r2);
            cfg.epsilon_ppt_list = parse_int_list(b_eps);
            cfg.seeds_per_point = b_seeds;
            cfg.solvers = parse_solvers(b_solvers);
            cfg.sa.schedule.depth = b_depth;
            cfg.sa.schedule.t_start = b_tstart;
            cfg.sa.schedule.t_end = b_tend;
            cfg.sa.num_restarts = b_restarts;
            cfg.sa_shots = b_shots;
            cfg.census = b_census;
            if (b_tl > 0) cfg.bnb.time_limit_s = b_tl;
            cfg.bnb.process_clock = b_clock == "process";
            cfg.master_seed = b_master;
            cfg.workers = b_workers;
            cfg.strip_timing = b_strip;
            cfg.sla_max_variants = b_maxvar;
            cfg.out_path = b_out;
            const auto out = mis::run_experiment(cfg);
            mis::write_experiment_files(cfg, out);
            if (out.total_jobs > 0 && out.failed_jobs == out.total_jobs) return 3;
        } else if (fit->parsed()) {
            return cmd_fit(f_in, f_kind, f_solver, f_pct, f_minh, f_out);
        }
        return 0;
    } catch (const mis::InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mis::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
