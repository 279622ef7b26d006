// plse: solver front-end for partial Latin square extension and completion.
//
// Subcommands: generate (random instances), solve (run the memetic solver),
// verify (check a certificate), bench (solve a suite and emit CSV/JSON).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plse/bench.hpp"
#include "plse/engine.hpp"
#include "plse/oracle.hpp"
#include "plse/report.hpp"
#include "plse/verify.hpp"

namespace fs = std::filesystem;
using namespace plse;

namespace {

struct CommonFlags {
    int p = 1024;
    double alpha = 0.6;
    double gamma = 10.0;
    double beta = 20.0;
    std::int64_t phase1_iters = 0;
    std::int64_t phase2_iters = 0;
    std::string variant = "mpma";
    std::string crossover = "aux";
    std::string matching = "nearest";
    std::string exclusion = "run";
    double time_limit = 0;
    std::int64_t iter_limit = 0;
    std::int64_t gen_limit = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool paper_params = false;
};

void add_solver_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("-p,--pop", flags.p, "population size (default 1024)");
    cmd->add_option("--alpha", flags.alpha, "tabu tenure slope (default 0.6)");
    cmd->add_option("--gamma", flags.gamma, "population spacing divisor (default 10)");
    cmd->add_option("--beta", flags.beta, "AUX crossover divisor (default 20)");
    cmd->add_option("--phase1-iters", flags.phase1_iters, "phase-1 tabu iterations (0 = 100*|V|)");
    cmd->add_option("--phase2-iters", flags.phase2_iters, "phase-2 tabu iterations (0 = 2*|V|)");
    cmd->add_option("--variant", flags.variant, "mpma|partial (partial suits r >= 0.8)");
    cmd->add_option("--crossover", flags.crossover, "aux|ux|none");
    cmd->add_option("--matching", flags.matching, "nearest|random");
    cmd->add_option("--exclusion", flags.exclusion, "tested-pair exclusion: run|generation|off");
    cmd->add_option("--time-limit", flags.time_limit, "wall-clock limit in seconds (0 = none)");
    cmd->add_option("--iter-limit", flags.iter_limit, "total tabu-iteration budget (0 = none)");
    cmd->add_option("--gen-limit", flags.gen_limit, "generation cap (0 = none)");
    cmd->add_option("--seed", flags.seed, "master RNG seed (omitted: drawn from OS entropy)")
        ->each([&](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--workers", flags.workers, "worker threads (default: hardware, or PLSE_WORKERS)");
    cmd->add_flag("--paper-params", flags.paper_params,
                  "use the published defaults (p=12288, alpha=0.6, gamma=10, beta=20)");
}

std::uint64_t resolve_seed(CommonFlags& flags) {
    if (!flags.seed_set) {
        std::random_device entropy;
        flags.seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
    }
    return flags.seed;
}

int resolve_workers(const CommonFlags& flags) {
    if (flags.workers > 0) return flags.workers;
    if (const char* env = std::getenv("PLSE_WORKERS")) {
        const int count = std::atoi(env);
        if (count > 0) return count;
    }
    return default_workers();
}

SolverConfig make_config(CommonFlags& flags) {
    SolverConfig config;
    config.p = flags.paper_params ? 12288 : flags.p;
    config.alpha = flags.alpha;
    config.gamma = flags.gamma;
    config.phase1_iters = flags.phase1_iters;
    config.phase2_iters = flags.phase2_iters;
    config.variant = parse_variant(flags.variant);
    config.crossover.mode = parse_crossover(flags.crossover);
    config.crossover.beta = flags.beta;
    config.crossover.matching = parse_matching(flags.matching);
    config.crossover.exclusion = parse_exclusion(flags.exclusion);
    config.limits.time_seconds = flags.time_limit;
    config.limits.total_iterations = flags.iter_limit;
    config.limits.generations = flags.gen_limit;
    config.master_seed = resolve_seed(flags);
    config.workers = resolve_workers(flags);
    config.validate();
    return config;
}

void warn_memory(const SolverConfig& config, int vertex_count) {
    // Three p x p int32 blocks plus ~3p colorings.
    const double bytes = 3.0 * config.p * config.p * 4 + 3.0 * config.p * vertex_count * 2;
    if (bytes > 2e9)
        std::cerr << "warning: p=" << config.p << " needs about " << static_cast<long long>(bytes / 1e6)
                  << " MB for distance blocks; consider a smaller --pop\n";
}

int cmd_generate(int n, double r, int count, CommonFlags& flags, const std::string& out_dir) {
    const std::uint64_t master = resolve_seed(flags);
    fs::create_directories(out_dir);
    const int r_tag = static_cast<int>(std::lround(100.0 * r));
    for (int id = 1; id <= count; ++id) {
        const std::uint64_t seed = derive_seed(master, stream_tag::kInstanceGen, static_cast<std::uint64_t>(id));
        const PlsInstance instance = generate_instance(n, r, seed);
        const fs::path path = fs::path(out_dir) /
                              ("QC-" + std::to_string(n) + "-" + std::to_string(r_tag) + "-" +
                               std::to_string(id) + ".txt");
        save_instance(instance, path.string());
        std::cout << path.string() << " (" << instance.filled_count() << " filled)\n";
    }
    std::cerr << "seed " << master << '\n';
    return 0;
}

int cmd_solve(const std::string& instance_path, CommonFlags& flags, const std::string& json_path,
              const std::string& cert_path, bool log, bool timing) {
    const PlsInstance instance = load_instance(instance_path);
    SolverConfig config = make_config(flags);

    GenerationCallback callback;
    if (log) {
        callback = [](const GenerationStats& stats) {
            std::cerr << "gen " << stats.generation << " best_f " << stats.best_f << " mean_f "
                      << stats.mean_f << " mean_dist " << stats.mean_distance << " iters "
                      << stats.iterations << " elapsed " << stats.elapsed_seconds;
            if (stats.shortfall > 0) std::cerr << " shortfall " << stats.shortfall;
            std::cerr << '\n';
        };
    }

    {
        const ReducedGraph reduced = preprocess(build_graph(instance));
        warn_memory(config, reduced.vertex_count());
    }

    const RunResult result = run(instance, config, callback);

    const auto j = result_to_json(fs::path(instance_path).filename().string(), instance.order(),
                                  result, config, timing);
    if (json_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(json_path);
        out << j.dump(2) << '\n';
    }

    if (!cert_path.empty()) {
        const ReducedGraph reduced = preprocess(build_graph(instance));
        save_instance(to_grid(instance, reduced, result.best_solution), cert_path);
    }

    std::cerr << "score " << result.best_score << '/' << result.upper_bound
              << (result.proven_optimal ? " (optimal)" : "") << " in " << result.elapsed_seconds
              << "s, " << result.total_iterations << " iterations, seed " << config.master_seed
              << '\n';
    return result.proven_optimal ? 0 : 2;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path, bool exact,
               std::int64_t node_budget) {
    const PlsInstance instance = load_instance(instance_path);
    const PlsInstance certificate = load_instance(cert_path);
    const VerifyReport report = verify_certificate(instance, certificate);
    if (!report.legal) {
        std::cout << "illegal certificate:\n";
        for (const std::string& problem : report.problems) std::cout << "  " << problem << '\n';
        return 1;
    }
    std::cout << "legal, score " << report.score << '\n';
    const ReducedGraph reduced = preprocess(build_graph(instance));
    const InstanceBounds bounds = compute_bounds(reduced);
    std::cout << "upper bound " << bounds.upper_bound << " (l = " << bounds.l << ")\n";
    if (exact) {
        const OracleResult oracle = solve_exact(reduced, node_budget);
        const int optimum = instance.order() * instance.order() - reduced.l - oracle.optimum_f;
        std::cout << "exact optimum " << optimum << (oracle.exact ? "" : " (budget exhausted)")
                  << ", gap " << optimum - report.score << '\n';
    }
    return 0;
}

int cmd_bench(const std::string& suite_dir, CommonFlags& flags, int repeats,
              const std::string& csv_path, const std::string& json_path,
              const std::vector<std::string>& crossovers, const std::vector<std::string>& matchings,
              const std::vector<int>& pops, int jobs) {
    std::vector<BenchTask> tasks;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(suite_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files)
        tasks.push_back({file.string(), file.stem().string(), static_cast<int>(tasks.size())});
    if (tasks.empty()) {
        std::cerr << "error: no .txt instances under " << suite_dir << '\n';
        return 1;
    }

    const SolverConfig base = make_config(flags);
    std::vector<SolverConfig> sweep;
    const auto cross_list = crossovers.empty() ? std::vector<std::string>{flags.crossover} : crossovers;
    const auto match_list = matchings.empty() ? std::vector<std::string>{flags.matching} : matchings;
    const auto pop_list = pops.empty() ? std::vector<int>{base.p} : pops;
    for (const std::string& cross : cross_list)
        for (const std::string& match : match_list)
            for (int p : pop_list) {
                SolverConfig config = base;
                config.crossover.mode = parse_crossover(cross);
                config.crossover.matching = parse_matching(match);
                config.p = p;
                config.validate();
                sweep.push_back(config);
            }

    const BenchReport report =
        run_bench(tasks, sweep, repeats, base.master_seed, jobs, &std::cerr);

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        write_rows_csv(report, out);
        std::cerr << "rows -> " << csv_path << '\n';
    } else {
        write_rows_csv(report, std::cout);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report_to_json(report).dump(2) << '\n';
        std::cerr << "report -> " << json_path << '\n';
    }
    std::ostringstream agg;
    write_aggregates_csv(report, agg);
    std::cerr << agg.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial Latin square extension solver"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "generate random instances");
    int gen_n = 50;
    double gen_r = 0.5;
    int gen_count = 1;
    std::string gen_dir = ".";
    CommonFlags gen_flags;
    generate->add_option("-n,--order", gen_n, "grid order")->required();
    generate->add_option("-r,--ratio", gen_r, "fill ratio in (0,1)")->required();
    generate->add_option("-c,--count", gen_count, "number of instances");
    generate->add_option("-o,--out-dir", gen_dir, "output directory");
    generate->add_option("--seed", gen_flags.seed, "master seed")
        ->each([&](const std::string&) { gen_flags.seed_set = true; });

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string solve_instance;
    std::string solve_json, solve_cert;
    bool solve_log = false, solve_timing = false;
    CommonFlags solve_flags;
    solve->add_option("instance", solve_instance, "instance file")->required();
    solve->add_option("--json", solve_json, "write the run result JSON here (default: stdout)");
    solve->add_option("--cert", solve_cert, "write the completed-grid certificate here");
    solve->add_flag("--log", solve_log, "per-generation log on stderr");
    solve->add_flag("--timing", solve_timing, "include wall-clock time in the JSON output");
    add_solver_flags(solve, solve_flags);

    // verify
    auto* verify = app.add_subcommand("verify", "validate a certificate against its instance");
    std::string verify_instance, verify_cert;
    bool verify_exact = false;
    std::int64_t verify_budget = 50'000'000;
    verify->add_option("instance", verify_instance, "instance file")->required();
    verify->add_option("certificate", verify_cert, "certificate file")->required();
    verify->add_flag("--exact", verify_exact, "also compute the exact optimum (small instances)");
    verify->add_option("--node-budget", verify_budget, "search-node cap for --exact");

    // bench
    auto* bench = app.add_subcommand("bench", "solve a directory of instances");
    std::string bench_dir;
    int bench_repeats = 5;
    std::string bench_csv, bench_json;
    std::vector<std::string> bench_crossovers, bench_matchings;
    std::vector<int> bench_pops;
    int bench_jobs = 1;
    CommonFlags bench_flags;
    bench->add_option("suite", bench_dir, "directory of instance files")->required();
    bench->add_option("--repeats", bench_repeats, "independent runs per instance (default 5)");
    bench->add_option("--csv", bench_csv, "write per-run rows CSV here (default: stdout)");
    bench->add_option("--json", bench_json, "write the full report JSON here");
    bench->add_option("--sweep-crossover", bench_crossovers, "ablation: crossover modes to sweep");
    bench->add_option("--sweep-matching", bench_matchings, "ablation: matching strategies to sweep");
    bench->add_option("--sweep-pop", bench_pops, "ablation: population sizes to sweep");
    bench->add_option("--jobs", bench_jobs, "instances solved concurrently (default 1)");
    add_solver_flags(bench, bench_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_n, gen_r, gen_count, gen_flags, gen_dir);
        if (solve->parsed())
            return cmd_solve(solve_instance, solve_flags, solve_json, solve_cert, solve_log,
                             solve_timing);
        if (verify->parsed()) return cmd_verify(verify_instance, verify_cert, verify_exact, verify_budget);
        if (bench->parsed())
            return cmd_bench(bench_dir, bench_flags, bench_repeats, bench_csv, bench_json,
                             bench_crossovers, bench_matchings, bench_pops, bench_jobs);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
