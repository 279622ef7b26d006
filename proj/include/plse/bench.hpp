#ifndef PLSE_BENCH_HPP
#define PLSE_BENCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "plse/report.hpp"

namespace plse {

struct BenchRow {
    std::string instance;
    int n = 0;
    int r_percent = 0;
    std::string id;
    int repeat = 0;
    std::uint64_t seed = 0;
    int p = 0;
    std::string crossover;
    std::string matching;
    std::string variant;
    int score = 0;
    int f = 0;
    int upper_bound = 0;
    bool proven_optimal = false;
    std::int64_t generations = 0;
    std::int64_t iterations = 0;
    double elapsed_seconds = 0;
};

struct BenchAggregate {
    int n = 0;
    int r_percent = 0;
    std::string crossover;
    std::string matching;
    std::string variant;
    int p = 0;
    int instances = 0;
    int runs = 0;
    double f_best_mean = 0;  // mean over instances of the best score across repeats
    double f_avg_mean = 0;   // mean score over all runs
    double optimal_rate = 0;
    double time_mean = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;
};

// Instance naming convention QC-<n>-<100r>-<id>; anything else falls back to
// the grid itself for n and the measured fill ratio for r.
inline void parse_instance_name(const std::string& stem, const PlsInstance& instance, int& n,
                                int& r_percent, std::string& id) {
    n = instance.order();
    r_percent = static_cast<int>(std::lround(100.0 * instance.fill_ratio()));
    id = stem;
    if (stem.rfind("QC-", 0) == 0) {
        std::istringstream in(stem.substr(3));
        int pn = 0, pr = 0;
        char dash1 = 0, dash2 = 0;
        std::string pid;
        if (in >> pn >> dash1 >> pr >> dash2 && dash1 == '-' && dash2 == '-' && std::getline(in, pid) &&
            !pid.empty() && pn == instance.order()) {
            r_percent = pr;
            id = pid;
        }
    }
}

inline void compute_aggregates(BenchReport& report) {
    // Class key: (n, r, config); f_best is per-instance best across repeats.
    std::map<std::tuple<int, int, std::string, std::string, std::string, int>,
             std::map<std::string, std::vector<const BenchRow*>>>
        classes;
    for (const BenchRow& row : report.rows)
        classes[{row.n, row.r_percent, row.crossover, row.matching, row.variant, row.p}][row.instance]
            .push_back(&row);

    report.aggregates.clear();
    for (const auto& [key, instances] : classes) {
        BenchAggregate agg;
        std::tie(agg.n, agg.r_percent, agg.crossover, agg.matching, agg.variant, agg.p) = key;
        agg.instances = static_cast<int>(instances.size());
        double best_sum = 0, score_sum = 0, time_sum = 0;
        int optimal = 0, runs = 0;
        for (const auto& [name, rows] : instances) {
            int best = 0;
            for (const BenchRow* row : rows) {
                best = std::max(best, row->score);
                score_sum += row->score;
                time_sum += row->elapsed_seconds;
                optimal += row->proven_optimal;
                ++runs;
            }
            best_sum += best;
        }
        agg.runs = runs;
        agg.f_best_mean = best_sum / agg.instances;
        agg.f_avg_mean = score_sum / runs;
        agg.optimal_rate = static_cast<double>(optimal) / runs;
        agg.time_mean = time_sum / runs;
        report.aggregates.push_back(agg);
    }
}

inline void write_rows_csv(const BenchReport& report, std::ostream& out) {
    out << "instance,n,r,id,repeat,seed,p,crossover,matching,variant,score,f,upper_bound,"
           "proven_optimal,generations,iterations,elapsed_seconds\n";
    for (const BenchRow& r : report.rows) {
        out << r.instance << ',' << r.n << ',' << r.r_percent << ',' << r.id << ',' << r.repeat
            << ',' << r.seed << ',' << r.p << ',' << r.crossover << ',' << r.matching << ','
            << r.variant << ',' << r.score << ',' << r.f << ',' << r.upper_bound << ','
            << (r.proven_optimal ? 1 : 0) << ',' << r.generations << ',' << r.iterations << ','
            << r.elapsed_seconds << '\n';
    }
}

inline void write_aggregates_csv(const BenchReport& report, std::ostream& out) {
    out << "n,r,crossover,matching,variant,p,instances,runs,f_best_mean,f_avg_mean,optimal_rate,"
           "time_mean\n";
    for (const BenchAggregate& a : report.aggregates) {
        out << a.n << ',' << a.r_percent << ',' << a.crossover << ',' << a.matching << ','
            << a.variant << ',' << a.p << ',' << a.instances << ',' << a.runs << ','
            << a.f_best_mean << ',' << a.f_avg_mean << ',' << a.optimal_rate << ',' << a.time_mean
            << '\n';
    }
}

inline nlohmann::ordered_json report_to_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const BenchRow& r : report.rows) {
        nlohmann::ordered_json row;
        row["instance"] = r.instance;
        row["n"] = r.n;
        row["r"] = r.r_percent;
        row["id"] = r.id;
        row["repeat"] = r.repeat;
        row["seed"] = r.seed;
        row["p"] = r.p;
        row["crossover"] = r.crossover;
        row["matching"] = r.matching;
        row["variant"] = r.variant;
        row["score"] = r.score;
        row["f"] = r.f;
        row["upper_bound"] = r.upper_bound;
        row["proven_optimal"] = r.proven_optimal;
        row["generations"] = r.generations;
        row["iterations"] = r.iterations;
        row["elapsed_seconds"] = r.elapsed_seconds;
        j["rows"].push_back(row);
    }
    j["aggregates"] = nlohmann::ordered_json::array();
    for (const BenchAggregate& a : report.aggregates) {
        nlohmann::ordered_json agg;
        agg["n"] = a.n;
        agg["r"] = a.r_percent;
        agg["crossover"] = a.crossover;
        agg["matching"] = a.matching;
        agg["variant"] = a.variant;
        agg["p"] = a.p;
        agg["instances"] = a.instances;
        agg["runs"] = a.runs;
        agg["f_best_mean"] = a.f_best_mean;
        agg["f_avg_mean"] = a.f_avg_mean;
        agg["optimal_rate"] = a.optimal_rate;
        agg["time_mean"] = a.time_mean;
        j["aggregates"].push_back(agg);
    }
    return j;
}

struct BenchTask {
    std::string path;
    std::string stem;
    int instance_index = 0;
};

// Solve every instance `repeats` times for every configuration in the sweep.
// Seeds derive from (master_seed, instance index, repeat, sweep index) so a
// report is reproducible regardless of --jobs.
inline BenchReport run_bench(const std::vector<BenchTask>& tasks,
                             const std::vector<SolverConfig>& sweep, int repeats,
                             std::uint64_t master_seed, int jobs = 1,
                             std::ostream* progress = nullptr) {
    if (tasks.empty()) throw std::invalid_argument("empty benchmark suite");
    if (sweep.empty()) throw std::invalid_argument("empty configuration sweep");

    struct RunSpec {
        const BenchTask* task;
        int sweep_index;
        int repeat;
    };
    std::vector<RunSpec> specs;
    for (const BenchTask& task : tasks)
        for (int s = 0; s < static_cast<int>(sweep.size()); ++s)
            for (int rep = 0; rep < repeats; ++rep) specs.push_back({&task, s, rep});

    BenchReport report;
    report.rows.resize(specs.size());
    std::mutex progress_mutex;
    parallel_for(0, static_cast<std::int64_t>(specs.size()), jobs, [&](std::int64_t k) {
        const RunSpec& spec = specs[static_cast<std::size_t>(k)];
        const PlsInstance instance = load_instance(spec.task->path);

        SolverConfig config = sweep[static_cast<std::size_t>(spec.sweep_index)];
        config.master_seed = derive_seed(
            master_seed, stream_tag::kBench,
            (static_cast<std::uint64_t>(spec.task->instance_index) * sweep.size() + spec.sweep_index) *
                    static_cast<std::uint64_t>(repeats) +
                static_cast<std::uint64_t>(spec.repeat));

        const RunResult result = run(instance, config);

        BenchRow row;
        row.instance = spec.task->stem;
        parse_instance_name(spec.task->stem, instance, row.n, row.r_percent, row.id);
        row.repeat = spec.repeat;
        row.seed = config.master_seed;
        row.p = config.p;
        row.crossover = crossover_name(config.crossover.mode);
        row.matching = matching_name(config.crossover.matching);
        row.variant = variant_name(config.variant);
        row.score = result.best_score;
        row.f = result.best_f;
        row.upper_bound = result.upper_bound;
        row.proven_optimal = result.proven_optimal;
        row.generations = result.generations;
        row.iterations = result.total_iterations;
        row.elapsed_seconds = result.elapsed_seconds;
        report.rows[static_cast<std::size_t>(k)] = row;

        if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            (*progress) << row.instance << " repeat " << row.repeat << " score " << row.score << '/'
                        << row.upper_bound << (row.proven_optimal ? " optimal" : "") << '\n';
        }
    });
    compute_aggregates(report);
    return report;
}

}  // namespace plse

#endif  // PLSE_BENCH_HPP
