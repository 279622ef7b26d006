#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "plse/bench.hpp"
#include "plse/verify.hpp"
#include "support/builders.hpp"

using namespace plse;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("plse_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

}  // namespace

TEST_CASE("certificate verification accepts valid grids and names violations") {
    const PlsInstance inst = builders::fig_instance();
    PlsInstance cert = parse_instance("3\n1 3 2\n2 0 1\n0 2 3\n");
    const VerifyReport good = verify_certificate(inst, cert);
    REQUIRE(good.legal);
    REQUIRE(good.score == 7);

    SECTION("altering a pre-filled cell is diagnosed with the cell") {
        cert.set(0, 0, 2);
        const VerifyReport bad = verify_certificate(inst, cert);
        REQUIRE_FALSE(bad.legal);
        bool found = false;
        for (const auto& problem : bad.problems)
            found = found || problem.find("(0,0)") != std::string::npos;
        REQUIRE(found);
    }

    SECTION("row and column duplicates are diagnosed") {
        cert.set(1, 1, 2);
        const VerifyReport bad = verify_certificate(inst, cert);
        REQUIRE_FALSE(bad.legal);
        bool row_problem = false;
        for (const auto& problem : bad.problems)
            row_problem = row_problem || problem.find("row 1") != std::string::npos;
        REQUIRE(row_problem);
    }

    SECTION("order mismatch is rejected") {
        const VerifyReport bad = verify_certificate(inst, PlsInstance(4));
        REQUIRE_FALSE(bad.legal);
    }
}

TEST_CASE("bench rows carry config and instance metadata; aggregates are exact means") {
    TempDir dir;
    for (int id = 1; id <= 3; ++id) {
        const PlsInstance inst = builders::lsc_instance(6, 0.4, static_cast<std::uint64_t>(id));
        save_instance(inst, (dir.path / ("QC-6-40-" + std::to_string(id) + ".txt")).string());
    }

    std::vector<BenchTask> tasks;
    for (const auto& entry : fs::directory_iterator(dir.path))
        tasks.push_back({entry.path().string(), entry.path().stem().string(),
                         static_cast<int>(tasks.size())});
    std::sort(tasks.begin(), tasks.end(),
              [](const BenchTask& a, const BenchTask& b) { return a.stem < b.stem; });

    SolverConfig config;
    config.p = 16;
    config.limits.generations = 30;
    config.workers = 1;

    const BenchReport report = run_bench(tasks, {config}, 5, 99);
    REQUIRE(report.rows.size() == 15);

    // Aggregate f_best is the mean of per-instance maxima; here every run of
    // these easy instances should reach 36, so both aggregates equal 36.
    REQUIRE(report.aggregates.size() == 1);
    const BenchAggregate& agg = report.aggregates.front();
    REQUIRE(agg.n == 6);
    REQUIRE(agg.r_percent == 40);
    REQUIRE(agg.instances == 3);
    REQUIRE(agg.runs == 15);

    // Recompute the aggregates independently from the rows.
    std::map<std::string, int> best_per_instance;
    double score_sum = 0;
    for (const BenchRow& row : report.rows) {
        best_per_instance[row.instance] = std::max(best_per_instance[row.instance], row.score);
        score_sum += row.score;
    }
    double best_sum = 0;
    for (const auto& [name, best] : best_per_instance) best_sum += best;
    REQUIRE(agg.f_best_mean == Catch::Approx(best_sum / 3.0));
    REQUIRE(agg.f_avg_mean == Catch::Approx(score_sum / 15.0));

    // Determinism: the same master seed replays the same rows.
    const BenchReport again = run_bench(tasks, {config}, 5, 99);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        REQUIRE(report.rows[i].score == again.rows[i].score);
        REQUIRE(report.rows[i].seed == again.rows[i].seed);
        REQUIRE(report.rows[i].iterations == again.rows[i].iterations);
    }

    // CSV schema: header plus one line per row, re-parseable.
    std::ostringstream csv;
    write_rows_csv(report, csv);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    REQUIRE(line ==
            "instance,n,r,id,repeat,seed,p,crossover,matching,variant,score,f,upper_bound,"
            "proven_optimal,generations,iterations,elapsed_seconds");
    int lines = 0;
    double csv_score_sum = 0;
    while (std::getline(in, line)) {
        ++lines;
        std::istringstream fields(line);
        std::string field;
        for (int skip = 0; skip < 10; ++skip) std::getline(fields, field, ',');
        std::getline(fields, field, ',');
        csv_score_sum += std::stod(field);
    }
    REQUIRE(lines == 15);
    REQUIRE(csv_score_sum == Catch::Approx(score_sum));

    const auto json = report_to_json(report);
    REQUIRE(json["rows"].size() == 15);
    REQUIRE(json["aggregates"].size() == 1);
}

TEST_CASE("bench parses QC names and falls back to measured ratios") {
    const PlsInstance named = builders::lsc_instance(6, 0.5, 4);
    int n = 0, r = 0;
    std::string id;
    parse_instance_name("QC-6-50-17", named, n, r, id);
    REQUIRE(n == 6);
    REQUIRE(r == 50);
    REQUIRE(id == "17");

    parse_instance_name("custom_instance", named, n, r, id);
    REQUIRE(n == 6);
    REQUIRE(r == 50);  // 18/36
    REQUIRE(id == "custom_instance");
}

TEST_CASE("bench rejects an empty suite") {
    SolverConfig config;
    config.p = 4;
    REQUIRE_THROWS_AS(run_bench({}, {config}, 1, 1), std::invalid_argument);
}
