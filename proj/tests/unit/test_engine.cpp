#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "plse/engine.hpp"
#include "plse/oracle.hpp"
#include "support/builders.hpp"
#include "support/naive.hpp"

using namespace plse;

namespace {

SolverConfig small_config(std::uint64_t seed, int p = 16) {
    SolverConfig config;
    config.p = p;
    config.master_seed = seed;
    config.limits.generations = 50;
    config.workers = 1;
    return config;
}

}  // namespace

TEST_CASE("is_optimal matches the two optimality conditions") {
    const ReducedGraph g = preprocess(build_graph(PlsInstance(2)));
    Coloring legal_full(g);
    legal_full.assign({1, 2, 2, 1});
    REQUIRE(is_optimal(legal_full, 0));      // c=0, f=0, l != 1
    REQUIRE_FALSE(is_optimal(legal_full, 1));  // f=0 with l=1 misses condition 2

    Coloring one_left(g);
    one_left.assign({1, 2, 2, 0});
    REQUIRE(is_optimal(one_left, 1));        // c=0, f=1, l=1
    REQUIRE_FALSE(is_optimal(one_left, 0));  // f=1 with l=0

    Coloring conflicted(g);
    conflicted.assign({1, 1, 2, 0});
    REQUIRE_FALSE(is_optimal(conflicted, 0));

    REQUIRE(is_optimal_f(0, 0, 0));
    REQUIRE(is_optimal_f(1, 0, 1));
    REQUIRE_FALSE(is_optimal_f(1, 0, 0));
    REQUIRE_FALSE(is_optimal_f(0, 1, 0));
}

TEST_CASE("initialization is deterministic, in-domain, and uniform over D(v) minus 0") {
    const PlsInstance inst = generate_instance(5, 0.4, 1);
    const ReducedGraph g = preprocess(build_graph(inst));
    SolverConfig config = small_config(7, 8);

    const Population a = initialize_population(g, config);
    const Population b = initialize_population(g, config);
    REQUIRE(a.size() == 8);
    for (int i = 0; i < 8; ++i) {
        REQUIRE(a.members[static_cast<std::size_t>(i)].colors() ==
                b.members[static_cast<std::size_t>(i)].colors());
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const Color k = a.members[static_cast<std::size_t>(i)].color(v);
            REQUIRE(k != 0);
            REQUIRE(g.in_domain(v, k));
        }
    }
    REQUIRE(a.dist.at(2, 5) == naive::hamming(a.members[2], a.members[5]));

    // Chi-square uniformity over D(v)\{0} for one vertex across many seeds.
    const VertexId v = 0;
    const int choices = g.domain_size(v) - 1;
    std::map<Color, int> counts;
    const int samples = 10'000;
    SolverConfig probe = small_config(0, 1);
    for (int s = 0; s < samples / 1; ++s) {
        probe.master_seed = static_cast<std::uint64_t>(s);
        Rng rng = derive_stream(probe.master_seed, stream_tag::kInitPopulation, 0);
        const Color* begin = g.domain_begin(v) + 1;
        counts[begin[rng.next_index(static_cast<std::uint32_t>(choices))]]++;
    }
    const double expected = static_cast<double>(samples) / choices;
    double chi_square = 0;
    for (const auto& [color, count] : counts)
        chi_square += (count - expected) * (count - expected) / expected;
    // 99.9th percentile of chi-square with (choices-1) dof is far below 30
    // for the small domains here.
    REQUIRE(static_cast<int>(counts.size()) == choices);
    REQUIRE(chi_square < 30.0);
}

TEST_CASE("an instance whose reduction empties the graph returns immediately") {
    // A complete Latin square: nothing to search.
    const PlsInstance full = builders::complete_latin_square(5, 3);
    SolverConfig config = small_config(1);
    const RunResult result = run(full, config);
    REQUIRE(result.vertex_count == 0);
    REQUIRE(result.best_score == 25);
    REQUIRE(result.proven_optimal);
    REQUIRE(result.generations == 0);
    REQUIRE(result.stop_reason == "optimal");
}

TEST_CASE("easy completable instances solve to n^2 quickly") {
    const PlsInstance inst = builders::lsc_instance(10, 0.4, 11);
    SolverConfig config = small_config(5, 32);
    const RunResult result = run(inst, config);
    REQUIRE(result.best_score == 100);
    REQUIRE(result.proven_optimal);
    REQUIRE(result.best_solution.legal());
    const ReducedGraph g = preprocess(build_graph(inst));
    const PlsInstance grid = to_grid(inst, g, result.best_solution);
    REQUIRE(satisfies_latin_condition(grid));
    REQUIRE(grid.filled_count() == 100);
}

TEST_CASE("the worked example solves to score 7 with proven optimality") {
    const RunResult result = run(builders::fig_instance(), small_config(2, 8));
    REQUIRE(result.l == 1);
    REQUIRE(result.upper_bound == 7);
    REQUIRE(result.best_score == 7);
    REQUIRE(result.proven_optimal);
}

TEST_CASE("identical configuration and seed reproduce the run exactly") {
    const PlsInstance inst = generate_instance(8, 0.6, 77);
    SolverConfig config = small_config(123, 8);
    config.limits.generations = 5;

    const RunResult a = run(inst, config);
    const RunResult b = run(inst, config);
    REQUIRE(a.best_score == b.best_score);
    REQUIRE(a.generations == b.generations);
    REQUIRE(a.total_iterations == b.total_iterations);
    REQUIRE(a.best_solution.colors() == b.best_solution.colors());
    REQUIRE(a.stop_reason == b.stop_reason);

    // Scheduling independence: a different worker count changes nothing.
    SolverConfig threaded = config;
    threaded.workers = 3;
    const RunResult c = run(inst, threaded);
    REQUIRE(a.best_score == c.best_score);
    REQUIRE(a.total_iterations == c.total_iterations);
    REQUIRE(a.best_solution.colors() == c.best_solution.colors());
}

TEST_CASE("generation and iteration limits stop the run and say so") {
    const PlsInstance inst = generate_instance(8, 0.7, 13);
    SolverConfig config = small_config(9, 8);
    config.limits.generations = 3;
    const RunResult by_gens = run(inst, config);
    if (!by_gens.proven_optimal) {
        REQUIRE(by_gens.stop_reason == "generation_limit");
        REQUIRE(by_gens.generations == 3);
    }

    SolverConfig by_iters_config = small_config(9, 8);
    by_iters_config.limits.generations = 0;
    by_iters_config.limits.total_iterations = 1000;
    const RunResult by_iters = run(inst, by_iters_config);
    if (!by_iters.proven_optimal) {
        REQUIRE(by_iters.stop_reason == "iteration_limit");
        REQUIRE(by_iters.total_iterations >= 1000);
    }
}

TEST_CASE("the per-generation log reports population statistics") {
    const PlsInstance inst = generate_instance(8, 0.7, 21);
    SolverConfig config = small_config(4, 8);
    config.limits.generations = 4;
    std::vector<GenerationStats> log;
    run(inst, config, [&](const GenerationStats& stats) { log.push_back(stats); });
    REQUIRE_FALSE(log.empty());
    for (std::size_t i = 0; i < log.size(); ++i) {
        REQUIRE(log[i].generation == static_cast<std::int64_t>(i + 1));
        REQUIRE(log[i].mean_f >= 0.0);
        REQUIRE(log[i].mean_distance >= 0.0);
    }
    // Best f never worsens across generations.
    for (std::size_t i = 1; i < log.size(); ++i) REQUIRE(log[i].best_f <= log[i - 1].best_f);
}

TEST_CASE("the partial variant matches the standard variant on small optima") {
    Rng rng(606);
    for (int trial = 0; trial < 4; ++trial) {
        const PlsInstance inst = generate_instance(6, 0.55 + 0.1 * rng.next_double(), rng.next_u64());
        const ReducedGraph g = preprocess(build_graph(inst));
        const OracleResult oracle = solve_exact(g);
        REQUIRE(oracle.exact);
        const int optimum_score = 36 - g.l - oracle.optimum_f;

        SolverConfig mpma = small_config(rng.next_u64(), 24);
        const RunResult standard = run(inst, mpma);
        REQUIRE(standard.best_score == optimum_score);

        SolverConfig partial = small_config(rng.next_u64(), 24);
        partial.variant = Variant::PartialMPMA;
        const RunResult variant = run(inst, partial);
        REQUIRE(variant.best_score == optimum_score);
        REQUIRE(variant.best_solution.legal());
    }
}

TEST_CASE("config validation rejects inconsistent parameters") {
    SolverConfig config;
    config.p = 1;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    config = SolverConfig{};
    config.gamma = 25.0;  // violates beta > gamma with beta = 20
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    config = SolverConfig{};
    config.workers = 0;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    config = SolverConfig{};
    config.crossover.mode = CrossoverMode::UX;
    config.crossover.beta = 5.0;  // beta unconstrained when AUX is off
    config.gamma = 10.0;
    REQUIRE_NOTHROW(config.validate());
}
