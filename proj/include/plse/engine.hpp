#ifndef PLSE_ENGINE_HPP
#define PLSE_ENGINE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "plse/crossover.hpp"
#include "plse/oracle.hpp"
#include "plse/parallel.hpp"
#include "plse/plits.hpp"
#include "plse/population.hpp"

namespace plse {

enum class Variant { MPMA, PartialMPMA };

struct RunLimits {
    double time_seconds = 0;          // 0 = unlimited
    std::int64_t total_iterations = 0;  // 0 = unlimited
    std::int64_t generations = 0;       // 0 = unlimited
};

struct SolverConfig {
    int p = 12288;
    double alpha = 0.6;
    std::int64_t phase1_iters = 0;  // 0 -> 100 * |V|
    std::int64_t phase2_iters = 0;  // 0 -> 2 * |V|
    double gamma = 10.0;
    Variant variant = Variant::MPMA;
    CrossoverConfig crossover;
    RunLimits limits;
    std::uint64_t master_seed = 0;
    int workers = 1;

    void validate() const {
        if (p < 2) throw std::invalid_argument("population size must be at least 2");
        if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
        if (crossover.mode == CrossoverMode::AUX && !(crossover.beta > gamma))
            throw std::invalid_argument("beta must exceed gamma");
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
        if (phase1_iters < 0 || phase2_iters < 0) throw std::invalid_argument("phase budgets must be positive");
        if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    }
};

struct GenerationStats {
    std::int64_t generation = 0;
    int best_f = 0;           // best f ever seen (legal)
    double mean_f = 0;        // mean f of the updated population
    double mean_distance = 0; // mean pairwise Hamming distance
    std::int64_t iterations = 0;
    double elapsed_seconds = 0;
    int shortfall = 0;
};

struct RunResult {
    Coloring best_solution;
    int best_f = 0;
    int best_score = 0;
    bool proven_optimal = false;
    std::int64_t generations = 0;
    std::int64_t total_iterations = 0;
    double elapsed_seconds = 0;
    std::string stop_reason;
    int l = 0;
    int upper_bound = 0;
    int vertex_count = 0;
};

// Optimality test: a legal coloring is optimal when every cell that can be
// filled is filled, i.e. f = 0 with l != 1, or f = 1 with l = 1 (the n^2 - 2
// bound is then tight).
inline bool is_optimal(const Coloring& solution, int l) {
    if (!solution.legal()) return false;
    return (solution.f() == 0 && l != 1) || (solution.f() == 1 && l == 1);
}

inline bool is_optimal_f(int f, int c, int l) {
    if (c != 0) return false;
    return (f == 0 && l != 1) || (f == 1 && l == 1);
}

// p colorings, every vertex drawing a uniform random non-zero color from its
// domain: a fully colored, most likely conflicting start for phase 1.
inline Population initialize_population(const ReducedGraph& reduced, const SolverConfig& config) {
    Population population;
    population.spacing_gamma = config.gamma;
    population.members.assign(static_cast<std::size_t>(config.p), Coloring(reduced));
    const int nv = reduced.vertex_count();
    parallel_for(0, config.p, config.workers, [&](std::int64_t i) {
        Rng rng = derive_stream(config.master_seed, stream_tag::kInitPopulation,
                                static_cast<std::uint64_t>(i));
        std::vector<Color> colors(static_cast<std::size_t>(nv));
        for (VertexId v = 0; v < nv; ++v) {
            const Color* begin = reduced.domain_begin(v) + 1;  // skip color 0
            const auto choices = static_cast<std::uint32_t>(reduced.domain_end(v) - begin);
            colors[static_cast<std::size_t>(v)] = begin[rng.next_index(choices)];
        }
        population.members[static_cast<std::size_t>(i)].assign(std::move(colors));
    });
    population.compute_full_distances(config.workers);
    return population;
}

using GenerationCallback = std::function<void(const GenerationStats&)>;

// Generational loop: parallel improvement of the offspring, best tracking,
// parallel distance blocks, sequential population update, parallel offspring
// construction. Stops on proven optimality or the first limit hit (time,
// then iterations, then generations, checked in that order each generation).
inline RunResult run(const PlsInstance& instance, const SolverConfig& config,
                     const GenerationCallback& on_generation = {}) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const ReducedGraph reduced = preprocess(build_graph(instance));
    const InstanceBounds bounds = compute_bounds(reduced);
    const int n = instance.order();
    const int nv = reduced.vertex_count();

    RunResult result;
    result.l = reduced.l;
    result.upper_bound = bounds.upper_bound;
    result.vertex_count = nv;
    result.best_solution = Coloring(reduced);  // all-uncolored, legal
    result.best_f = nv;

    const int target_f = reduced.l == 1 ? 1 : 0;
    auto finalize = [&](const std::string& reason) {
        result.best_score = n * n - reduced.l - result.best_f;
        result.proven_optimal = is_optimal(result.best_solution, reduced.l);
        result.stop_reason = result.proven_optimal ? "optimal" : reason;
        result.elapsed_seconds = elapsed();
        return result;
    };

    if (nv == 0) {
        result.best_f = 0;
        return finalize("trivial");
    }

    std::optional<Deadline> deadline;
    if (config.limits.time_seconds > 0)
        deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(config.limits.time_seconds));

    Population population = initialize_population(reduced, config);
    for (const Coloring& member : population.members) {
        if (member.legal() && member.f() < result.best_f) {
            result.best_f = member.f();
            result.best_solution = member;
        }
    }
    if (is_optimal(result.best_solution, reduced.l)) return finalize("optimal");

    // Generation 0 offspring are the initial individuals themselves.
    std::vector<Coloring> offspring = population.members;
    MatchingExclusion exclusion;
    exclusion.reset(config.p);

    PlitsParams plits_params;
    plits_params.phase1_iters = config.phase1_iters;
    plits_params.phase2_iters = config.phase2_iters;
    plits_params.alpha = config.alpha;
    plits_params.stop_f = target_f;

    const std::int64_t partial_budget =
        config.phase1_iters > 0 ? config.phase1_iters : phase1_default(nv);

    std::vector<PlitsScratch> plits_scratch(static_cast<std::size_t>(config.workers));
    std::vector<PartialColScratch> partial_scratch(static_cast<std::size_t>(config.workers));
    std::vector<Coloring> improved(static_cast<std::size_t>(config.p));
    std::vector<std::int64_t> iteration_counts(static_cast<std::size_t>(config.p), 0);

    for (std::int64_t generation = 1;; ++generation) {
        // Parallel improvement. Static chunking maps each slot to one worker;
        // per-slot streams keep the outcome independent of that mapping.
        const std::int64_t chunk = (config.p + config.workers - 1) / config.workers;
        parallel_for(0, config.workers, config.workers, [&](std::int64_t w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(config.p, lo + chunk);
            for (std::int64_t i = lo; i < hi; ++i) {
                Rng rng = derive_stream(config.master_seed, stream_tag::kImprove,
                                        static_cast<std::uint64_t>(generation) * config.p +
                                            static_cast<std::uint64_t>(i));
                SearchStats stats;
                if (config.variant == Variant::MPMA) {
                    improved[static_cast<std::size_t>(i)] =
                        plits_run(plits_scratch[static_cast<std::size_t>(w)],
                                  std::move(offspring[static_cast<std::size_t>(i)]), rng,
                                  plits_params, &stats, deadline);
                } else {
                    improved[static_cast<std::size_t>(i)] = partial_mpma_improve(
                        partial_scratch[static_cast<std::size_t>(w)],
                        std::move(offspring[static_cast<std::size_t>(i)]), rng, partial_budget,
                        &stats, config.alpha, target_f, deadline);
                }
                iteration_counts[static_cast<std::size_t>(i)] = stats.iterations;
            }
        });
        for (std::int64_t i = 0; i < config.p; ++i)
            result.total_iterations += iteration_counts[static_cast<std::size_t>(i)];
        result.generations = generation;

        // Best tracking over the improved individuals (all legal).
        for (const Coloring& candidate : improved) {
            if (candidate.f() < result.best_f) {
                result.best_f = candidate.f();
                result.best_solution = candidate;
            }
        }

        auto emit_stats = [&](int shortfall) {
            if (!on_generation) return;
            GenerationStats stats;
            stats.generation = generation;
            stats.best_f = result.best_f;
            double f_sum = 0;
            for (const Coloring& member : population.members) f_sum += member.f();
            stats.mean_f = f_sum / config.p;
            double d_sum = 0;
            for (int i = 0; i < config.p; ++i)
                for (int j = i + 1; j < config.p; ++j) d_sum += population.dist.at(i, j);
            stats.mean_distance = d_sum / (0.5 * config.p * (config.p - 1));
            stats.iterations = result.total_iterations;
            stats.elapsed_seconds = elapsed();
            stats.shortfall = shortfall;
            on_generation(stats);
        };

        const bool optimal = is_optimal_f(result.best_f, 0, reduced.l);
        const bool time_up = deadline && deadline_passed(deadline);
        const bool iters_up = config.limits.total_iterations > 0 &&
                              result.total_iterations >= config.limits.total_iterations;
        const bool gens_up =
            config.limits.generations > 0 && generation >= config.limits.generations;
        if (optimal || time_up || iters_up || gens_up) {
            emit_stats(0);
            return finalize(optimal      ? "optimal"
                            : time_up    ? "time_limit"
                            : iters_up   ? "iteration_limit"
                                         : "generation_limit");
        }

        const DistanceBlocks blocks =
            compute_cross_distances(population.members, improved, config.workers);
        const UpdateInfo update = update_population(population, std::move(improved), blocks);
        improved.assign(static_cast<std::size_t>(config.p), Coloring());

        if (config.crossover.exclusion == ExclusionScope::Generation) exclusion.reset(config.p);
        offspring = build_offspring(population, config.crossover, exclusion, config.master_seed,
                                    static_cast<std::uint64_t>(generation), config.workers);

        emit_stats(static_cast<int>(update.shortfall_slots.size()));
    }
}

}  // namespace plse

#endif  // PLSE_ENGINE_HPP
