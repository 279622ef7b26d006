#ifndef PLSE_CROSSOVER_HPP
#define PLSE_CROSSOVER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plse/population.hpp"
#include "plse/rng.hpp"

namespace plse {

enum class CrossoverMode { AUX, UX, None };
enum class MatchingStrategy { NearestNeighbor, Random };
enum class ExclusionScope { Run, Generation, Off };

struct CrossoverConfig {
    CrossoverMode mode = CrossoverMode::AUX;
    double beta = 20.0;  // AUX diversity divisor; must exceed the spacing gamma
    MatchingStrategy matching = MatchingStrategy::NearestNeighbor;
    ExclusionScope exclusion = ExclusionScope::Run;
};

// p_ij = 1 - |V| / (beta * D(S_i, S_j)): the probability that a vertex keeps
// the first parent's color. Spacing plus beta > gamma keeps it in (0,1).
inline double mixing_probability(std::int32_t dist, int vertex_count, double beta) {
    if (static_cast<double>(dist) * beta <= static_cast<double>(vertex_count))
        throw std::invalid_argument("parents closer than |V|/beta: spacing invariant breached");
    return 1.0 - static_cast<double>(vertex_count) / (beta * static_cast<double>(dist));
}

// Asymmetric uniform crossover: each vertex takes the first parent's color
// with probability p_ij, otherwise the second parent's.
inline Coloring aux_crossover(const Coloring& first, const Coloring& second, double p_ij, Rng& rng) {
    if (!first.same_graph(second)) throw std::invalid_argument("parents on different graphs");
    if (!(p_ij > 0.0 && p_ij < 1.0)) throw std::invalid_argument("mixing probability out of (0,1)");
    std::vector<Color> child(first.colors());
    const Color* other = second.data();
    const int nv = first.size();
    for (int v = 0; v < nv; ++v) {
        if (!rng.next_bernoulli(p_ij)) child[static_cast<std::size_t>(v)] = other[v];
    }
    Coloring offspring(first.graph());
    offspring.assign(std::move(child));
    return offspring;
}

// One offspring per member: member i is the first parent, the second parent
// comes from the matching strategy. Offspring may be conflicting; the next
// generation's local search (or the partial variant's repair) handles that.
// Pairs whose distance fails the AUX precondition (possible only after a
// shortfall insertion broke the spacing invariant) fall back to copying the
// first parent.
inline std::vector<Coloring> build_offspring(const Population& population,
                                             const CrossoverConfig& config,
                                             MatchingExclusion& exclusion, std::uint64_t master_seed,
                                             std::uint64_t generation, int workers = 1) {
    const int p = population.size();
    const int nv = population.vertex_count();
    std::vector<Coloring> offspring(static_cast<std::size_t>(p));

    if (config.mode == CrossoverMode::None) {
        for (int i = 0; i < p; ++i) offspring[static_cast<std::size_t>(i)] = population.members[static_cast<std::size_t>(i)];
        return offspring;
    }

    // Partner selection is sequential: it reads and mutates the exclusion
    // bookkeeping. The crossovers themselves run in parallel on a snapshot.
    std::vector<int> partner(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        int j;
        if (config.matching == MatchingStrategy::Random) {
            Rng match = derive_stream(master_seed, stream_tag::kMatch,
                                      generation * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(i));
            j = static_cast<int>(match.next_below(static_cast<std::uint64_t>(p - 1)));
            if (j >= i) ++j;
        } else {
            j = nearest_neighbor(population, i,
                                 config.exclusion == ExclusionScope::Off ? nullptr : &exclusion);
        }
        if (config.exclusion != ExclusionScope::Off) exclusion.record(i, j);
        partner[static_cast<std::size_t>(i)] = j;
    }

    parallel_for(0, p, workers, [&](std::int64_t idx) {
        const auto i = static_cast<int>(idx);
        Rng stream = derive_stream(master_seed, stream_tag::kCrossover,
                                   generation * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(i));
        const Coloring& first = population.members[static_cast<std::size_t>(i)];
        const Coloring& second = population.members[static_cast<std::size_t>(partner[static_cast<std::size_t>(i)])];

        double p_ij = 0.5;
        if (config.mode == CrossoverMode::AUX) {
            const std::int32_t d = population.dist.at(i, partner[static_cast<std::size_t>(i)]);
            if (static_cast<double>(d) * config.beta <= static_cast<double>(nv)) {
                offspring[static_cast<std::size_t>(i)] = first;  // degraded spacing; keep the parent
                return;
            }
            p_ij = mixing_probability(d, nv, config.beta);
        }
        offspring[static_cast<std::size_t>(i)] = aux_crossover(first, second, p_ij, stream);
    });
    return offspring;
}

}  // namespace plse

#endif  // PLSE_CROSSOVER_HPP
