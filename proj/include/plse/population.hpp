#ifndef PLSE_POPULATION_HPP
#define PLSE_POPULATION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <tuple>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "plse/coloring.hpp"
#include "plse/parallel.hpp"

namespace plse {

struct DistanceMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> data;

    void resize(int r, int c) {
        rows = r;
        cols = c;
        data.assign(static_cast<std::size_t>(r) * c, 0);
    }

    std::int32_t at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
    std::int32_t& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
};

// The two distance blocks of one generation: current-vs-improved (p x p) and
// improved-vs-improved (symmetric, diagonal 0).
struct DistanceBlocks {
    DistanceMatrix cross;
    DistanceMatrix fresh;
};

inline DistanceBlocks compute_cross_distances(const std::vector<Coloring>& members,
                                              const std::vector<Coloring>& improved,
                                              int workers = 1) {
    const int p = static_cast<int>(members.size());
    if (improved.size() != members.size()) throw std::invalid_argument("population size mismatch");
    DistanceBlocks blocks;
    blocks.cross.resize(p, p);
    blocks.fresh.resize(p, p);
    parallel_for(0, p, workers, [&](std::int64_t i) {
        const auto idx = static_cast<int>(i);
        for (int j = 0; j < p; ++j)
            blocks.cross.at(idx, j) = hamming_distance(members[static_cast<std::size_t>(idx)],
                                                       improved[static_cast<std::size_t>(j)]);
        for (int j = idx + 1; j < p; ++j)
            blocks.fresh.at(idx, j) = hamming_distance(improved[static_cast<std::size_t>(idx)],
                                                       improved[static_cast<std::size_t>(j)]);
    });
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < i; ++j) blocks.fresh.at(i, j) = blocks.fresh.at(j, i);
    return blocks;
}

// p legal colorings plus the symmetric pairwise Hamming-distance matrix.
struct Population {
    std::vector<Coloring> members;
    DistanceMatrix dist;
    double spacing_gamma = 10.0;

    int size() const { return static_cast<int>(members.size()); }

    int vertex_count() const { return members.empty() ? 0 : members.front().size(); }

    // Minimum spacing |V|/gamma; admission requires strictly more.
    double spacing_threshold() const { return vertex_count() / spacing_gamma; }

    void compute_full_distances(int workers = 1) {
        const int p = size();
        dist.resize(p, p);
        parallel_for(0, p, workers, [&](std::int64_t i) {
            const auto idx = static_cast<int>(i);
            for (int j = idx + 1; j < p; ++j)
                dist.at(idx, j) = hamming_distance(members[static_cast<std::size_t>(idx)],
                                                   members[static_cast<std::size_t>(j)]);
        });
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < i; ++j) dist.at(i, j) = dist.at(j, i);
    }
};

struct UpdateInfo {
    int pool_best_f = 0;
    // Slots filled by the shortfall rule, ignoring spacing (pool exhausted
    // before p members satisfied the distance requirement).
    std::vector<int> shortfall_slots;
};

// Greedy merge of the current population and the improved offspring: the best
// legal solution of the 2p pool enters first unconditionally, then the best
// remaining candidate enters iff its minimum distance to the members already
// admitted strictly exceeds |V|/gamma. The new distance matrix is gathered
// from the precomputed blocks; nothing is recomputed. Remaining slots, if the
// pool runs out, are filled by the best skipped candidates in order.
inline UpdateInfo update_population(Population& population, std::vector<Coloring> improved,
                                    const DistanceBlocks& blocks) {
    const int p = population.size();
    if (static_cast<int>(improved.size()) != p) throw std::invalid_argument("offspring count mismatch");
    const double threshold = population.spacing_threshold();

    // Pool ids: 0..p-1 current members, p..2p-1 improved. Ordered by f with
    // ties to the lowest pool id; conflicting solutions (possible only in the
    // generation-1 pool, whose current members are the random initial
    // colorings) rank behind every legal one.
    const int pool_size = 2 * p;
    std::vector<int> order(static_cast<std::size_t>(pool_size));
    std::iota(order.begin(), order.end(), 0);
    auto pool_at = [&](int id) -> const Coloring& {
        return id < p ? population.members[static_cast<std::size_t>(id)]
                      : improved[static_cast<std::size_t>(id - p)];
    };
    auto pool_f = [&](int id) { return pool_at(id).f(); };
    auto pool_key = [&](int id) {
        return std::tuple(pool_at(id).legal() ? 0 : 1, pool_at(id).f(), id);
    };
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pool_key(a) < pool_key(b); });

    auto pool_dist = [&](int a, int b) -> std::int32_t {
        if (a == b) return 0;
        if (a < p && b < p) return population.dist.at(a, b);
        if (a >= p && b >= p) return blocks.fresh.at(a - p, b - p);
        return a < p ? blocks.cross.at(a, b - p) : blocks.cross.at(b, a - p);
    };

    UpdateInfo info;
    info.pool_best_f = pool_f(order.front());

    // Conflicting candidates never enter through the greedy loop; they sit at
    // the end of the skipped list and matter only if the pool holds fewer
    // than p legal colorings.
    std::vector<int> selected;
    selected.reserve(static_cast<std::size_t>(p));
    std::vector<int> skipped;
    selected.push_back(order.front());
    for (std::size_t k = 1; k < order.size() && static_cast<int>(selected.size()) < p; ++k) {
        const int candidate = order[k];
        if (!pool_at(candidate).legal()) {
            skipped.push_back(candidate);
            continue;
        }
        std::int32_t min_dist = std::numeric_limits<std::int32_t>::max();
        for (int s : selected) min_dist = std::min(min_dist, pool_dist(candidate, s));
        if (static_cast<double>(min_dist) > threshold)
            selected.push_back(candidate);
        else
            skipped.push_back(candidate);
    }
    for (std::size_t k = 0; k < skipped.size() && static_cast<int>(selected.size()) < p; ++k) {
        info.shortfall_slots.push_back(static_cast<int>(selected.size()));
        selected.push_back(skipped[k]);
    }

    DistanceMatrix next_dist;
    next_dist.resize(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const std::int32_t d = pool_dist(selected[static_cast<std::size_t>(i)],
                                             selected[static_cast<std::size_t>(j)]);
            next_dist.at(i, j) = d;
            next_dist.at(j, i) = d;
        }

    std::vector<Coloring> next_members;
    next_members.reserve(static_cast<std::size_t>(p));
    for (int id : selected) {
        if (id < p)
            next_members.push_back(std::move(population.members[static_cast<std::size_t>(id)]));
        else
            next_members.push_back(std::move(improved[static_cast<std::size_t>(id - p)]));
    }
    population.members = std::move(next_members);
    population.dist = std::move(next_dist);
    return info;
}

// Per-first-parent record of already-tested crossover pairs.
class MatchingExclusion {
public:
    void reset(int p) {
        tested_.assign(static_cast<std::size_t>(p), {});
    }

    bool contains(int i, int j) const {
        return tested_[static_cast<std::size_t>(i)].count(j) != 0;
    }

    void record(int i, int j) { tested_[static_cast<std::size_t>(i)].insert(j); }

    void clear_row(int i) { tested_[static_cast<std::size_t>(i)].clear(); }

    bool empty() const { return tested_.empty(); }

private:
    std::vector<std::unordered_set<int>> tested_;
};

// Closest other member by precomputed Hamming distance, skipping pairs already
// tested; ties go to the lowest index. When every partner is excluded, the
// exclusion row resets and the unrestricted nearest neighbor is returned.
inline int nearest_neighbor(const Population& population, int i,
                            MatchingExclusion* exclusion = nullptr) {
    const int p = population.size();
    if (p < 2) throw std::invalid_argument("population too small for matching");
    int best = -1;
    int best_unrestricted = -1;
    for (int j = 0; j < p; ++j) {
        if (j == i) continue;
        const std::int32_t d = population.dist.at(i, j);
        if (best_unrestricted < 0 || d < population.dist.at(i, best_unrestricted))
            best_unrestricted = j;
        if (exclusion && exclusion->contains(i, j)) continue;
        if (best < 0 || d < population.dist.at(i, best)) best = j;
    }
    if (best < 0) {
        exclusion->clear_row(i);
        return best_unrestricted;
    }
    return best;
}

}  // namespace plse

#endif  // PLSE_POPULATION_HPP
