#ifndef PLSE_PARTIAL_HPP
#define PLSE_PARTIAL_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "plse/rng.hpp"
#include "plse/search_util.hpp"

namespace plse {

using Deadline = std::chrono::steady_clock::time_point;

inline bool deadline_passed(const std::optional<Deadline>& deadline) {
    return deadline && std::chrono::steady_clock::now() >= *deadline;
}

// Greedy conflict removal: repeatedly uncolor the vertex conflicting with the
// largest number of vertices (ties to the lowest index) until c = 0.
// The conflict table must match the coloring and is kept consistent.
inline void repair(Coloring& coloring, ConflictTable& table) {
    const ReducedGraph& g = coloring.graph();
    const int nv = g.vertex_count();
    while (coloring.c() > 0) {
        VertexId worst = -1;
        std::int32_t worst_count = 0;
        for (VertexId v = 0; v < nv; ++v) {
            const Color k = coloring.color(v);
            if (k == 0) continue;
            const std::int32_t conflicts = table.count(v, k);
            if (conflicts > worst_count) {
                worst_count = conflicts;
                worst = v;
            }
        }
        apply_move(coloring, table, worst, 0);
    }
}

inline Coloring repair(Coloring coloring) {
    ConflictTable table;
    table.build(coloring);
    repair(coloring, table);
    return coloring;
}

struct PartialColScratch {
    ConflictTable gamma;
    TabuList tabu;
    IndexSet uncolored;
    int sized_for = -1;

    void prepare(const ReducedGraph& g) {
        if (sized_for != g.vertex_count()) {
            sized_for = g.vertex_count();
            tabu.reset(g.vertex_count(), g.order + 1);
            uncolored.reset(g.vertex_count());
        } else {
            tabu.skip_past(16 + static_cast<std::uint64_t>(g.vertex_count()));
            uncolored.clear();
        }
    }
};

struct SearchStats {
    std::int64_t iterations = 0;
};

// PartialCol-style tabu search over legal partial colorings: pick an uncolored
// vertex v and a color j, assign v <- j and uncolor every neighbor colored j
// (an i-swap). Each displaced vertex u gets (u, j) tabu for
// T = L + floor(alpha * |V0|) iterations, L uniform in [0,9].
class PartialColSearch {
public:
    PartialColSearch(PartialColScratch& scratch, Coloring& coloring, Rng& rng, double alpha = 0.6)
        : scratch_(scratch), coloring_(coloring), rng_(rng), alpha_(alpha), best_(coloring) {
        scratch_.prepare(coloring.graph());
        scratch_.gamma.build(coloring_);
        repair(coloring_, scratch_.gamma);
        const int nv = coloring_.size();
        for (VertexId v = 0; v < nv; ++v)
            if (coloring_.color(v) == 0) scratch_.uncolored.insert(v);
        best_ = coloring_;
    }

    const Coloring& best() const { return best_; }
    const Coloring& current() const { return coloring_; }

    // One tabu iteration. Returns false when f = 0 (nothing left to place).
    // An all-tabu iteration applies no move but still advances the clock.
    bool step() {
        if (coloring_.f() == 0) return false;
        const ReducedGraph& g = coloring_.graph();

        VertexId best_v = -1;
        Color best_color = 0;
        std::int32_t best_delta = 0;
        std::uint64_t ties = 0;
        for (const std::int32_t vi : scratch_.uncolored.elems()) {
            const VertexId v = vi;
            const auto* row = scratch_.gamma.row(v);
            for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k) {
                if (*k == 0) continue;
                const std::int32_t delta = -1 + row[*k];
                if (best_v >= 0 && delta > best_delta) continue;
                const bool aspiration = coloring_.f() + delta < best_.f();
                if (!aspiration && scratch_.tabu.is_tabu(v, *k)) continue;
                if (best_v < 0 || delta < best_delta) {
                    best_v = v;
                    best_color = *k;
                    best_delta = delta;
                    ties = 1;
                } else if (rng_.next_below(++ties) == 0) {
                    best_v = v;
                    best_color = *k;
                }
            }
        }

        scratch_.tabu.tick();
        if (best_v < 0) return true;  // everything tabu this iteration

        apply_move(coloring_, scratch_.gamma, best_v, best_color);
        scratch_.uncolored.erase(best_v);
        // Displace the neighbors now sharing best_color.
        if (coloring_.c() > 0) {
            for (const VertexId* u = g.neighbors_begin(best_v); u != g.neighbors_end(best_v); ++u) {
                if (coloring_.color(*u) == best_color) {
                    apply_move(coloring_, scratch_.gamma, *u, 0);
                    scratch_.uncolored.insert(*u);
                    displaced_.push_back(*u);
                }
            }
        }
        const std::uint64_t tenure = rng_.next_below(10) +
            static_cast<std::uint64_t>(alpha_ * scratch_.uncolored.size());
        for (VertexId u : displaced_) scratch_.tabu.forbid(u, best_color, tenure);
        displaced_.clear();

        if (coloring_.f() < best_.f()) best_ = coloring_;
        return true;
    }

private:
    PartialColScratch& scratch_;
    Coloring& coloring_;
    Rng& rng_;
    double alpha_;
    Coloring best_;
    std::vector<VertexId> displaced_;
};

// Repair the input into a legal partial coloring, then run the PartialCol
// search for `budget` iterations, tracking the best (lowest-f) legal solution.
inline Coloring partial_mpma_improve(PartialColScratch& scratch, Coloring input, Rng& rng,
                                     std::int64_t budget, SearchStats* stats = nullptr,
                                     double alpha = 0.6, int stop_f = 0,
                                     std::optional<Deadline> deadline = std::nullopt) {
    PartialColSearch search(scratch, input, rng, alpha);
    std::int64_t iterations = 0;
    while (iterations < budget && search.best().f() > stop_f) {
        if (!search.step()) break;
        ++iterations;
        if ((iterations & 0xFFF) == 0 && deadline_passed(deadline)) break;
    }
    if (stats) stats->iterations += iterations;
    return search.best();
}

}  // namespace plse

#endif  // PLSE_PARTIAL_HPP
