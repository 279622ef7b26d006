#ifndef PLSE_PLITS_HPP
#define PLSE_PLITS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "plse/partial.hpp"
#include "plse/rng.hpp"
#include "plse/search_util.hpp"

namespace plse {

// Penalty phase. Comparisons use the scaled integer form 2F = wf*f + wc*c so
// ties are exact for phi = 0.5 (phase 1) and phi = |V| (phase 2).
struct PhaseConfig {
    double phi = 0.5;
    std::int64_t iterations = 0;
};

struct PhaseWeights {
    std::int64_t wf = 2;
    std::int64_t wc = 1;

    static PhaseWeights from_phi(double phi) {
        const double doubled = 2.0 * phi;
        const auto rounded = static_cast<std::int64_t>(doubled);
        if (!(phi > 0.0) || static_cast<double>(rounded) != doubled)
            throw std::invalid_argument("phi must be a positive multiple of 0.5");
        return {2, rounded};
    }

    std::int64_t scaled(int f, int c) const { return wf * f + wc * c; }
    std::int64_t scaled_delta(const MoveDelta& d) const { return wf * d.df + wc * d.dc; }
};

struct CandidateMove {
    VertexId v = -1;
    Color to = 0;
    int df = 0;
    int dc = 0;
};

// N(S) = N0(S) u Nc(S): uncolored vertices move to any non-zero domain color;
// conflicting vertices move to any other domain color, including 0.
inline std::vector<CandidateMove> enumerate_neighborhood(const Coloring& coloring,
                                                         const ConflictTable& table) {
    std::vector<CandidateMove> moves;
    const ReducedGraph& g = coloring.graph();
    const int nv = g.vertex_count();
    for (VertexId v = 0; v < nv; ++v) {
        const Color cur = coloring.color(v);
        if (cur != 0 && table.count(v, cur) == 0) continue;  // colored, conflict-free
        for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k) {
            if (*k == cur) continue;
            if (cur == 0 && *k == 0) continue;
            const MoveDelta d = peek_move(coloring, table, v, *k);
            moves.push_back({v, *k, d.df, d.dc});
        }
    }
    return moves;
}

struct PlitsScratch {
    ConflictTable gamma;
    TabuList tabu;
    IndexSet uncolored;
    IndexSet conflicting;
    int sized_for = -1;

    void prepare(const ReducedGraph& g) {
        if (sized_for != g.vertex_count()) {
            sized_for = g.vertex_count();
            tabu.reset(g.vertex_count(), g.order + 1);
            uncolored.reset(g.vertex_count());
            conflicting.reset(g.vertex_count());
        } else {
            tabu.skip_past(16 + 2 * static_cast<std::uint64_t>(g.vertex_count()));
            uncolored.clear();
            conflicting.clear();
        }
    }
};

enum class StepResult {
    Moved,      // applied the best admissible move
    AllTabu,    // neighborhood non-empty but nothing admissible; clock advanced
    Exhausted,  // empty neighborhood: f = 0 and c = 0
};

// Single-phase tabu search episode over one coloring. The candidate set is
// restricted to uncolored and conflicting vertices; the reverse move gets
// tabu tenure T = L + floor(alpha * (|V0| + |C|)), L uniform in [0,9], and a
// tabu move is admissible only when it beats the phase best (aspiration).
class PlitsSearch {
public:
    PlitsSearch(PlitsScratch& scratch, Coloring& coloring, PhaseWeights weights, Rng& rng,
                double alpha = 0.6, std::int64_t audit_every = 0)
        : scratch_(scratch),
          coloring_(coloring),
          weights_(weights),
          rng_(rng),
          alpha_(alpha),
          audit_every_(audit_every),
          best_(coloring) {
        scratch_.prepare(coloring.graph());
        scratch_.gamma.build(coloring_);
        const int nv = coloring_.size();
        for (VertexId v = 0; v < nv; ++v) {
            const Color k = coloring_.color(v);
            if (k == 0)
                scratch_.uncolored.insert(v);
            else if (scratch_.gamma.count(v, k) > 0)
                scratch_.conflicting.insert(v);
        }
        best_scaled_ = weights_.scaled(coloring_.f(), coloring_.c());
    }

    const Coloring& best() const { return best_; }
    const Coloring& current() const { return coloring_; }
    std::int64_t best_scaled() const { return best_scaled_; }
    std::int64_t current_scaled() const { return weights_.scaled(coloring_.f(), coloring_.c()); }
    const ConflictTable& table() const { return scratch_.gamma; }
    bool move_tabu(VertexId v, Color k) const { return scratch_.tabu.is_tabu(v, k); }

    StepResult step(CandidateMove* applied = nullptr) {
        if (scratch_.uncolored.empty() && scratch_.conflicting.empty()) return StepResult::Exhausted;

        const ReducedGraph& g = coloring_.graph();
        const std::int64_t current_scaled = weights_.scaled(coloring_.f(), coloring_.c());

        CandidateMove chosen;
        std::int64_t chosen_delta = 0;
        bool found = false;
        std::uint64_t ties = 0;

        auto consider = [&](VertexId v, Color cur, const std::int32_t* row, Color to) {
            const int df = (to == 0 ? 1 : 0) - (cur == 0 ? 1 : 0);
            const int dc = (to == 0 ? 0 : row[to]) - (cur == 0 ? 0 : row[cur]);
            const std::int64_t delta = weights_.wf * df + weights_.wc * dc;
            if (found && delta > chosen_delta) return;
            if (scratch_.tabu.is_tabu(v, to) && current_scaled + delta >= best_scaled_) return;
            if (!found || delta < chosen_delta) {
                chosen = {v, to, df, dc};
                chosen_delta = delta;
                found = true;
                ties = 1;
            } else if (rng_.next_below(++ties) == 0) {
                chosen = {v, to, df, dc};
            }
        };

        for (const std::int32_t vi : scratch_.uncolored.elems()) {
            const VertexId v = vi;
            const auto* row = scratch_.gamma.row(v);
            for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k)
                if (*k != 0) consider(v, 0, row, *k);
        }
        for (const std::int32_t vi : scratch_.conflicting.elems()) {
            const VertexId v = vi;
            const Color cur = coloring_.color(v);
            const auto* row = scratch_.gamma.row(v);
            for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k)
                if (*k != cur) consider(v, cur, row, *k);
        }

        scratch_.tabu.tick();
        if (!found) return StepResult::AllTabu;

        const Color previous = coloring_.color(chosen.v);
        apply_move(coloring_, scratch_.gamma, chosen.v, chosen.to);
        update_membership_around(chosen.v, previous, chosen.to);

        const std::uint64_t active =
            static_cast<std::uint64_t>(scratch_.uncolored.size()) + scratch_.conflicting.size();
        const std::uint64_t tenure =
            rng_.next_below(10) + static_cast<std::uint64_t>(alpha_ * static_cast<double>(active));
        scratch_.tabu.forbid(chosen.v, previous, tenure);

        const std::int64_t now_scaled = current_scaled + chosen_delta;
        if (now_scaled < best_scaled_) {
            best_scaled_ = now_scaled;
            best_ = coloring_;
        }

        if (audit_every_ > 0 && ++applied_count_ % audit_every_ == 0) audit();
        if (applied) *applied = chosen;
        return StepResult::Moved;
    }

private:
    void update_membership_around(VertexId v, Color from, Color to) {
        const ReducedGraph& g = coloring_.graph();
        if (from == 0) scratch_.uncolored.erase(v);
        if (to == 0) {
            scratch_.uncolored.insert(v);
            scratch_.conflicting.erase(v);
        } else if (scratch_.gamma.count(v, to) > 0) {
            scratch_.conflicting.insert(v);
        } else {
            scratch_.conflicting.erase(v);
        }
        for (const VertexId* u = g.neighbors_begin(v); u != g.neighbors_end(v); ++u) {
            const Color cu = coloring_.color(*u);
            if (cu == 0 || (cu != from && cu != to)) continue;
            if (scratch_.gamma.count(*u, cu) > 0)
                scratch_.conflicting.insert(*u);
            else
                scratch_.conflicting.erase(*u);
        }
    }

    void audit() const {
        Coloring check = coloring_;
        check.recompute();
        ConflictTable fresh;
        fresh.build(check);
        if (check.f() != coloring_.f() || check.c() != coloring_.c() ||
            fresh.gamma != scratch_.gamma.gamma)
            throw std::logic_error("incremental evaluation diverged from recomputation");
    }

    PlitsScratch& scratch_;
    Coloring& coloring_;
    PhaseWeights weights_;
    Rng& rng_;
    double alpha_;
    std::int64_t audit_every_;
    std::int64_t applied_count_ = 0;
    Coloring best_;
    std::int64_t best_scaled_ = 0;
};

struct PlitsParams {
    std::int64_t phase1_iters = 0;  // 0 -> 100 * |V|
    std::int64_t phase2_iters = 0;  // 0 -> 2 * |V|
    double alpha = 0.6;
    std::int64_t audit_every = 0;
    int stop_f = 0;  // stop once a legal solution with f <= stop_f is found
};

inline std::int64_t phase1_default(int vertex_count) { return 100LL * vertex_count; }
inline std::int64_t phase2_default(int vertex_count) { return 2LL * vertex_count; }

namespace detail {

inline bool run_phase(PlitsScratch& scratch, Coloring& coloring, PhaseWeights weights,
                      std::int64_t budget, const PlitsParams& params, Rng& rng,
                      SearchStats* stats, const std::optional<Deadline>& deadline) {
    PlitsSearch search(scratch, coloring, weights, rng, params.alpha, params.audit_every);
    std::int64_t iterations = 0;
    bool hit_target = false;
    while (iterations < budget) {
        if (search.best().legal() && search.best().f() <= params.stop_f) {
            hit_target = true;
            break;
        }
        const StepResult result = search.step();
        if (result == StepResult::Exhausted) break;
        ++iterations;
        if ((iterations & 0xFFF) == 0 && deadline_passed(deadline)) break;
    }
    if (stats) stats->iterations += iterations;
    hit_target = hit_target || (search.best().legal() && search.best().f() <= params.stop_f);
    coloring = search.best();
    return hit_target;
}

}  // namespace detail

// Two-phase partial legal and illegal tabu search. Phase 1 explores with
// phi = 0.5; phase 2 resolves conflicts with phi = |V| starting from phase 1's
// best with a cleared tabu table. The result is always legal: if phase 2 ends
// with conflicts left, a final greedy uncoloring repair forces c = 0.
inline Coloring plits_run(PlitsScratch& scratch, Coloring input, Rng& rng,
                          const PlitsParams& params = {}, SearchStats* stats = nullptr,
                          std::optional<Deadline> deadline = std::nullopt) {
    const int nv = input.size();
    if (nv == 0) return input;
    const std::int64_t iters1 = params.phase1_iters > 0 ? params.phase1_iters : phase1_default(nv);
    const std::int64_t iters2 = params.phase2_iters > 0 ? params.phase2_iters : phase2_default(nv);

    const bool done = detail::run_phase(scratch, input, PhaseWeights::from_phi(0.5), iters1, params,
                                        rng, stats, deadline);
    if (!done) {
        detail::run_phase(scratch, input, PhaseWeights::from_phi(static_cast<double>(nv)), iters2,
                          params, rng, stats, deadline);
    }
    if (!input.legal()) input = repair(std::move(input));
    return input;
}

}  // namespace plse

#endif  // PLSE_PLITS_HPP
