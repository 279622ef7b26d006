#ifndef PLSE_ORACLE_HPP
#define PLSE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "plse/coloring.hpp"

namespace plse {

struct OracleResult {
    int optimum_f = 0;
    Coloring certificate;
    bool exact = true;           // false when the node budget ran out
    std::int64_t nodes = 0;
};

namespace detail {

// Exhaustive search over per-vertex domain choices. Vertices are decided in
// fail-first order (fewest feasible non-zero colors first); colors are tried
// ascending with 0 last. With `prune` set, branches that cannot beat the
// incumbent (current zeros + vertices left with no feasible color) are cut.
class ExactSolver {
public:
    ExactSolver(const ReducedGraph& graph, std::int64_t node_budget, bool prune)
        : graph_(graph), budget_(node_budget), prune_(prune) {
        const int nv = graph.vertex_count();
        const int width = graph.order + 1;
        assignment_.assign(static_cast<std::size_t>(nv), kUndecided);
        used_.assign(static_cast<std::size_t>(nv) * width, 0);
        // All-uncolored is always a legal incumbent.
        best_assignment_.assign(static_cast<std::size_t>(nv), 0);
        best_f_ = nv;
    }

    OracleResult run() {
        descend(0);
        OracleResult result;
        result.optimum_f = best_f_;
        result.exact = !budget_exhausted_;
        result.nodes = nodes_;
        Coloring certificate(graph_);
        std::vector<Color> colors(best_assignment_.size());
        for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = static_cast<Color>(best_assignment_[i]);
        certificate.assign(std::move(colors));
        result.certificate = std::move(certificate);
        return result;
    }

private:
    static constexpr std::int16_t kUndecided = -1;

    std::int32_t used(VertexId v, Color k) const {
        return used_[static_cast<std::size_t>(v) * (graph_.order + 1) + k];
    }

    void adjust(VertexId v, Color k, std::int32_t delta) {
        if (k == 0) return;
        for (const VertexId* u = graph_.neighbors_begin(v); u != graph_.neighbors_end(v); ++u)
            used_[static_cast<std::size_t>(*u) * (graph_.order + 1) + k] += delta;
    }

    void descend(int zeros) {
        if (budget_exhausted_) return;
        if (++nodes_ > budget_) {
            budget_exhausted_ = true;
            return;
        }

        // Fail-first selection; forced-zero vertices bound the branch.
        VertexId pick = -1;
        int pick_feasible = 0;
        int forced_zeros = 0;
        const int nv = graph_.vertex_count();
        for (VertexId v = 0; v < nv; ++v) {
            if (assignment_[static_cast<std::size_t>(v)] != kUndecided) continue;
            int feasible = 0;
            for (const Color* k = graph_.domain_begin(v); k != graph_.domain_end(v); ++k)
                if (*k != 0 && used(v, *k) == 0) ++feasible;
            if (feasible == 0) {
                ++forced_zeros;
                continue;
            }
            if (pick < 0 || feasible < pick_feasible) {
                pick = v;
                pick_feasible = feasible;
            }
        }

        if (prune_ && zeros + forced_zeros >= best_f_) return;

        if (pick < 0) {
            // Only forced zeros (possibly none) remain: the branch is decided.
            const int f = zeros + forced_zeros;
            if (f < best_f_) {
                best_f_ = f;
                for (std::size_t i = 0; i < assignment_.size(); ++i)
                    best_assignment_[i] = assignment_[i] == kUndecided ? 0 : assignment_[i];
            }
            return;
        }

        for (const Color* k = graph_.domain_begin(pick); k != graph_.domain_end(pick); ++k) {
            if (*k == 0 || used(pick, *k) != 0) continue;
            assignment_[static_cast<std::size_t>(pick)] = static_cast<std::int16_t>(*k);
            adjust(pick, *k, +1);
            descend(zeros);
            adjust(pick, *k, -1);
            if (budget_exhausted_) break;
        }
        if (!budget_exhausted_) {
            assignment_[static_cast<std::size_t>(pick)] = 0;
            descend(zeros + 1);
        }
        assignment_[static_cast<std::size_t>(pick)] = kUndecided;
    }

    const ReducedGraph& graph_;
    std::int64_t budget_;
    bool prune_;
    std::int64_t nodes_ = 0;
    bool budget_exhausted_ = false;
    std::vector<std::int16_t> assignment_;
    std::vector<std::int32_t> used_;
    std::vector<std::int16_t> best_assignment_;
    int best_f_ = 0;
};

}  // namespace detail

// Exact minimum uncolored count over all legal colorings of the reduced
// graph, with one optimal certificate. Intended for |V| up to roughly 40.
inline OracleResult solve_exact(const ReducedGraph& reduced, std::int64_t node_budget = 50'000'000) {
    return detail::ExactSolver(reduced, node_budget, true).run();
}

// Full enumeration of every legal coloring, vertices in index order, no bound
// pruning. Deliberately shares no traversal code with solve_exact so it can
// validate the branch-and-bound on tiny graphs (|V| <= ~12).
inline OracleResult enumerate_exact(const ReducedGraph& reduced) {
    const int nv = reduced.vertex_count();
    OracleResult result;
    std::vector<Color> assignment(static_cast<std::size_t>(nv), 0);
    std::vector<Color> best(assignment);
    int best_f = nv + 1;
    std::int64_t nodes = 0;

    auto legal_here = [&](VertexId v, Color k) {
        for (const VertexId* u = reduced.neighbors_begin(v); u != reduced.neighbors_end(v); ++u)
            if (*u < v && assignment[static_cast<std::size_t>(*u)] == k) return false;
        return true;
    };

    auto recurse = [&](auto&& self, VertexId v, int zeros) -> void {
        ++nodes;
        if (v == nv) {
            if (zeros < best_f) {
                best_f = zeros;
                best = assignment;
            }
            return;
        }
        for (const Color* k = reduced.domain_begin(v); k != reduced.domain_end(v); ++k) {
            if (*k != 0 && !legal_here(v, *k)) continue;
            assignment[static_cast<std::size_t>(v)] = *k;
            self(self, v + 1, zeros + (*k == 0));
        }
        assignment[static_cast<std::size_t>(v)] = 0;
    };
    recurse(recurse, 0, 0);

    result.optimum_f = best_f;
    result.nodes = nodes;
    Coloring certificate(reduced);
    certificate.assign(std::move(best));
    result.certificate = std::move(certificate);
    return result;
}

}  // namespace plse

#endif  // PLSE_ORACLE_HPP
