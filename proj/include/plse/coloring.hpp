#ifndef PLSE_COLORING_HPP
#define PLSE_COLORING_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plse/lsgraph.hpp"

namespace plse {

class Coloring;
struct ConflictTable;
struct MoveDelta;
MoveDelta apply_move(Coloring& coloring, ConflictTable& table, VertexId v, Color to);

// Candidate solution over the reduced graph: one color per vertex, restricted
// to D(v). Color 0 marks a deliberately uncolored vertex. Caches f (uncolored
// count) and c (conflicting edge count).
class Coloring {
public:
    Coloring() = default;

    // Starts all-uncolored (f = |V|, c = 0).
    explicit Coloring(const ReducedGraph& graph)
        : graph_(&graph),
          colors_(static_cast<std::size_t>(graph.vertex_count()), 0),
          f_(graph.vertex_count()),
          c_(0) {}

    const ReducedGraph& graph() const { return *graph_; }
    bool same_graph(const Coloring& other) const { return graph_ == other.graph_; }

    int size() const { return static_cast<int>(colors_.size()); }
    Color color(VertexId v) const { return colors_[static_cast<std::size_t>(v)]; }
    const std::vector<Color>& colors() const { return colors_; }
    const Color* data() const { return colors_.data(); }

    int f() const { return f_; }
    int c() const { return c_; }
    bool legal() const { return c_ == 0; }

    // Full recomputation; establishes the caches after bulk edits.
    void assign(std::vector<Color> colors) {
        if (colors.size() != colors_.size()) throw std::invalid_argument("assignment size mismatch");
        for (std::size_t v = 0; v < colors.size(); ++v)
            if (!graph_->in_domain(static_cast<VertexId>(v), colors[v]))
                throw std::invalid_argument("assignment leaves vertex domain");
        colors_ = std::move(colors);
        recompute();
    }

    void set_color_and_recompute(VertexId v, Color k) {
        if (!graph_->in_domain(v, k)) throw std::invalid_argument("color not in domain");
        colors_[static_cast<std::size_t>(v)] = k;
        recompute();
    }

    void recompute() {
        f_ = 0;
        c_ = 0;
        const int nv = size();
        for (VertexId v = 0; v < nv; ++v) {
            const Color k = colors_[static_cast<std::size_t>(v)];
            if (k == 0) {
                ++f_;
                continue;
            }
            for (const VertexId* u = graph_->neighbors_begin(v); u != graph_->neighbors_end(v); ++u) {
                if (*u > v && colors_[static_cast<std::size_t>(*u)] == k) ++c_;
            }
        }
    }

private:
    friend MoveDelta apply_move(Coloring&, ConflictTable&, VertexId, Color);

    const ReducedGraph* graph_ = nullptr;
    std::vector<Color> colors_;
    int f_ = 0;
    int c_ = 0;
};

inline int evaluate_f(const Coloring& coloring) { return coloring.f(); }

inline int evaluate_c(const Coloring& coloring) { return coloring.c(); }

// Extended fitness F = f + phi * c (Section: penalty formulation).
inline double evaluate_F(const Coloring& coloring, double phi) {
    if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
    return coloring.f() + phi * coloring.c();
}

struct MoveDelta {
    int df = 0;
    int dc = 0;
};

// gamma[v][k] = number of neighbors of v currently colored k (k >= 1; the
// zero column stays zero). Supports O(1) move-delta evaluation.
struct ConflictTable {
    int width = 0;  // n + 1
    std::vector<std::int32_t> gamma;

    void build(const Coloring& coloring) {
        const ReducedGraph& g = coloring.graph();
        width = g.order + 1;
        gamma.assign(static_cast<std::size_t>(g.vertex_count()) * width, 0);
        const int nv = g.vertex_count();
        for (VertexId v = 0; v < nv; ++v) {
            const Color k = coloring.color(v);
            if (k == 0) continue;
            for (const VertexId* u = g.neighbors_begin(v); u != g.neighbors_end(v); ++u)
                gamma[static_cast<std::size_t>(*u) * width + k] += 1;
        }
    }

    std::int32_t count(VertexId v, Color k) const {
        return gamma[static_cast<std::size_t>(v) * width + k];
    }

    std::int32_t* row(VertexId v) { return gamma.data() + static_cast<std::size_t>(v) * width; }
    const std::int32_t* row(VertexId v) const {
        return gamma.data() + static_cast<std::size_t>(v) * width;
    }
};

// Move delta without applying: the vertex leaves `from` for `to`.
inline MoveDelta peek_move(const Coloring& coloring, const ConflictTable& table, VertexId v, Color to) {
    const Color from = coloring.color(v);
    MoveDelta delta;
    delta.df = (to == 0 ? 1 : 0) - (from == 0 ? 1 : 0);
    delta.dc = (to == 0 ? 0 : table.count(v, to)) - (from == 0 ? 0 : table.count(v, from));
    return delta;
}

// One-move operator: recolor v to `to` (which must be a different color from
// its domain), updating the coloring caches and the conflict table.
inline MoveDelta apply_move(Coloring& coloring, ConflictTable& table, VertexId v, Color to) {
    const ReducedGraph& g = coloring.graph();
    if (!g.in_domain(v, to)) throw std::invalid_argument("move color not in domain");
    const Color from = coloring.color(v);
    if (from == to) throw std::invalid_argument("move to the current color");

    const MoveDelta delta = peek_move(coloring, table, v, to);
    coloring.colors_[static_cast<std::size_t>(v)] = to;
    coloring.f_ += delta.df;
    coloring.c_ += delta.dc;

    for (const VertexId* u = g.neighbors_begin(v); u != g.neighbors_end(v); ++u) {
        auto* row = table.row(*u);
        if (from != 0) row[from] -= 1;
        if (to != 0) row[to] += 1;
    }
    return delta;
}

// Number of vertices colored differently in the two solutions.
inline int hamming_distance(const Coloring& a, const Coloring& b) {
    if (!a.same_graph(b)) throw std::invalid_argument("hamming distance across different graphs");
    const Color* pa = a.data();
    const Color* pb = b.data();
    const int nv = a.size();
    int distance = 0;
    for (int i = 0; i < nv; ++i) distance += (pa[i] != pb[i]);
    return distance;
}

// Completed grid: pre-filled symbols plus the solution's colored cells,
// 0 where a cell stays unfilled.
inline PlsInstance to_grid(const PlsInstance& instance, const ReducedGraph& reduced,
                           const Coloring& solution) {
    PlsInstance grid(instance.order());
    for (const auto& [cell, color] : reduced.prefilled) grid.set(cell.row, cell.col, color);
    const int nv = reduced.vertex_count();
    for (VertexId v = 0; v < nv; ++v) {
        if (solution.color(v) != 0) {
            const Cell cell = reduced.cells[v];
            grid.set(cell.row, cell.col, solution.color(v));
        }
    }
    return grid;
}

// Filled-cell count n^2 - l - f of a legal solution.
inline int instance_score(const PlsInstance& instance, const Coloring& solution,
                          const ReducedGraph& reduced) {
    if (!solution.legal()) throw std::invalid_argument("score undefined for conflicting solutions");
    const int n = instance.order();
    return n * n - reduced.l - solution.f();
}

}  // namespace plse

#endif  // PLSE_COLORING_HPP
