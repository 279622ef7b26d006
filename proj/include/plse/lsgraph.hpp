#ifndef PLSE_LSGRAPH_HPP
#define PLSE_LSGRAPH_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "plse/instance.hpp"

namespace plse {

using Color = Symbol;        // 0 = uncolored, 1..n = colors
using VertexId = std::int32_t;

// Latin square graph of an instance: one vertex per cell, an edge between
// cells sharing a row or column. Adjacency is structural, so it is derived
// from cell coordinates instead of being stored.
class LatinSquareGraph {
public:
    explicit LatinSquareGraph(const PlsInstance& instance)
        : order_(instance.order()), prefill_(instance.cells()) {}

    int order() const { return order_; }
    int vertex_count() const { return order_ * order_; }
    long long edge_count() const {
        const long long n = order_;
        return n * n * (n - 1);
    }

    Cell cell_of(VertexId v) const { return {v / order_, v % order_}; }
    VertexId vertex_of(int row, int col) const { return row * order_ + col; }

    bool adjacent(VertexId u, VertexId v) const {
        if (u == v) return false;
        const Cell a = cell_of(u);
        const Cell b = cell_of(v);
        return a.row == b.row || a.col == b.col;
    }

    int degree(VertexId) const { return 2 * (order_ - 1); }

    Color prefill(VertexId v) const { return prefill_[static_cast<std::size_t>(v)]; }
    bool is_prefilled(VertexId v) const { return prefill(v) != 0; }

    // D(v): {k} for a cell pre-filled with k, {0,1,...,n} otherwise.
    std::vector<Color> domain(VertexId v) const {
        if (is_prefilled(v)) return {prefill(v)};
        std::vector<Color> d(static_cast<std::size_t>(order_) + 1);
        for (int k = 0; k <= order_; ++k) d[static_cast<std::size_t>(k)] = static_cast<Color>(k);
        return d;
    }

private:
    int order_;
    std::vector<Symbol> prefill_;
};

inline LatinSquareGraph build_graph(const PlsInstance& instance) {
    return LatinSquareGraph(instance);
}

// Graph after removing pre-colored vertices (propagating their colors out of
// neighbor domains) and uncolorable vertices (domain exactly {0}, counted in l).
// Surviving vertices are densely reindexed 0..|V|-1 in row-major cell order.
struct ReducedGraph {
    int order = 0;            // n
    int l = 0;                // cells impossible to fill
    std::vector<Cell> cells;  // vertex -> original grid cell
    std::vector<VertexId> vertex_at;  // n*n grid -> vertex id, -1 if removed

    // CSR adjacency over surviving vertices.
    std::vector<std::int32_t> adj_offsets;
    std::vector<VertexId> adj;

    // CSR color domains, ascending, always starting with 0.
    std::vector<std::int32_t> dom_offsets;
    std::vector<Color> dom;

    // Per-vertex domain bitmask, words_per_vertex 64-bit words.
    int mask_words = 0;
    std::vector<std::uint64_t> dom_mask;

    std::vector<std::pair<Cell, Color>> prefilled;
    std::vector<Cell> impossible;

    int vertex_count() const { return static_cast<int>(cells.size()); }

    std::size_t edge_count() const { return adj.size() / 2; }

    int degree(VertexId v) const { return adj_offsets[v + 1] - adj_offsets[v]; }

    const VertexId* neighbors_begin(VertexId v) const { return adj.data() + adj_offsets[v]; }
    const VertexId* neighbors_end(VertexId v) const { return adj.data() + adj_offsets[v + 1]; }

    int domain_size(VertexId v) const { return dom_offsets[v + 1] - dom_offsets[v]; }
    const Color* domain_begin(VertexId v) const { return dom.data() + dom_offsets[v]; }
    const Color* domain_end(VertexId v) const { return dom.data() + dom_offsets[v + 1]; }

    bool in_domain(VertexId v, Color k) const {
        return (dom_mask[static_cast<std::size_t>(v) * mask_words + k / 64] >> (k % 64)) & 1;
    }

    bool adjacent(VertexId u, VertexId v) const {
        if (u == v) return false;
        return cells[u].row == cells[v].row || cells[u].col == cells[v].col;
    }
};

// Preprocessing reduction: remove each pre-colored vertex and delete its color
// from neighboring domains, then remove every vertex whose domain collapsed to
// {0} and count it into l. Vertices with domain {0,k} are kept as-is; they are
// never promoted to forced assignments.
inline ReducedGraph preprocess(const LatinSquareGraph& graph) {
    const int n = graph.order();
    const int total = n * n;

    ReducedGraph reduced;
    reduced.order = n;
    reduced.vertex_at.assign(static_cast<std::size_t>(total), -1);

    // removed_colors[row|col] accumulates symbols deleted from that line's
    // empty-cell domains as pre-colored vertices leave the graph.
    const int words = (n + 64) / 64;
    std::vector<std::uint64_t> line_used(static_cast<std::size_t>(2) * n * words, 0);
    auto mark = [&](int line, int sym) {
        line_used[static_cast<std::size_t>(line) * words + sym / 64] |= 1ULL << (sym % 64);
    };
    auto marked = [&](int line, int sym) {
        return (line_used[static_cast<std::size_t>(line) * words + sym / 64] >> (sym % 64)) & 1;
    };

    // First loop of the reduction: queue of pre-colored vertices.
    std::vector<VertexId> precolored;
    for (VertexId v = 0; v < total; ++v) {
        if (graph.is_prefilled(v)) precolored.push_back(v);
    }
    for (VertexId v : precolored) {
        const Cell cell = graph.cell_of(v);
        const Color k = graph.prefill(v);
        reduced.prefilled.emplace_back(cell, k);
        mark(cell.row, k);
        mark(n + cell.col, k);
    }

    // Second loop: count vertices whose domain became {0}; keep the rest.
    std::vector<std::vector<Color>> domains;
    for (VertexId v = 0; v < total; ++v) {
        if (graph.is_prefilled(v)) continue;
        const Cell cell = graph.cell_of(v);
        std::vector<Color> d{0};
        for (int k = 1; k <= n; ++k) {
            if (!marked(cell.row, k) && !marked(n + cell.col, k))
                d.push_back(static_cast<Color>(k));
        }
        if (d.size() == 1) {
            reduced.l += 1;
            reduced.impossible.push_back(cell);
            continue;
        }
        reduced.vertex_at[static_cast<std::size_t>(v)] = static_cast<VertexId>(reduced.cells.size());
        reduced.cells.push_back(cell);
        domains.push_back(std::move(d));
    }

    const int nv = reduced.vertex_count();

    // Domains in CSR + bitmask form.
    reduced.dom_offsets.assign(static_cast<std::size_t>(nv) + 1, 0);
    reduced.mask_words = words;
    reduced.dom_mask.assign(static_cast<std::size_t>(nv) * words, 0);
    for (VertexId v = 0; v < nv; ++v) {
        reduced.dom_offsets[v + 1] = reduced.dom_offsets[v] + static_cast<std::int32_t>(domains[v].size());
    }
    reduced.dom.resize(static_cast<std::size_t>(reduced.dom_offsets[nv]));
    for (VertexId v = 0; v < nv; ++v) {
        std::int32_t at = reduced.dom_offsets[v];
        for (Color k : domains[v]) {
            reduced.dom[static_cast<std::size_t>(at++)] = k;
            reduced.dom_mask[static_cast<std::size_t>(v) * words + k / 64] |= 1ULL << (k % 64);
        }
    }

    // Adjacency between survivors, grouped per row and column.
    std::vector<std::vector<VertexId>> by_row(static_cast<std::size_t>(n));
    std::vector<std::vector<VertexId>> by_col(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < nv; ++v) {
        by_row[static_cast<std::size_t>(reduced.cells[v].row)].push_back(v);
        by_col[static_cast<std::size_t>(reduced.cells[v].col)].push_back(v);
    }
    reduced.adj_offsets.assign(static_cast<std::size_t>(nv) + 1, 0);
    for (VertexId v = 0; v < nv; ++v) {
        const Cell cell = reduced.cells[v];
        const auto row_mates = by_row[static_cast<std::size_t>(cell.row)].size();
        const auto col_mates = by_col[static_cast<std::size_t>(cell.col)].size();
        reduced.adj_offsets[v + 1] =
            reduced.adj_offsets[v] + static_cast<std::int32_t>(row_mates + col_mates - 2);
    }
    reduced.adj.resize(static_cast<std::size_t>(reduced.adj_offsets[nv]));
    std::vector<std::int32_t> fill(reduced.adj_offsets.begin(), reduced.adj_offsets.end() - 1);
    for (int line = 0; line < n; ++line) {
        for (VertexId u : by_row[static_cast<std::size_t>(line)])
            for (VertexId v : by_row[static_cast<std::size_t>(line)])
                if (u != v) reduced.adj[static_cast<std::size_t>(fill[u]++)] = v;
        for (VertexId u : by_col[static_cast<std::size_t>(line)])
            for (VertexId v : by_col[static_cast<std::size_t>(line)])
                if (u != v) reduced.adj[static_cast<std::size_t>(fill[u]++)] = v;
    }
    return reduced;
}

struct InstanceBounds {
    int l = 0;
    int upper_bound = 0;
};

// Upper bound on the number of fillable cells: n^2 - l, tightened to n^2 - 2
// when l = 1 (no partial Latin square can be completed to n^2 - 1 cells).
inline InstanceBounds compute_bounds(const ReducedGraph& reduced, int n) {
    InstanceBounds bounds;
    bounds.l = reduced.l;
    bounds.upper_bound = (reduced.l == 1) ? n * n - 2 : n * n - reduced.l;
    return bounds;
}

inline InstanceBounds compute_bounds(const ReducedGraph& reduced) {
    return compute_bounds(reduced, reduced.order);
}

inline void dump_reduced_graph(const ReducedGraph& g, std::ostream& out) {
    out << "order " << g.order << " vertices " << g.vertex_count() << " edges " << g.edge_count()
        << " l " << g.l << " prefilled " << g.prefilled.size() << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << 'v' << v << " cell (" << g.cells[v].row << ',' << g.cells[v].col << ") domain {";
        for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k) {
            if (k != g.domain_begin(v)) out << ',';
            out << *k;
        }
        out << "} adj [";
        for (const VertexId* u = g.neighbors_begin(v); u != g.neighbors_end(v); ++u) {
            if (u != g.neighbors_begin(v)) out << ',';
            out << *u;
        }
        out << "]\n";
    }
}

}  // namespace plse

#endif  // PLSE_LSGRAPH_HPP
