#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "plse/lsgraph.hpp"
#include "plse/oracle.hpp"
#include "support/builders.hpp"
#include "support/naive.hpp"

using namespace plse;

TEST_CASE("Latin square graph has n^2 vertices and n^2(n-1) edges") {
    const LatinSquareGraph g3 = build_graph(PlsInstance(3));
    REQUIRE(g3.vertex_count() == 9);
    REQUIRE(g3.edge_count() == 18);

    const LatinSquareGraph g1 = build_graph(PlsInstance(1));
    REQUIRE(g1.vertex_count() == 1);
    REQUIRE(g1.edge_count() == 0);
}

TEST_CASE("every vertex has degree 2(n-1)") {
    const LatinSquareGraph g = build_graph(PlsInstance(5));
    int count = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        count = 0;
        for (VertexId u = 0; u < g.vertex_count(); ++u) count += g.adjacent(v, u);
        REQUIRE(count == 2 * (5 - 1));
        REQUIRE(g.degree(v) == count);
    }
}

TEST_CASE("prefilled vertices carry singleton domains") {
    const PlsInstance inst = builders::fig_instance();
    const LatinSquareGraph g = build_graph(inst);
    REQUIRE(g.domain(g.vertex_of(0, 0)) == std::vector<Color>{1});
    const auto full = g.domain(g.vertex_of(0, 1));
    REQUIRE(full.size() == 4);
    REQUIRE(full.front() == 0);
}

TEST_CASE("preprocessing the worked example removes 4 vertices and counts l = 1") {
    const ReducedGraph reduced = preprocess(build_graph(builders::fig_instance()));
    REQUIRE(reduced.vertex_count() == 5);
    REQUIRE(reduced.l == 1);
    REQUIRE(reduced.prefilled.size() == 3);
    REQUIRE(reduced.impossible.size() == 1);
    REQUIRE(reduced.impossible.front() == Cell{2, 0});
    // Propagated domains never contain a prefilled row/column symbol.
    for (VertexId v = 0; v < reduced.vertex_count(); ++v) {
        for (const auto& [cell, color] : reduced.prefilled) {
            const bool shares_line =
                cell.row == reduced.cells[v].row || cell.col == reduced.cells[v].col;
            if (shares_line) REQUIRE_FALSE(reduced.in_domain(v, color));
        }
    }
}

TEST_CASE("empty instance reduces to itself") {
    const ReducedGraph reduced = preprocess(build_graph(PlsInstance(4)));
    REQUIRE(reduced.vertex_count() == 16);
    REQUIRE(reduced.l == 0);
    REQUIRE(reduced.prefilled.empty());
    for (VertexId v = 0; v < reduced.vertex_count(); ++v) REQUIRE(reduced.domain_size(v) == 5);
}

TEST_CASE("reduction conserves vertices: survivors + prefilled + l = n^2") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(6));
        const double r = 0.2 + 0.6 * rng.next_double();
        const PlsInstance inst = generate_instance(n, r, rng.next_u64());
        const ReducedGraph reduced = preprocess(build_graph(inst));
        REQUIRE(reduced.vertex_count() + static_cast<int>(reduced.prefilled.size()) + reduced.l ==
                n * n);
        // Domains keep 0 plus at least one color.
        for (VertexId v = 0; v < reduced.vertex_count(); ++v) {
            REQUIRE(reduced.domain_size(v) >= 2);
            REQUIRE(*reduced.domain_begin(v) == 0);
        }
    }
}

TEST_CASE("reduction preserves adjacency between survivors") {
    const PlsInstance inst = generate_instance(6, 0.4, 77);
    const LatinSquareGraph full = build_graph(inst);
    const ReducedGraph reduced = preprocess(full);
    for (VertexId u = 0; u < reduced.vertex_count(); ++u)
        for (VertexId v = 0; v < reduced.vertex_count(); ++v) {
            const VertexId fu = full.vertex_of(reduced.cells[u].row, reduced.cells[u].col);
            const VertexId fv = full.vertex_of(reduced.cells[v].row, reduced.cells[v].col);
            REQUIRE(reduced.adjacent(u, v) == full.adjacent(fu, fv));
        }
    // CSR lists agree with the structural predicate.
    for (VertexId u = 0; u < reduced.vertex_count(); ++u) {
        int listed = 0;
        for (const VertexId* v = reduced.neighbors_begin(u); v != reduced.neighbors_end(u); ++v) {
            REQUIRE(reduced.adjacent(u, *v));
            ++listed;
        }
        int expected = 0;
        for (VertexId v = 0; v < reduced.vertex_count(); ++v) expected += reduced.adjacent(u, v);
        REQUIRE(listed == expected);
    }
}

TEST_CASE("re-running the reduction on the reduced instance changes nothing") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(5));
        const PlsInstance inst = generate_instance(n, 0.5, rng.next_u64());
        const ReducedGraph once = preprocess(build_graph(inst));
        // Express the reduction's outcome as a new instance: prefills kept,
        // impossible cells still empty.
        PlsInstance again(n);
        for (const auto& [cell, color] : once.prefilled) again.set(cell.row, cell.col, color);
        const ReducedGraph twice = preprocess(build_graph(again));
        REQUIRE(twice.vertex_count() == once.vertex_count());
        REQUIRE(twice.l == once.l);
        for (VertexId v = 0; v < once.vertex_count(); ++v) {
            REQUIRE(twice.cells[v] == once.cells[v]);
            REQUIRE(std::vector<Color>(twice.domain_begin(v), twice.domain_end(v)) ==
                    std::vector<Color>(once.domain_begin(v), once.domain_end(v)));
        }
    }
}

TEST_CASE("reduced-graph optimum accounts for the brute-force grid optimum") {
    Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        const PlsInstance inst = generate_instance(4, 0.4 + 0.3 * rng.next_double(), rng.next_u64());
        const ReducedGraph reduced = preprocess(build_graph(inst));
        const OracleResult oracle = solve_exact(reduced);
        REQUIRE(oracle.exact);
        const int graph_best = 16 - reduced.l - oracle.optimum_f;
        REQUIRE(graph_best == naive::grid_max_fill(inst));
    }
}

TEST_CASE("compute_bounds follows the l rules") {
    ReducedGraph fake;
    fake.order = 3;
    fake.l = 1;
    REQUIRE(compute_bounds(fake).upper_bound == 7);
    fake.order = 50;
    fake.l = 0;
    REQUIRE(compute_bounds(fake).upper_bound == 2500);
    fake.order = 5;
    fake.l = 3;
    REQUIRE(compute_bounds(fake).upper_bound == 22);
}

TEST_CASE("debug dump lists vertices with domains and neighbors") {
    const ReducedGraph reduced = preprocess(build_graph(builders::fig_instance()));
    std::ostringstream out;
    dump_reduced_graph(reduced, out);
    REQUIRE(out.str().find("l 1") != std::string::npos);
    REQUIRE(out.str().find("domain {") != std::string::npos);
}
