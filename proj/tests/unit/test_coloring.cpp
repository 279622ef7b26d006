#include <catch2/catch_amalgamated.hpp>

#include "plse/coloring.hpp"
#include "support/builders.hpp"
#include "support/naive.hpp"

using namespace plse;

namespace {

ReducedGraph empty_graph(int n) { return preprocess(build_graph(PlsInstance(n))); }

}  // namespace

TEST_CASE("f counts uncolored vertices") {
    const ReducedGraph g = empty_graph(3);
    Coloring all_zero(g);
    REQUIRE(evaluate_f(all_zero) == 9);

    // The worked example's optimal grid coloring has two uncolored cells.
    Coloring fig(g);
    fig.assign({1, 3, 2, 2, 0, 1, 0, 2, 3});
    REQUIRE(evaluate_f(fig) == 2);
    REQUIRE(evaluate_c(fig) == 0);

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Coloring s = builders::random_coloring(g, rng);
        REQUIRE(evaluate_f(s) == naive::count_f(s));
    }
}

TEST_CASE("c counts conflicting edges") {
    const ReducedGraph g = empty_graph(3);
    Coloring s(g);
    REQUIRE(evaluate_c(s) == 0);

    // Two same-row vertices on color 1, everything else uncolored.
    s.assign({1, 1, 0, 0, 0, 0, 0, 0, 0});
    REQUIRE(evaluate_c(s) == 1);

    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const ReducedGraph g4 = preprocess(build_graph(generate_instance(4, 0.3, rng.next_u64())));
        Rng colors(rng.next_u64());
        const Coloring random = builders::random_coloring(g4, colors);
        REQUIRE(evaluate_c(random) == naive::count_c(random));
    }
}

TEST_CASE("F combines f and c with the penalty weight") {
    const ReducedGraph g = empty_graph(3);
    Coloring s(g);
    s.assign({1, 1, 0, 2, 2, 0, 0, 0, 0});  // f = 5, c = 2
    REQUIRE(evaluate_f(s) == 5);
    REQUIRE(evaluate_c(s) == 2);
    REQUIRE(evaluate_F(s, 0.5) == 6.0);

    Coloring legal(g);
    legal.assign({1, 2, 3, 2, 3, 1, 3, 1, 2});
    REQUIRE(evaluate_F(legal, 0.5) == evaluate_f(legal));
    REQUIRE(evaluate_F(legal, 100.0) == evaluate_f(legal));

    // f=1, c=1 at phi = |V| evaluates to 1 + |V|.
    Coloring conflicted(g);
    conflicted.assign({1, 1, 2, 3, 2, 0, 2, 3, 1});
    REQUIRE(conflicted.f() == 1);
    REQUIRE(conflicted.c() == 1);
    REQUIRE(evaluate_F(conflicted, 9.0) == 1.0 + 9.0);
    REQUIRE_THROWS_AS(evaluate_F(conflicted, 0.0), std::invalid_argument);

    // Monotone in c for fixed f: same f, fewer conflicts, strictly smaller F.
    Coloring same_f_no_conflicts(g);
    same_f_no_conflicts.assign({1, 2, 0, 2, 1, 0, 0, 0, 0});
    REQUIRE(same_f_no_conflicts.f() == s.f());
    REQUIRE(same_f_no_conflicts.c() == 0);
    for (double phi : {0.5, 1.0, 9.0})
        REQUIRE(evaluate_F(same_f_no_conflicts, phi) < evaluate_F(s, phi));
}

TEST_CASE("apply_move updates caches and the conflict table") {
    const ReducedGraph g = empty_graph(3);
    Coloring s(g);
    s.assign({1, 1, 0, 0, 0, 0, 0, 0, 0});
    ConflictTable table;
    table.build(s);

    SECTION("uncoloring removes its conflicts") {
        const MoveDelta d = apply_move(s, table, 0, 0);
        REQUIRE(d.df == 1);
        REQUIRE(d.dc == -1);
        REQUIRE(s.c() == 0);
    }

    SECTION("coloring a free vertex costs nothing") {
        const MoveDelta d = apply_move(s, table, 8, 2);
        REQUIRE(d.df == -1);
        REQUIRE(d.dc == 0);
    }

    SECTION("moves outside the domain are rejected") {
        const ReducedGraph fig = preprocess(build_graph(builders::fig_instance()));
        Coloring t(fig);
        ConflictTable tt;
        tt.build(t);
        // Vertex 0 is cell (0,1): symbols 1 (row) and 3 (column) are excluded.
        REQUIRE(fig.cells[0] == Cell{0, 1});
        REQUIRE_THROWS_AS(apply_move(t, tt, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("a long random move replay matches from-scratch recomputation") {
    const PlsInstance inst = generate_instance(5, 0.3, 2024);
    const ReducedGraph g = preprocess(build_graph(inst));
    Rng rng(555);
    Coloring s = builders::random_coloring(g, rng);
    ConflictTable table;
    table.build(s);

    for (int step = 0; step < 1000; ++step) {
        const VertexId v = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(g.vertex_count())));
        const Color* begin = g.domain_begin(v);
        const auto size = static_cast<std::uint32_t>(g.domain_end(v) - begin);
        const Color to = begin[rng.next_index(size)];
        if (to == s.color(v)) continue;
        apply_move(s, table, v, to);
    }

    Coloring fresh = s;
    fresh.recompute();
    REQUIRE(fresh.f() == s.f());
    REQUIRE(fresh.c() == s.c());
    REQUIRE(s.f() == naive::count_f(s));
    REQUIRE(s.c() == naive::count_c(s));

    ConflictTable rebuilt;
    rebuilt.build(s);
    REQUIRE(rebuilt.gamma == table.gamma);

    // gamma invariant: c = 1/2 sum of own-color neighbor counts.
    std::int64_t sum = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (s.color(v) != 0) sum += table.count(v, s.color(v));
    REQUIRE(sum == 2 * s.c());
}

TEST_CASE("hamming distance is a metric on colorings") {
    const ReducedGraph g = empty_graph(4);
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const Coloring a = builders::random_coloring(g, rng);
        const Coloring b = builders::random_coloring(g, rng);
        const Coloring c = builders::random_coloring(g, rng);
        REQUIRE(hamming_distance(a, a) == 0);
        REQUIRE(hamming_distance(a, b) == hamming_distance(b, a));
        REQUIRE(hamming_distance(a, b) == naive::hamming(a, b));
        REQUIRE(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }
}

TEST_CASE("hamming distance rejects mismatched graphs") {
    const ReducedGraph g1 = empty_graph(3);
    const ReducedGraph g2 = empty_graph(3);
    REQUIRE_THROWS_AS(hamming_distance(Coloring(g1), Coloring(g2)), std::invalid_argument);
}

TEST_CASE("instance_score equals the filled-cell recount of the rebuilt grid") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const PlsInstance inst = generate_instance(4, 0.4, rng.next_u64());
        const ReducedGraph g = preprocess(build_graph(inst));
        // Greedy legal coloring: first admissible color per vertex.
        Coloring s(g);
        ConflictTable table;
        table.build(s);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (const Color* k = g.domain_begin(v); k != g.domain_end(v); ++k) {
                if (*k != 0 && table.count(v, *k) == 0) {
                    apply_move(s, table, v, *k);
                    break;
                }
            }
        }
        REQUIRE(s.legal());
        const PlsInstance grid = to_grid(inst, g, s);
        REQUIRE(instance_score(inst, s, g) == grid.filled_count());
        REQUIRE(satisfies_latin_condition(grid));
    }
}

TEST_CASE("instance_score rejects conflicting solutions") {
    const ReducedGraph g = empty_graph(3);
    Coloring s(g);
    s.assign({1, 1, 0, 0, 0, 0, 0, 0, 0});
    REQUIRE_THROWS_AS(instance_score(PlsInstance(3), s, g), std::invalid_argument);
}
