#include <doctest.h>

#include "fixtures.hpp"
#include "recoup/problem.hpp"
#include "recoup/repair.hpp"
#include "recoup/search.hpp"

using namespace recoup;
using namespace recoup::testing;

TEST_CASE("already-valid solutions are returned untouched") {
    const ProjectState fig = canonical_fixture();
    const DependencyClosure original = transitive_closure(fig);
    const RepairOutcome out = repair(original, fig, fig.inter_count());
    CHECK(out.valid);
    CHECK(out.added_edges.empty());
    CHECK(out.violations_before == 0);
    CHECK(out.violations_after == 0);
    CHECK(out.state == fig);
    CHECK(out.inter_deleted_net == 0);
}

TEST_CASE("a kept one-way edge gets its reverse added back") {
    // Original project has a two-way dependency between the modules; the
    // solution kept only (b, f), losing the B-to-A dependencies. Repair adds
    // the reverse edge (f, b).
    const ProjectState original_state = canonical_fixture_plus_fb();
    const DependencyClosure original = transitive_closure(original_state);
    const ProjectState solution =
        original_state.with_edge_removed(Edge{2, 3}).with_edge_removed(Edge{5, 1});
    const RepairOutcome out = repair(original, solution, original_state.inter_count());
    CHECK(out.violations_before > 0);
    REQUIRE(out.added_edges.size() == 1);
    CHECK(out.added_edges.front() == Edge{5, 1});  // reverse of (b, f)
    CHECK(out.violations_after < out.violations_before);
    CHECK(transitive_closure(out.state).reaches(5, 1));  // f depends on b again
    CHECK(out.inter_deleted_net == 1);                   // deleted 2, added 1
}

TEST_CASE("repair restores full validity once cohesion was raised") {
    // The same two-way scenario after an aggression-1 search: both modules
    // are now cliques and only (b, f) survived between them. Adding (f, b)
    // back makes the whole project one reachability component again.
    const ProjectState original_state = canonical_fixture_plus_fb();
    const DependencyClosure original = transitive_closure(original_state);
    ProjectState solution =
        original_state.with_edge_removed(Edge{2, 3}).with_edge_removed(Edge{5, 1});
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = 0; b < 6; ++b)
            if (a != b && a / 3 == b / 3 && !solution.has_edge(a, b))
                solution = solution.with_edge_added(Edge{a, b});
    const RepairOutcome out = repair(original, solution, original_state.inter_count());
    REQUIRE(out.added_edges.size() == 1);
    CHECK(out.added_edges.front() == Edge{5, 1});
    CHECK(out.valid);
    CHECK(out.violations_after == 0);
}

TEST_CASE("no candidates leaves an invalid solution invalid") {
    // Two modules whose only connection was deleted entirely: repair has no
    // inter-edge left to reverse.
    const ProjectState original_state = make_state({0, 0, 1, 1}, 2, {{0, 1}, {1, 2}, {2, 3}});
    const DependencyClosure original = transitive_closure(original_state);
    const ProjectState solution = original_state.with_edge_removed(Edge{1, 2});
    const RepairOutcome out = repair(original, solution, original_state.inter_count());
    CHECK_FALSE(out.valid);
    CHECK(out.added_edges.empty());
    CHECK(out.violations_after == out.violations_before);
    CHECK(out.violations_before > 0);
}

TEST_CASE("additions that do not reduce violations are reverted") {
    // Dropping (2,3) breaks reachability inside module B; the surviving
    // inter-edge (0,2) offers only the useless reverse (2,0), which fixes
    // nothing and must not be kept.
    const ProjectState original_state = make_state({0, 0, 1, 1}, 2, {{0, 1}, {0, 2}, {2, 3}});
    const DependencyClosure original = transitive_closure(original_state);
    const ProjectState solution = original_state.with_edge_removed(Edge{2, 3});
    const RepairOutcome out = repair(original, solution, original_state.inter_count());
    CHECK_FALSE(out.valid);
    CHECK(out.added_edges.empty());
    CHECK(out.state == solution);
}

TEST_CASE("repair never deletes edges and only adds inter-edges") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const ProjectState original_state = random_state(8, 3, seed);
        const RefactorProblem problem(original_state, Alpha::parse("0.5"));
        const auto outcome =
            best_first_search(problem, RefactorHeuristic(HeuristicKind::Additive, problem));
        REQUIRE(outcome.solved());
        const RepairOutcome out = repair(problem.original_closure(), *outcome.terminal,
                                         original_state.inter_count());
        CHECK(out.violations_after <= out.violations_before);
        // Every original edge of the solution is still present.
        outcome.terminal->for_each_edge([&](Edge e) {
            CHECK(out.state.has_edge(e.from, e.to));
        });
        // The only differences are the recorded additions, all inter-module.
        CHECK(out.state.edge_count() ==
              outcome.terminal->edge_count() + static_cast<int>(out.added_edges.size()));
        for (const Edge& e : out.added_edges)
            CHECK(classify_edge(out.state, e) == EdgeClass::Inter);
        CHECK(out.state.intra_count() == outcome.terminal->intra_count());
    }
}

TEST_CASE("repair is idempotent") {
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
        const ProjectState original_state = random_state(7, 3, seed);
        const RefactorProblem problem(original_state, Alpha::parse("1.0"));
        const auto outcome =
            best_first_search(problem, RefactorHeuristic(HeuristicKind::Additive, problem));
        REQUIRE(outcome.solved());
        const RepairOutcome first = repair(problem.original_closure(), *outcome.terminal,
                                           original_state.inter_count());
        const RepairOutcome second =
            repair(problem.original_closure(), first.state, original_state.inter_count());
        CHECK(second.added_edges.empty());
        CHECK(second.state == first.state);
        CHECK(second.violations_after == first.violations_after);
    }
}

TEST_CASE("vertex-set mismatch is rejected") {
    const ProjectState fig = canonical_fixture();
    CHECK_THROWS_AS(repair(DependencyClosure(4), fig, 0), InputError);
}
