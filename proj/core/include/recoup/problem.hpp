#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recoup/graph.hpp"

namespace recoup {

/// Cohesion aggression in [0, 1], kept as an exact decimal so the goal
/// threshold ceil(alpha * max_intra) is computed in integer arithmetic.
class Alpha {
public:
    Alpha() : Alpha(1, 2, "0.5") {}

    static Alpha parse(const std::string& text);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    const std::string& text() const { return text_; }
    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// ceil(alpha * value), exact.
    std::int64_t ceil_times(std::int64_t value) const {
        return (num_ * value + den_ - 1) / den_;
    }

    friend bool operator==(const Alpha& a, const Alpha& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Alpha(std::int64_t num, std::int64_t den, std::string text)
        : num_(num), den_(den), text_(std::move(text)) {}

    std::int64_t num_;
    std::int64_t den_;
    std::string text_;
};

/// The dependency-refactoring search problem over a fixed partition:
/// add missing intra-edges, delete inter-edges from over-coupled module
/// pairs, until every module pair has at most one inter-edge and cohesion
/// reaches the aggression threshold.
class RefactorProblem {
public:
    RefactorProblem(ProjectState initial, Alpha alpha);

    using State = ProjectState;
    using ActionT = Action;
    using Key = BitSet;
    using KeyHash = BitSetHash;

    const ProjectState& initial() const { return initial_; }
    const Alpha& alpha() const { return alpha_; }
    int max_intra() const { return max_intra_; }
    int cohesion_threshold() const { return cohesion_threshold_; }
    const DependencyClosure& original_closure() const { return original_closure_; }

    bool is_goal(const ProjectState& state) const;
    const BitSet& key(const ProjectState& state) const { return state.edge_bits(); }

    /// Pruned action set: at most one add (the lexicographically smallest
    /// absent intra-module pair) and at most one delete (the smallest present
    /// inter-edge whose module pair still has two or more inter-edges).
    std::vector<Action> applicable_actions(const ProjectState& state) const;

    /// Unpruned but filtered set: every absent intra pair as an add and every
    /// present inter-edge as a delete. Exercised by oracles, not the search.
    std::vector<Action> full_actions(const ProjectState& state) const;

    template <typename F>
    void expand(const ProjectState& state, F&& emit) const {
        for (const Action& a : applicable_actions(state))
            emit(a, apply_action(state, a));
    }

private:
    ProjectState initial_;
    Alpha alpha_;
    int max_intra_;
    int cohesion_threshold_;
    DependencyClosure original_closure_;
    std::vector<std::size_t> intra_pair_slots_;  // sorted pair indices within a module
};

int zero_heuristic(const ProjectState& state);

/// Extra inter-edges beyond the one allowed per module pair (the coupling
/// goal condition); zero exactly on states satisfying that condition.
int coupling_heuristic(const ProjectState& state);

/// Intra-edges still missing before the cohesion threshold is met.
int cohesion_heuristic(const RefactorProblem& problem, const ProjectState& state);

/// Sum of the coupling and cohesion estimates; dominates both.
int additive_heuristic(const RefactorProblem& problem, const ProjectState& state);

enum class HeuristicKind { Zero, Coupling, Cohesion, Additive };

HeuristicKind heuristic_from_name(const std::string& name);
std::string heuristic_name(HeuristicKind kind);

/// Search-facing evaluator. Successor values are derived incrementally from
/// the parent value; agreement with the from-scratch functions is covered by
/// tests.
class RefactorHeuristic {
public:
    RefactorHeuristic(HeuristicKind kind, const RefactorProblem& problem)
        : kind_(kind), problem_(&problem) {}

    HeuristicKind kind() const { return kind_; }

    int at_root(const ProjectState& state) const;
    int at_child(const ProjectState& parent, int parent_h, const Action& action,
                 const ProjectState& child) const;

private:
    HeuristicKind kind_;
    const RefactorProblem* problem_;
};

}  // namespace recoup
