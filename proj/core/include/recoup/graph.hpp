#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "recoup/bitset.hpp"
#include "recoup/errors.hpp"

namespace recoup {

/// Vertices are dense indices 0..n-1 assigned at load time; every "arbitrary"
/// choice elsewhere is resolved by this order so runs are reproducible.
using Vertex = int;

struct Edge {
    Vertex from = 0;
    Vertex to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class EdgeClass { Intra, Inter };

enum class ActionKind { AddIntra, DeleteInter };

/// A single refactoring step. All actions have unit cost.
struct Action {
    ActionKind kind = ActionKind::AddIntra;
    Edge edge;

    static constexpr int cost = 1;

    friend bool operator==(const Action&, const Action&) = default;
};

/// Dense index of the ordered non-loop pair (from, to) among all n*(n-1)
/// such pairs. Index order equals lexicographic order on (from, to).
inline std::size_t pair_index(Vertex from, Vertex to, int n) {
    return static_cast<std::size_t>(from) * (n - 1) +
           static_cast<std::size_t>(to < from ? to : to - 1);
}

inline Edge pair_of_index(std::size_t index, int n) {
    const auto from = static_cast<Vertex>(index / (n - 1));
    const auto rem = static_cast<Vertex>(index % (n - 1));
    return Edge{from, rem < from ? rem : rem + 1};
}

inline std::size_t ordered_pair_count(int n) {
    return static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0);
}

/// Assignment of every vertex to exactly one module. Modules may be empty.
class ModulePartition {
public:
    ModulePartition(std::vector<int> module_of, int module_count,
                    std::vector<std::string> module_names = {});

    int module_count() const { return module_count_; }
    int vertex_count() const { return static_cast<int>(module_of_.size()); }
    int module_of(Vertex v) const { return module_of_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& module_map() const { return module_of_; }
    const std::vector<Vertex>& members(int module) const {
        return members_[static_cast<std::size_t>(module)];
    }
    const std::vector<std::string>& module_names() const { return module_names_; }

    friend bool operator==(const ModulePartition& a, const ModulePartition& b) {
        return a.module_of_ == b.module_of_ && a.module_count_ == b.module_count_ &&
               a.module_names_ == b.module_names_;
    }

private:
    std::vector<int> module_of_;
    int module_count_;
    std::vector<std::string> module_names_;
    std::vector<std::vector<Vertex>> members_;
};

/// Immutable project snapshot: vertices, directed dependency edges, and the
/// module partition. Edits return new values; the partition is shared.
class ProjectState {
public:
    ProjectState(std::shared_ptr<const ModulePartition> partition,
                 const std::vector<Edge>& edges,
                 std::vector<std::string> vertex_names = {});

    int vertex_count() const { return n_; }
    int module_count() const { return partition_->module_count(); }
    const ModulePartition& partition() const { return *partition_; }
    const std::shared_ptr<const ModulePartition>& partition_ptr() const { return partition_; }

    bool has_edge(Vertex from, Vertex to) const {
        check_pair(from, to);
        return edges_.test(pair_index(from, to, n_));
    }
    const BitSet& edge_bits() const { return edges_; }

    int edge_count() const { return intra_count_ + inter_count_; }
    /// Cohesion: number of intra-module edges.
    int intra_count() const { return intra_count_; }
    /// Coupling: number of inter-module edges.
    int inter_count() const { return inter_count_; }

    ProjectState with_edge_added(Edge e) const;
    ProjectState with_edge_removed(Edge e) const;

    /// Edges in lexicographic (from, to) order.
    std::vector<Edge> edges() const;

    template <typename F>
    void for_each_edge(F&& f) const {
        for (std::size_t i = edges_.find_next(0); i != BitSet::npos; i = edges_.find_next(i + 1))
            f(pair_of_index(i, n_));
    }

    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    /// Display name; falls back to the index when the state is unnamed.
    std::string name_of(Vertex v) const;

    void check_vertex(Vertex v) const;
    void check_pair(Vertex from, Vertex to) const;

    friend bool operator==(const ProjectState& a, const ProjectState& b) {
        return a.n_ == b.n_ && *a.partition_ == *b.partition_ && a.edges_ == b.edges_ &&
               a.vertex_names_ == b.vertex_names_;
    }

private:
    int n_;
    std::shared_ptr<const ModulePartition> partition_;
    BitSet edges_;
    int intra_count_ = 0;
    int inter_count_ = 0;
    std::vector<std::string> vertex_names_;
};

/// Transitive reachability of the original project, used for validity checks.
/// reaches(x, y) means there is a directed path from x to y; pairs with
/// x == y are never stored.
class DependencyClosure {
public:
    DependencyClosure() = default;
    explicit DependencyClosure(int n) : n_(n), reaches_(ordered_pair_count(n)) {}

    int vertex_count() const { return n_; }
    bool reaches(Vertex x, Vertex y) const {
        return x != y && reaches_.test(pair_index(x, y, n_));
    }
    std::size_t pair_count() const { return reaches_.count(); }
    BitSet& bits() { return reaches_; }
    const BitSet& bits() const { return reaches_; }

    friend bool operator==(const DependencyClosure&, const DependencyClosure&) = default;

private:
    int n_ = 0;
    BitSet reaches_;
};

EdgeClass classify_edge(const ProjectState& state, Edge e);

/// Number of inter-edges between two distinct modules, counting both
/// directions; the pair {m1, m2} is unordered.
int count_inter_between(const ProjectState& state, int m1, int m2);

/// Maximum possible number of intra-edges: sum over modules of |M|*(|M|-1).
int max_intra_edges(const ProjectState& state);

DependencyClosure transitive_closure(const ProjectState& state);

/// Ordered pairs reachable in `original` but not in `state`. Zero means the
/// state is a valid refactoring; dependencies added on top are permitted.
int validity_violations(const DependencyClosure& original, const ProjectState& state);

/// Applies one action, checking its precondition, and returns the new state.
ProjectState apply_action(const ProjectState& state, const Action& action);

/// Replays a plan from `initial`, checking every intermediate precondition.
ProjectState replay_plan(const ProjectState& initial, const std::vector<Action>& plan);

}  // namespace recoup
