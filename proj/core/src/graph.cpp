#include "recoup/graph.hpp"

#include <algorithm>
#include <string>

namespace recoup {

ModulePartition::ModulePartition(std::vector<int> module_of, int module_count,
                                 std::vector<std::string> module_names)
    : module_of_(std::move(module_of)),
      module_count_(module_count),
      module_names_(std::move(module_names)) {
    if (module_count_ < 0) throw InputError("module count must be non-negative");
    if (!module_names_.empty() &&
        module_names_.size() != static_cast<std::size_t>(module_count_))
        throw InputError("module name list does not match module count");
    members_.resize(static_cast<std::size_t>(module_count_));
    for (std::size_t v = 0; v < module_of_.size(); ++v) {
        const int m = module_of_[v];
        if (m < 0 || m >= module_count_)
            throw InputError("vertex " + std::to_string(v) + " mapped to module " +
                             std::to_string(m) + " outside 0.." +
                             std::to_string(module_count_ - 1));
        members_[static_cast<std::size_t>(m)].push_back(static_cast<Vertex>(v));
    }
}

ProjectState::ProjectState(std::shared_ptr<const ModulePartition> partition,
                           const std::vector<Edge>& edges,
                           std::vector<std::string> vertex_names)
    : n_(partition ? partition->vertex_count() : 0),
      partition_(std::move(partition)),
      edges_(ordered_pair_count(n_)),
      vertex_names_(std::move(vertex_names)) {
    if (!partition_) throw InputError("project state requires a partition");
    if (!vertex_names_.empty() && vertex_names_.size() != static_cast<std::size_t>(n_))
        throw InputError("vertex name list does not match vertex count");
    for (const Edge& e : edges) {
        check_pair(e.from, e.to);
        const std::size_t i = pair_index(e.from, e.to, n_);
        if (edges_.test(i)) continue;  // no multi-edges
        edges_.set(i);
        (partition_->module_of(e.from) == partition_->module_of(e.to) ? intra_count_
                                                                      : inter_count_)++;
    }
}

void ProjectState::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
        throw InputError("vertex " + std::to_string(v) + " out of range 0.." +
                         std::to_string(n_ - 1));
}

void ProjectState::check_pair(Vertex from, Vertex to) const {
    check_vertex(from);
    check_vertex(to);
    if (from == to)
        throw InputError("self-dependency (" + std::to_string(from) + ", " +
                         std::to_string(to) + ") is not allowed");
}

ProjectState ProjectState::with_edge_added(Edge e) const {
    check_pair(e.from, e.to);
    const std::size_t i = pair_index(e.from, e.to, n_);
    if (edges_.test(i))
        throw ActionError("edge (" + name_of(e.from) + ", " + name_of(e.to) +
                          ") already present");
    ProjectState next = *this;
    next.edges_.set(i);
    (partition_->module_of(e.from) == partition_->module_of(e.to) ? next.intra_count_
                                                                  : next.inter_count_)++;
    return next;
}

ProjectState ProjectState::with_edge_removed(Edge e) const {
    check_pair(e.from, e.to);
    const std::size_t i = pair_index(e.from, e.to, n_);
    if (!edges_.test(i))
        throw ActionError("edge (" + name_of(e.from) + ", " + name_of(e.to) +
                          ") not present");
    ProjectState next = *this;
    next.edges_.reset(i);
    (partition_->module_of(e.from) == partition_->module_of(e.to) ? next.intra_count_
                                                                  : next.inter_count_)--;
    return next;
}

std::vector<Edge> ProjectState::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count()));
    for_each_edge([&](Edge e) { out.push_back(e); });
    return out;
}

std::string ProjectState::name_of(Vertex v) const {
    check_vertex(v);
    if (!vertex_names_.empty()) return vertex_names_[static_cast<std::size_t>(v)];
    return "v" + std::to_string(v);
}

EdgeClass classify_edge(const ProjectState& state, Edge e) {
    state.check_pair(e.from, e.to);
    const auto& p = state.partition();
    return p.module_of(e.from) == p.module_of(e.to) ? EdgeClass::Intra : EdgeClass::Inter;
}

int count_inter_between(const ProjectState& state, int m1, int m2) {
    const auto& p = state.partition();
    if (m1 < 0 || m1 >= p.module_count() || m2 < 0 || m2 >= p.module_count())
        throw InputError("module index out of range");
    if (m1 == m2) throw InputError("inter-edge count requires two distinct modules");
    const int n = state.vertex_count();
    const auto& bits = state.edge_bits();
    int count = 0;
    for (Vertex a : p.members(m1))
        for (Vertex b : p.members(m2)) {
            count += bits.test(pair_index(a, b, n));
            count += bits.test(pair_index(b, a, n));
        }
    return count;
}

int max_intra_edges(const ProjectState& state) {
    const auto& p = state.partition();
    int total = 0;
    for (int m = 0; m < p.module_count(); ++m) {
        const int size = static_cast<int>(p.members(m).size());
        total += size * (size - 1);
    }
    return total;
}

DependencyClosure transitive_closure(const ProjectState& state) {
    const int n = state.vertex_count();
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    state.for_each_edge([&](Edge e) { adj[static_cast<std::size_t>(e.from)].push_back(e.to); });

    DependencyClosure closure(n);
    std::vector<Vertex> stack;
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (Vertex start = 0; start < n; ++start) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(adj[static_cast<std::size_t>(start)].begin(),
                     adj[static_cast<std::size_t>(start)].end());
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            if (v != start) closure.bits().set(pair_index(start, v, n));
            for (Vertex w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) stack.push_back(w);
        }
    }
    return closure;
}

int validity_violations(const DependencyClosure& original, const ProjectState& state) {
    if (original.vertex_count() != state.vertex_count())
        throw InputError("closure and state cover different vertex sets (" +
                         std::to_string(original.vertex_count()) + " vs " +
                         std::to_string(state.vertex_count()) + ")");
    const DependencyClosure now = transitive_closure(state);
    return static_cast<int>(BitSet::count_and_not(original.bits(), now.bits()));
}

ProjectState apply_action(const ProjectState& state, const Action& action) {
    if (action.kind == ActionKind::AddIntra) {
        if (classify_edge(state, action.edge) != EdgeClass::Intra)
            throw ActionError("add action targets an inter-module pair (" +
                              state.name_of(action.edge.from) + ", " +
                              state.name_of(action.edge.to) + ")");
        return state.with_edge_added(action.edge);
    }
    if (classify_edge(state, action.edge) != EdgeClass::Inter)
        throw ActionError("delete action targets an intra-module pair (" +
                          state.name_of(action.edge.from) + ", " +
                          state.name_of(action.edge.to) + ")");
    return state.with_edge_removed(action.edge);
}

ProjectState replay_plan(const ProjectState& initial, const std::vector<Action>& plan) {
    ProjectState state = initial;
    for (const Action& a : plan) state = apply_action(state, a);
    return state;
}

}  // namespace recoup
