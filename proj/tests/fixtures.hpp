#pragma once

#include <memory>
#include <string>
#include <vector>

#include "recoup/graph.hpp"
#include "recoup/instance_gen.hpp"

namespace recoup::testing {

inline ProjectState make_state(std::vector<int> module_of, int module_count,
                               const std::vector<Edge>& edges,
                               std::vector<std::string> names = {}) {
    auto partition =
        std::make_shared<const ModulePartition>(std::move(module_of), module_count);
    return ProjectState(std::move(partition), edges, std::move(names));
}

/// Two modules A = {a, b, c} and B = {d, e, f}; intra-edges (a,b), (b,c),
/// (d,e), (e,f); inter-edges (c,d) and (b,f). The running example used
/// throughout the tests: 8 missing intra pairs, one over-coupled module pair.
inline ProjectState canonical_fixture() {
    auto partition = std::make_shared<const ModulePartition>(
        std::vector<int>{0, 0, 0, 1, 1, 1}, 2, std::vector<std::string>{"A", "B"});
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {2, 3}, {1, 5}};
    return ProjectState(std::move(partition), edges,
                        std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
}

/// The canonical fixture with the extra reverse inter-edge (f, b).
inline ProjectState canonical_fixture_plus_fb() {
    return canonical_fixture().with_edge_added(Edge{5, 1});
}

/// Small random state for property tests: n vertices over k modules with a
/// random edge subset, all drawn from the given seed.
inline ProjectState random_state(int n, int k, std::uint64_t seed) {
    InstanceSpec spec;
    spec.n_classes = n;
    spec.n_modules = k;
    return generate_instance(spec, seed);
}

}  // namespace recoup::testing
