#pragma once

#include <vector>

#include "recoup/graph.hpp"

namespace recoup {

struct RepairOutcome {
    ProjectState state;
    std::vector<Edge> added_edges;
    bool valid = false;
    int violations_before = 0;
    int violations_after = 0;
    /// Inter-edges removed by the plan minus the edges added back here,
    /// relative to the given baseline inter-edge count.
    int inter_deleted_net = 0;
};

/// Post-search repair: walk the solution's inter-edges in lexicographic
/// order, tentatively add each one's reverse, and keep it only when the
/// violation count strictly decreases. Stops as soon as the state is valid.
/// `original_inter_edges` is the inter-edge count of the unrefactored project.
RepairOutcome repair(const DependencyClosure& original, const ProjectState& solution,
                     int original_inter_edges);

}  // namespace recoup
