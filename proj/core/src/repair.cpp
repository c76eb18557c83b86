#include "recoup/repair.hpp"

namespace recoup {

RepairOutcome repair(const DependencyClosure& original, const ProjectState& solution,
                     int original_inter_edges) {
    if (original.vertex_count() != solution.vertex_count())
        throw InputError("closure and solution cover different vertex sets");

    RepairOutcome out{solution, {}, false, 0, 0, 0};
    out.violations_before = validity_violations(original, solution);
    out.violations_after = out.violations_before;

    if (out.violations_before > 0) {
        std::vector<Edge> candidates;
        solution.for_each_edge([&](Edge e) {
            if (classify_edge(solution, e) == EdgeClass::Inter) candidates.push_back(e);
        });
        for (const Edge& e : candidates) {
            const Edge reverse{e.to, e.from};
            if (out.state.has_edge(reverse.from, reverse.to)) continue;
            ProjectState tentative = out.state.with_edge_added(reverse);
            const int violations = validity_violations(original, tentative);
            if (violations < out.violations_after) {
                out.state = std::move(tentative);
                out.violations_after = violations;
                out.added_edges.push_back(reverse);
                if (violations == 0) break;
            }
        }
    }

    out.valid = out.violations_after == 0;
    out.inter_deleted_net = (original_inter_edges - solution.inter_count()) -
                            static_cast<int>(out.added_edges.size());
    return out;
}

}  // namespace recoup
