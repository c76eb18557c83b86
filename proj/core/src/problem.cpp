#include "recoup/problem.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace recoup {
namespace {

int module_pair_id(int m1, int m2, int k) {
    if (m1 > m2) std::swap(m1, m2);
    return m1 * k - m1 * (m1 + 1) / 2 + (m2 - m1 - 1);
}

/// Per-pair inter-edge counts for the pairs that actually have edges,
/// in one pass over the edge set.
struct InterPairCounts {
    std::vector<int> count;    // indexed by module_pair_id
    std::vector<int> touched;  // pair ids with count > 0
    std::vector<std::pair<std::size_t, int>> inter_edges;  // (pair slot, pair id), lex order

    explicit InterPairCounts(const ProjectState& state) {
        const auto& p = state.partition();
        const int k = p.module_count();
        count.assign(static_cast<std::size_t>(k) * (k - 1) / 2, 0);
        state.for_each_edge([&](Edge e) {
            const int m1 = p.module_of(e.from);
            const int m2 = p.module_of(e.to);
            if (m1 == m2) return;
            const int id = module_pair_id(m1, m2, k);
            if (count[static_cast<std::size_t>(id)]++ == 0) touched.push_back(id);
            inter_edges.emplace_back(pair_index(e.from, e.to, state.vertex_count()), id);
        });
    }
};

}  // namespace

Alpha Alpha::parse(const std::string& text) {
    std::size_t i = 0;
    std::int64_t whole = 0;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > 1) throw InputError("alpha must be within [0, 1], got '" + text + "'");
        any_digit = true;
        ++i;
    }
    std::int64_t num = whole;
    std::int64_t den = 1;
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (++digits > 9) throw InputError("alpha '" + text + "' has too many decimal places (max 9)");
            num = num * 10 + (text[i] - '0');
            den *= 10;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit || i != text.size())
        throw InputError("alpha must be a decimal in [0, 1], got '" + text + "'");
    if (num > den) throw InputError("alpha must be within [0, 1], got '" + text + "'");
    const std::int64_t g = std::gcd(num, den);
    return Alpha(num / g, den / g, text);
}

RefactorProblem::RefactorProblem(ProjectState initial, Alpha alpha)
    : initial_(std::move(initial)),
      alpha_(std::move(alpha)),
      max_intra_(max_intra_edges(initial_)),
      cohesion_threshold_(static_cast<int>(alpha_.ceil_times(max_intra_))),
      original_closure_(transitive_closure(initial_)) {
    const int n = initial_.vertex_count();
    const auto& p = initial_.partition();
    for (std::size_t slot = 0; slot < ordered_pair_count(n); ++slot) {
        const Edge e = pair_of_index(slot, n);
        if (p.module_of(e.from) == p.module_of(e.to)) intra_pair_slots_.push_back(slot);
    }
}

bool RefactorProblem::is_goal(const ProjectState& state) const {
    if (state.intra_count() < cohesion_threshold_) return false;
    return coupling_heuristic(state) == 0;
}

std::vector<Action> RefactorProblem::applicable_actions(const ProjectState& state) const {
    std::vector<Action> actions;
    const auto& bits = state.edge_bits();
    for (std::size_t slot : intra_pair_slots_) {
        if (!bits.test(slot)) {
            actions.push_back(
                Action{ActionKind::AddIntra, pair_of_index(slot, state.vertex_count())});
            break;
        }
    }
    InterPairCounts counts(state);
    for (const auto& [slot, pair_id] : counts.inter_edges) {
        if (counts.count[static_cast<std::size_t>(pair_id)] >= 2) {
            actions.push_back(
                Action{ActionKind::DeleteInter, pair_of_index(slot, state.vertex_count())});
            break;
        }
    }
    return actions;
}

std::vector<Action> RefactorProblem::full_actions(const ProjectState& state) const {
    std::vector<Action> actions;
    const auto& bits = state.edge_bits();
    for (std::size_t slot : intra_pair_slots_)
        if (!bits.test(slot))
            actions.push_back(
                Action{ActionKind::AddIntra, pair_of_index(slot, state.vertex_count())});
    state.for_each_edge([&](Edge e) {
        if (classify_edge(state, e) == EdgeClass::Inter)
            actions.push_back(Action{ActionKind::DeleteInter, e});
    });
    return actions;
}

int zero_heuristic(const ProjectState&) { return 0; }

int coupling_heuristic(const ProjectState& state) {
    InterPairCounts counts(state);
    int h = 0;
    for (int id : counts.touched) h += counts.count[static_cast<std::size_t>(id)] - 1;
    return h;
}

int cohesion_heuristic(const RefactorProblem& problem, const ProjectState& state) {
    return std::max(0, problem.cohesion_threshold() - state.intra_count());
}

int additive_heuristic(const RefactorProblem& problem, const ProjectState& state) {
    return coupling_heuristic(state) + cohesion_heuristic(problem, state);
}

HeuristicKind heuristic_from_name(const std::string& name) {
    if (name == "zero") return HeuristicKind::Zero;
    if (name == "coupling") return HeuristicKind::Coupling;
    if (name == "cohesion") return HeuristicKind::Cohesion;
    if (name == "additive") return HeuristicKind::Additive;
    throw InputError("unknown heuristic '" + name +
                     "' (expected zero|coupling|cohesion|additive)");
}

std::string heuristic_name(HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::Zero: return "zero";
        case HeuristicKind::Coupling: return "coupling";
        case HeuristicKind::Cohesion: return "cohesion";
        case HeuristicKind::Additive: return "additive";
    }
    return "?";
}

int RefactorHeuristic::at_root(const ProjectState& state) const {
    switch (kind_) {
        case HeuristicKind::Zero: return 0;
        case HeuristicKind::Coupling: return coupling_heuristic(state);
        case HeuristicKind::Cohesion: return cohesion_heuristic(*problem_, state);
        case HeuristicKind::Additive: return additive_heuristic(*problem_, state);
    }
    return 0;
}

int RefactorHeuristic::at_child(const ProjectState& parent, int parent_h,
                                const Action& action, const ProjectState&) const {
    if (kind_ == HeuristicKind::Zero) return 0;

    // An add only moves the cohesion term (down by one while below the
    // threshold); a delete only moves the coupling term (down by one while
    // its module pair is over-coupled).
    int delta = 0;
    if (action.kind == ActionKind::AddIntra) {
        if (kind_ != HeuristicKind::Coupling &&
            parent.intra_count() < problem_->cohesion_threshold())
            delta = -1;
    } else {
        if (kind_ != HeuristicKind::Cohesion) {
            const auto& p = parent.partition();
            const int m1 = p.module_of(action.edge.from);
            const int m2 = p.module_of(action.edge.to);
            if (count_inter_between(parent, m1, m2) >= 2) delta = -1;
        }
    }
    return parent_h + delta;
}

}  // namespace recoup
