#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "recoup/errors.hpp"

namespace recoup {

struct SearchLimits {
    std::optional<std::uint64_t> max_expansions;
    std::optional<double> max_seconds;
};

enum class SearchStatus { Solved, Unsolvable, ExpansionLimit, TimeLimit };

inline std::string search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Solved: return "solved";
        case SearchStatus::Unsolvable: return "unsolvable";
        case SearchStatus::ExpansionLimit: return "expansion-limit";
        case SearchStatus::TimeLimit: return "time-limit";
    }
    return "?";
}

template <typename State, typename ActionT>
struct SearchOutcome {
    SearchStatus status = SearchStatus::Unsolvable;
    std::vector<ActionT> plan;
    int cost = 0;
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    /// Pops whose key was already closed with a better g; stays zero for
    /// consistent heuristics at weight 1.
    std::uint64_t reopen_requests = 0;
    double wall_seconds = 0.0;
    std::optional<State> terminal;

    bool solved() const { return status == SearchStatus::Solved; }
};

/// Root-to-goal action sequence from parent/via tables; parent[root] must be
/// the sentinel. Throws InternalError if the chain does not terminate.
template <typename ActionT>
std::vector<ActionT> reconstruct_action_path(const std::vector<std::uint32_t>& parent,
                                             const std::vector<ActionT>& via,
                                             std::uint32_t goal_index,
                                             std::uint32_t root_sentinel = UINT32_MAX) {
    std::vector<ActionT> plan;
    std::uint32_t at = goal_index;
    std::size_t steps = 0;
    while (parent[at] != root_sentinel) {
        plan.push_back(via[at]);
        at = parent[at];
        if (++steps > parent.size())
            throw InternalError("cycle in search parent chain during plan reconstruction");
    }
    std::reverse(plan.begin(), plan.end());
    return plan;
}

/// Best-first search over a Problem with unit-cost actions: A* at weight 1,
/// Weighted A* (f = g + w*h) at weight > 1. Duplicate states are detected by
/// Problem::key; no node is expanded twice and closed nodes are never
/// re-opened. Ties on f prefer higher g, then first-generated order.
///
/// Problem requirements:
///   types State, ActionT, Key, KeyHash
///   const State& initial();  bool is_goal(const State&);
///   key(const State&) -> Key (hashable, equality-comparable);
///   expand(const State&, emit) calling emit(const ActionT&, State&&).
/// Heuristic requirements:
///   int at_root(const State&);
///   int at_child(const State& parent, int parent_h, const ActionT&, const State& child).
template <typename Problem, typename Heuristic>
SearchOutcome<typename Problem::State, typename Problem::ActionT> best_first_search(
    const Problem& problem, const Heuristic& heuristic, int weight = 1,
    const SearchLimits& limits = {},
    const std::function<void(const typename Problem::State&, long long, int, int)>&
        on_expand = nullptr) {
    using State = typename Problem::State;
    using ActionT = typename Problem::ActionT;
    using Key = typename Problem::Key;
    using Clock = std::chrono::steady_clock;

    if (weight < 1) throw InputError("search weight must be >= 1");

    struct Node {
        State state;
        ActionT via{};
        std::uint32_t parent = UINT32_MAX;
        int g = 0;
        int h = 0;
        bool closed = false;
        Node(State s, ActionT a, std::uint32_t p, int g_, int h_)
            : state(std::move(s)), via(a), parent(p), g(g_), h(h_) {}
    };
    struct HeapItem {
        long long f;
        int g;
        std::uint64_t seq;
        std::uint32_t id;
    };
    struct Worse {
        bool operator()(const HeapItem& a, const HeapItem& b) const {
            if (a.f != b.f) return a.f > b.f;
            if (a.g != b.g) return a.g < b.g;
            return a.seq > b.seq;
        }
    };

    SearchOutcome<State, ActionT> out;
    const auto started = Clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(Clock::now() - started).count();
    };
    const auto finish = [&](SearchStatus status) {
        out.status = status;
        out.wall_seconds = elapsed();
        return out;
    };

    std::deque<Node> pool;  // stable references while expand() emits children
    std::unordered_map<Key, std::uint32_t, typename Problem::KeyHash> best;
    std::priority_queue<HeapItem, std::vector<HeapItem>, Worse> open;
    std::uint64_t seq = 0;

    const State& root = problem.initial();
    pool.emplace_back(root, ActionT{}, UINT32_MAX, 0, heuristic.at_root(root));
    best.emplace(problem.key(root), 0);
    open.push(HeapItem{static_cast<long long>(weight) * pool[0].h, 0, seq++, 0});
    out.generated = 1;

    while (!open.empty()) {
        const HeapItem item = open.top();
        open.pop();
        Node& node = pool[item.id];
        if (node.closed || node.g != item.g) continue;  // stale entry

        if (limits.max_expansions && out.expansions >= *limits.max_expansions)
            return finish(SearchStatus::ExpansionLimit);
        if (limits.max_seconds && elapsed() >= *limits.max_seconds)
            return finish(SearchStatus::TimeLimit);

        node.closed = true;
        ++out.expansions;
        if (on_expand) on_expand(node.state, item.f, node.g, node.h);

        if (problem.is_goal(node.state)) {
            std::vector<std::uint32_t> parents(pool.size());
            std::vector<ActionT> vias(pool.size());
            for (std::size_t i = 0; i < pool.size(); ++i) {
                parents[i] = pool[i].parent;
                vias[i] = pool[i].via;
            }
            out.plan = reconstruct_action_path(parents, vias, item.id);
            out.cost = node.g;
            out.terminal = node.state;
            return finish(SearchStatus::Solved);
        }

        const int parent_g = node.g;
        const int parent_h = node.h;
        const std::uint32_t parent_id = item.id;
        problem.expand(node.state, [&](const ActionT& action, State&& child) {
            ++out.generated;
            const int g = parent_g + 1;
            const int h =
                heuristic.at_child(pool[parent_id].state, parent_h, action, child);
            Key key = problem.key(child);
            auto [it, inserted] = best.try_emplace(std::move(key), 0);
            if (inserted) {
                pool.emplace_back(std::move(child), action, parent_id, g, h);
                it->second = static_cast<std::uint32_t>(pool.size() - 1);
                open.push(HeapItem{g + static_cast<long long>(weight) * h, g, seq++,
                                   it->second});
                return;
            }
            Node& seen = pool[it->second];
            if (g >= seen.g) return;
            if (seen.closed) {
                ++out.reopen_requests;  // recorded, never re-opened
                return;
            }
            seen.g = g;
            seen.parent = parent_id;
            seen.via = action;
            open.push(
                HeapItem{g + static_cast<long long>(weight) * seen.h, g, seq++, it->second});
        });
    }
    return finish(SearchStatus::Unsolvable);
}

}  // namespace recoup
