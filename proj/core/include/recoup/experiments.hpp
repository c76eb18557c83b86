#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recoup/graph.hpp"
#include "recoup/problem.hpp"
#include "recoup/repair.hpp"
#include "recoup/search.hpp"

namespace recoup {

inline constexpr int kResultSchemaVersion = 1;

/// One search configuration; bench sweeps are cross products of these fields.
struct RunConfig {
    std::string algorithm = "astar";  // astar | wastar
    int weight = 1;
    std::string heuristic = "additive";
    std::string alpha = "0.5";
    bool repair_enabled = true;
    std::optional<std::uint64_t> max_expansions;
    std::optional<double> max_seconds;

    void validate() const;
};

struct PlanStep {
    std::string op;  // "del" | "add"
    std::string from;
    std::string to;

    friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct ResultRecord {
    std::string instance_id;
    std::string alpha;
    std::string heuristic;
    std::string algorithm;
    int weight = 1;
    bool repair_enabled = true;

    std::string status;  // solved | unsolvable | expansion-limit | time-limit | error
    std::string error;
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    double wall_time_s = 0.0;

    std::optional<int> cost;
    int inter_deleted = 0;
    int intra_added = 0;
    bool valid_before_repair = false;
    bool valid_after_repair = false;
    int violations_before = 0;
    int violations_after = 0;
    int repair_edges_added = 0;
    double repair_time_s = 0.0;

    std::vector<PlanStep> plan;
    std::vector<std::pair<std::string, std::string>> repair_added;

    bool solved() const { return status == "solved"; }
};

/// Runs one instance under one configuration; never throws, failures land in
/// the record's status/error fields.
ResultRecord run_instance(const std::string& instance_id, const ProjectState& instance,
                          const RunConfig& config);

struct SweepConfig {
    std::vector<std::string> alphas{"0.25", "0.5", "0.75", "1.0"};
    std::vector<std::string> heuristics{"zero", "coupling", "cohesion", "additive"};
    /// (algorithm, weight) pairs; astar implies weight 1.
    std::vector<std::pair<std::string, int>> algorithms{{"astar", 1}};
    bool repair_enabled = true;
    std::optional<std::uint64_t> max_expansions;
    std::optional<double> max_seconds;
    int jobs = 1;

    std::vector<RunConfig> expand() const;
};

/// One record per (config, instance), ordered by configuration then instance
/// id regardless of worker completion order.
std::vector<ResultRecord> run_suite(
    const std::vector<std::pair<std::string, ProjectState>>& instances,
    const SweepConfig& sweep);

/// Line-delimited results: a header object carrying the schema version, the
/// sweep, and the instance ids, then one object per record.
void write_results(const std::filesystem::path& path, const SweepConfig& sweep,
                   const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

/// Record serialization used for both files and determinism checks;
/// `include_timing` false drops the wall-time fields.
std::string record_to_line(const ResultRecord& record, bool include_timing = true);

struct AggregateRow {
    std::string alpha;
    std::string heuristic;
    std::string algorithm;
    int weight = 1;
    bool repair_enabled = true;
    int instances = 0;
    int solved = 0;
    double mean_expansions = 0;
    double mean_time_s = 0;
    double mean_cost = 0;
    double valid_before_rate = 0;
    double valid_after_rate = 0;
    double mean_inter_deleted = 0;
    double mean_intra_added = 0;
    double mean_repair_added = 0;
    double mean_net_inter_deleted = 0;
};

/// Means over solved records, grouped by configuration, in first-seen order.
std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records);
std::string render_table(const std::vector<AggregateRow>& rows);
std::string render_summary_csv(const std::vector<AggregateRow>& rows);

struct ExpansionDistribution {
    std::string alpha;
    std::string heuristic;
    std::string algorithm;
    int weight = 1;
    int count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    double whisker_low = 0, whisker_high = 0;
    std::vector<double> outliers;
};

/// Box-plot statistics of node expansions per configuration. Quartiles use
/// linear interpolation between order statistics; whiskers extend to the
/// farthest points within 1.5 IQR of the quartiles.
std::vector<ExpansionDistribution> expansion_distributions(
    const std::vector<ResultRecord>& records);
std::string render_distribution_csv(const std::vector<ExpansionDistribution>& rows);

struct SuggestOutcome {
    std::string status;
    std::vector<std::string> suggestions;
    int cost = 0;
    std::uint64_t expansions = 0;
    double wall_time_s = 0;
    int coupling_before = 0, coupling_after = 0;
    int cohesion_before = 0, cohesion_after = 0;
    bool valid_before = false, valid_after = false;

    bool solved() const { return status == "solved"; }
};

/// Search plus optional repair, rendered as an ordered, human-readable list
/// of dependency edits.
SuggestOutcome suggest(const ProjectState& project, const RunConfig& config);
std::string render_suggestions(const SuggestOutcome& outcome);

}  // namespace recoup
