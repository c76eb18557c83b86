#include "recoup/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace recoup {
namespace {

using nlohmann::ordered_json;

template <typename F>
void parallel_for(std::size_t count, int jobs, F&& body) {
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j)
        workers.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
        });
    for (auto& w : workers) w.join();
}

std::string trimmed_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

ordered_json sweep_to_json(const SweepConfig& sweep) {
    ordered_json j;
    j["alphas"] = sweep.alphas;
    j["heuristics"] = sweep.heuristics;
    auto algorithms = ordered_json::array();
    for (const auto& [name, weight] : sweep.algorithms)
        algorithms.push_back(ordered_json{{"algorithm", name}, {"weight", weight}});
    j["algorithms"] = std::move(algorithms);
    j["repair"] = sweep.repair_enabled;
    if (sweep.max_expansions) j["max_expansions"] = *sweep.max_expansions;
    if (sweep.max_seconds) j["max_seconds"] = *sweep.max_seconds;
    j["jobs"] = sweep.jobs;
    return j;
}

struct GroupKey {
    std::string alpha, heuristic, algorithm;
    int weight;
    bool repair;
    friend bool operator<(const GroupKey& a, const GroupKey& b) {
        return std::tie(a.alpha, a.heuristic, a.algorithm, a.weight, a.repair) <
               std::tie(b.alpha, b.heuristic, b.algorithm, b.weight, b.repair);
    }
};

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0;
    const double h = (static_cast<double>(sorted.size()) - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void RunConfig::validate() const {
    if (algorithm != "astar" && algorithm != "wastar")
        throw InputError("unknown algorithm '" + algorithm + "' (expected astar|wastar)");
    if (weight < 1) throw InputError("weight must be >= 1");
    if (algorithm == "astar" && weight != 1)
        throw InputError("astar runs at weight 1; use --algorithm wastar for weights > 1");
    heuristic_from_name(heuristic);
    Alpha::parse(alpha);
    if (max_seconds && *max_seconds < 0) throw InputError("max-seconds must be non-negative");
}

ResultRecord run_instance(const std::string& instance_id, const ProjectState& instance,
                          const RunConfig& config) {
    ResultRecord record;
    record.instance_id = instance_id;
    record.alpha = config.alpha;
    record.heuristic = config.heuristic;
    record.algorithm = config.algorithm;
    record.weight = config.weight;
    record.repair_enabled = config.repair_enabled;

    try {
        config.validate();
        RefactorProblem problem(instance, Alpha::parse(config.alpha));
        RefactorHeuristic heuristic(heuristic_from_name(config.heuristic), problem);
        SearchLimits limits{config.max_expansions, config.max_seconds};
        auto outcome = best_first_search(problem, heuristic, config.weight, limits);

        record.status = search_status_name(outcome.status);
        record.expansions = outcome.expansions;
        record.generated = outcome.generated;
        record.wall_time_s = outcome.wall_seconds;
        if (!outcome.solved()) return record;

        record.cost = outcome.cost;
        for (const Action& a : outcome.plan) {
            const bool del = a.kind == ActionKind::DeleteInter;
            (del ? record.inter_deleted : record.intra_added)++;
            record.plan.push_back(PlanStep{del ? "del" : "add",
                                           instance.name_of(a.edge.from),
                                           instance.name_of(a.edge.to)});
        }

        const ProjectState& terminal = *outcome.terminal;
        record.violations_before = validity_violations(problem.original_closure(), terminal);
        record.valid_before_repair = record.violations_before == 0;
        record.violations_after = record.violations_before;
        record.valid_after_repair = record.valid_before_repair;

        if (config.repair_enabled) {
            const auto started = std::chrono::steady_clock::now();
            RepairOutcome repaired =
                repair(problem.original_closure(), terminal, instance.inter_count());
            record.repair_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            record.violations_after = repaired.violations_after;
            record.valid_after_repair = repaired.valid;
            record.repair_edges_added = static_cast<int>(repaired.added_edges.size());
            for (const Edge& e : repaired.added_edges)
                record.repair_added.emplace_back(instance.name_of(e.from),
                                                 instance.name_of(e.to));
        }
    } catch (const std::exception& e) {
        record.status = "error";
        record.error = e.what();
    }
    return record;
}

std::vector<RunConfig> SweepConfig::expand() const {
    std::vector<RunConfig> configs;
    for (const auto& alpha : alphas)
        for (const auto& heuristic : heuristics)
            for (const auto& [algorithm, weight] : algorithms) {
                RunConfig c;
                c.algorithm = algorithm;
                c.weight = weight;
                c.heuristic = heuristic;
                c.alpha = alpha;
                c.repair_enabled = repair_enabled;
                c.max_expansions = max_expansions;
                c.max_seconds = max_seconds;
                configs.push_back(std::move(c));
            }
    return configs;
}

std::vector<ResultRecord> run_suite(
    const std::vector<std::pair<std::string, ProjectState>>& instances,
    const SweepConfig& sweep) {
    const std::vector<RunConfig> configs = sweep.expand();
    struct Task {
        const RunConfig* config;
        const std::pair<std::string, ProjectState>* instance;
    };
    std::vector<Task> tasks;
    tasks.reserve(configs.size() * instances.size());
    for (const RunConfig& c : configs)
        for (const auto& inst : instances) tasks.push_back(Task{&c, &inst});

    std::vector<ResultRecord> records(tasks.size());
    parallel_for(tasks.size(), sweep.jobs, [&](std::size_t i) {
        records[i] = run_instance(tasks[i].instance->first, tasks[i].instance->second,
                                  *tasks[i].config);
    });
    return records;
}

std::string record_to_line(const ResultRecord& r, bool include_timing) {
    ordered_json j;
    j["type"] = "result";
    j["instance_id"] = r.instance_id;
    j["alpha"] = r.alpha;
    j["heuristic"] = r.heuristic;
    j["algorithm"] = r.algorithm;
    j["weight"] = r.weight;
    j["repair"] = r.repair_enabled;
    j["status"] = r.status;
    if (!r.error.empty()) j["error"] = r.error;
    j["expansions"] = r.expansions;
    j["generated"] = r.generated;
    if (include_timing) j["wall_time_s"] = r.wall_time_s;
    if (r.cost) {
        j["cost"] = *r.cost;
        j["inter_deleted"] = r.inter_deleted;
        j["intra_added"] = r.intra_added;
        j["valid_before_repair"] = r.valid_before_repair;
        j["valid_after_repair"] = r.valid_after_repair;
        j["violations_before"] = r.violations_before;
        j["violations_after"] = r.violations_after;
        j["repair_edges_added"] = r.repair_edges_added;
        if (include_timing) j["repair_time_s"] = r.repair_time_s;
        auto plan = ordered_json::array();
        for (const PlanStep& s : r.plan)
            plan.push_back(ordered_json::array({s.op, s.from, s.to}));
        j["plan"] = std::move(plan);
        auto added = ordered_json::array();
        for (const auto& [from, to] : r.repair_added)
            added.push_back(ordered_json::array({from, to}));
        j["repair_added"] = std::move(added);
    }
    return j.dump();
}

void write_results(const std::filesystem::path& path, const SweepConfig& sweep,
                   const std::vector<ResultRecord>& records) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    ordered_json header;
    header["type"] = "header";
    header["schema_version"] = kResultSchemaVersion;
    header["config"] = sweep_to_json(sweep);
    std::vector<std::string> ids;
    for (const auto& r : records)
        if (std::find(ids.begin(), ids.end(), r.instance_id) == ids.end())
            ids.push_back(r.instance_id);
    header["instances"] = ids;
    out << header.dump() << "\n";
    for (const auto& r : records) out << record_to_line(r) << "\n";
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open results file '" + path.string() + "'");
    std::vector<ResultRecord> records;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        const std::string type = j.value("type", "");
        if (type == "header") {
            const int version = j.value("schema_version", -1);
            if (version != kResultSchemaVersion)
                throw InputError(path.string() + ": schema version " +
                                 std::to_string(version) + " does not match expected " +
                                 std::to_string(kResultSchemaVersion));
            have_header = true;
            continue;
        }
        if (type != "result")
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": unknown record type '" + type + "'");
        ResultRecord r;
        r.instance_id = j.value("instance_id", "");
        r.alpha = j.value("alpha", "");
        r.heuristic = j.value("heuristic", "");
        r.algorithm = j.value("algorithm", "");
        r.weight = j.value("weight", 1);
        r.repair_enabled = j.value("repair", true);
        r.status = j.value("status", "");
        r.error = j.value("error", "");
        r.expansions = j.value("expansions", std::uint64_t{0});
        r.generated = j.value("generated", std::uint64_t{0});
        r.wall_time_s = j.value("wall_time_s", 0.0);
        if (j.contains("cost")) {
            r.cost = j["cost"].get<int>();
            r.inter_deleted = j.value("inter_deleted", 0);
            r.intra_added = j.value("intra_added", 0);
            r.valid_before_repair = j.value("valid_before_repair", false);
            r.valid_after_repair = j.value("valid_after_repair", false);
            r.violations_before = j.value("violations_before", 0);
            r.violations_after = j.value("violations_after", 0);
            r.repair_edges_added = j.value("repair_edges_added", 0);
            r.repair_time_s = j.value("repair_time_s", 0.0);
            for (const auto& step : j.value("plan", ordered_json::array()))
                r.plan.push_back(PlanStep{step[0].get<std::string>(), step[1].get<std::string>(),
                                          step[2].get<std::string>()});
            for (const auto& added : j.value("repair_added", ordered_json::array()))
                r.repair_added.emplace_back(added[0].get<std::string>(),
                                            added[1].get<std::string>());
        }
        records.push_back(std::move(r));
    }
    if (!have_header)
        throw InputError(path.string() + ": missing header line with schema version");
    return records;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records) {
    std::vector<GroupKey> order;
    std::map<GroupKey, std::vector<const ResultRecord*>> groups;
    for (const auto& r : records) {
        GroupKey key{r.alpha, r.heuristic, r.algorithm, r.weight, r.repair_enabled};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }
    std::vector<AggregateRow> rows;
    for (const GroupKey& key : order) {
        const auto& group = groups[key];
        AggregateRow row;
        row.alpha = key.alpha;
        row.heuristic = key.heuristic;
        row.algorithm = key.algorithm;
        row.weight = key.weight;
        row.repair_enabled = key.repair;
        row.instances = static_cast<int>(group.size());
        double sum_exp = 0, sum_time = 0, sum_cost = 0, sum_del = 0, sum_add = 0;
        double sum_radd = 0, sum_net = 0;
        int valid_before = 0, valid_after = 0;
        for (const ResultRecord* r : group) {
            if (!r->solved()) continue;
            ++row.solved;
            sum_exp += static_cast<double>(r->expansions);
            sum_time += r->wall_time_s;
            sum_cost += *r->cost;
            sum_del += r->inter_deleted;
            sum_add += r->intra_added;
            sum_radd += r->repair_edges_added;
            sum_net += r->inter_deleted - r->repair_edges_added;
            valid_before += r->valid_before_repair;
            valid_after += r->valid_after_repair;
        }
        if (row.solved > 0) {
            const double k = row.solved;
            row.mean_expansions = sum_exp / k;
            row.mean_time_s = sum_time / k;
            row.mean_cost = sum_cost / k;
            row.mean_inter_deleted = sum_del / k;
            row.mean_intra_added = sum_add / k;
            row.mean_repair_added = sum_radd / k;
            row.mean_net_inter_deleted = sum_net / k;
            row.valid_before_rate = valid_before / k;
            row.valid_after_rate = valid_after / k;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_table(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-9s %-7s %3s %5s %6s %12s %10s %9s %7s %7s %9s %9s\n",
                  "alpha", "heuristic", "alg", "w", "inst", "solved", "expansions", "time_s",
                  "cost", "v_pre", "v_post", "deleted", "net_del");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line,
                      "%-6s %-9s %-7s %3d %5d %6d %12.2f %10.4f %9.2f %7.2f %7.2f %9.2f %9.2f\n",
                      r.alpha.c_str(), r.heuristic.c_str(), r.algorithm.c_str(), r.weight,
                      r.instances, r.solved, r.mean_expansions, r.mean_time_s, r.mean_cost,
                      r.valid_before_rate, r.valid_after_rate, r.mean_inter_deleted,
                      r.mean_net_inter_deleted);
        out << line;
    }
    return out.str();
}

std::string render_summary_csv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "schema_version,alpha,heuristic,algorithm,weight,repair,instances,solved,"
           "mean_expansions,mean_time_s,mean_cost,valid_before_rate,valid_after_rate,"
           "mean_inter_deleted,mean_intra_added,mean_repair_added,mean_net_inter_deleted\n";
    for (const auto& r : rows) {
        out << kResultSchemaVersion << ',' << r.alpha << ',' << r.heuristic << ','
            << r.algorithm << ',' << r.weight << ',' << (r.repair_enabled ? 1 : 0) << ','
            << r.instances << ',' << r.solved << ',' << trimmed_double(r.mean_expansions)
            << ',' << trimmed_double(r.mean_time_s) << ',' << trimmed_double(r.mean_cost)
            << ',' << trimmed_double(r.valid_before_rate) << ','
            << trimmed_double(r.valid_after_rate) << ','
            << trimmed_double(r.mean_inter_deleted) << ','
            << trimmed_double(r.mean_intra_added) << ','
            << trimmed_double(r.mean_repair_added) << ','
            << trimmed_double(r.mean_net_inter_deleted) << '\n';
    }
    return out.str();
}

std::vector<ExpansionDistribution> expansion_distributions(
    const std::vector<ResultRecord>& records) {
    std::vector<GroupKey> order;
    std::map<GroupKey, std::vector<double>> groups;
    for (const auto& r : records) {
        if (!r.solved()) continue;
        GroupKey key{r.alpha, r.heuristic, r.algorithm, r.weight, r.repair_enabled};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(static_cast<double>(r.expansions));
    }
    std::vector<ExpansionDistribution> rows;
    for (const GroupKey& key : order) {
        auto& values = groups[key];
        std::sort(values.begin(), values.end());
        ExpansionDistribution d;
        d.alpha = key.alpha;
        d.heuristic = key.heuristic;
        d.algorithm = key.algorithm;
        d.weight = key.weight;
        d.count = static_cast<int>(values.size());
        d.min = values.front();
        d.max = values.back();
        d.q1 = quantile(values, 0.25);
        d.median = quantile(values, 0.5);
        d.q3 = quantile(values, 0.75);
        const double iqr = d.q3 - d.q1;
        const double lo = d.q1 - 1.5 * iqr;
        const double hi = d.q3 + 1.5 * iqr;
        d.whisker_low = d.max;
        d.whisker_high = d.min;
        for (double v : values) {
            if (v >= lo && v < d.whisker_low) d.whisker_low = v;
            if (v <= hi && v > d.whisker_high) d.whisker_high = v;
            if (v < lo || v > hi) d.outliers.push_back(v);
        }
        rows.push_back(std::move(d));
    }
    return rows;
}

std::string render_distribution_csv(const std::vector<ExpansionDistribution>& rows) {
    std::ostringstream out;
    out << "schema_version,alpha,heuristic,algorithm,weight,count,min,q1,median,q3,max,"
           "whisker_low,whisker_high,outliers\n";
    for (const auto& r : rows) {
        out << kResultSchemaVersion << ',' << r.alpha << ',' << r.heuristic << ','
            << r.algorithm << ',' << r.weight << ',' << r.count << ','
            << trimmed_double(r.min) << ',' << trimmed_double(r.q1) << ','
            << trimmed_double(r.median) << ',' << trimmed_double(r.q3) << ','
            << trimmed_double(r.max) << ',' << trimmed_double(r.whisker_low) << ','
            << trimmed_double(r.whisker_high) << ',';
        for (std::size_t i = 0; i < r.outliers.size(); ++i)
            out << (i ? ";" : "") << trimmed_double(r.outliers[i]);
        out << '\n';
    }
    return out.str();
}

SuggestOutcome suggest(const ProjectState& project, const RunConfig& config) {
    config.validate();
    SuggestOutcome out;
    RefactorProblem problem(project, Alpha::parse(config.alpha));
    RefactorHeuristic heuristic(heuristic_from_name(config.heuristic), problem);
    SearchLimits limits{config.max_expansions, config.max_seconds};
    auto outcome = best_first_search(problem, heuristic, config.weight, limits);

    out.status = search_status_name(outcome.status);
    out.expansions = outcome.expansions;
    out.wall_time_s = outcome.wall_seconds;
    out.coupling_before = project.inter_count();
    out.cohesion_before = project.intra_count();
    if (!outcome.solved()) return out;

    out.cost = outcome.cost;
    for (const Action& a : outcome.plan) {
        const std::string arrow =
            project.name_of(a.edge.from) + " -> " + project.name_of(a.edge.to);
        if (a.kind == ActionKind::DeleteInter)
            out.suggestions.push_back("REMOVE dependency " + arrow);
        else
            out.suggestions.push_back("ADD dependency " + arrow + " (cohesion)");
    }

    ProjectState final_state = *outcome.terminal;
    out.valid_before = validity_violations(problem.original_closure(), final_state) == 0;
    out.valid_after = out.valid_before;
    if (config.repair_enabled) {
        RepairOutcome repaired =
            repair(problem.original_closure(), final_state, project.inter_count());
        for (const Edge& e : repaired.added_edges)
            out.suggestions.push_back("ADD dependency " + project.name_of(e.from) + " -> " +
                                      project.name_of(e.to) + " (repair)");
        out.valid_after = repaired.valid;
        final_state = std::move(repaired.state);
    }
    out.coupling_after = final_state.inter_count();
    out.cohesion_after = final_state.intra_count();
    return out;
}

std::string render_suggestions(const SuggestOutcome& out) {
    std::ostringstream text;
    if (!out.solved()) {
        text << "no suggestions: search ended with status '" << out.status << "' after "
             << out.expansions << " expansions (" << out.wall_time_s << " s)\n";
        return text.str();
    }
    if (out.suggestions.empty()) {
        text << "no changes: project already satisfies the goal\n";
    } else {
        int i = 0;
        for (const auto& s : out.suggestions) text << ++i << ". " << s << "\n";
    }
    text << "coupling (inter-edges): " << out.coupling_before << " -> " << out.coupling_after
         << "\n";
    text << "cohesion (intra-edges): " << out.cohesion_before << " -> " << out.cohesion_after
         << "\n";
    text << "dependencies preserved: " << (out.valid_after ? "yes" : "no");
    if (out.valid_after != out.valid_before)
        text << (out.valid_before ? " (before repair: yes)" : " (before repair: no)");
    text << "\n";
    return text.str();
}

}  // namespace recoup
