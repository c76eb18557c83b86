#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "recoup/experiments.hpp"
#include "recoup/instance_gen.hpp"

using namespace recoup;
using namespace recoup::testing;
namespace fs = std::filesystem;

namespace {

std::vector<std::pair<std::string, ProjectState>> small_instances(int count,
                                                                  std::uint64_t seed) {
    InstanceSpec spec;
    spec.n_classes = 8;
    spec.n_modules = 4;
    spec.seed = seed;
    spec.count = count;
    return generate_batch(spec);
}

Edge edge_by_names(const ProjectState& state, const std::string& from,
                   const std::string& to) {
    Edge e{-1, -1};
    for (int v = 0; v < state.vertex_count(); ++v) {
        if (state.name_of(v) == from) e.from = v;
        if (state.name_of(v) == to) e.to = v;
    }
    REQUIRE(e.from >= 0);
    REQUIRE(e.to >= 0);
    return e;
}

/// Replays a record's plan and repair additions and checks the stored
/// metrics against the rebuilt states.
void check_replay(const ProjectState& instance, const ResultRecord& record) {
    REQUIRE(record.solved());
    RefactorProblem problem(instance, Alpha::parse(record.alpha));
    ProjectState state = instance;
    int deletes = 0, adds = 0;
    for (const PlanStep& step : record.plan) {
        const Edge e = edge_by_names(state, step.from, step.to);
        if (step.op == "del") {
            state = apply_action(state, Action{ActionKind::DeleteInter, e});
            ++deletes;
        } else {
            state = apply_action(state, Action{ActionKind::AddIntra, e});
            ++adds;
        }
    }
    CHECK(*record.cost == static_cast<int>(record.plan.size()));
    CHECK(record.inter_deleted == deletes);
    CHECK(record.intra_added == adds);
    CHECK(problem.is_goal(state));
    CHECK((validity_violations(problem.original_closure(), state) == 0) ==
          record.valid_before_repair);
    for (const auto& [from, to] : record.repair_added)
        state = state.with_edge_added(edge_by_names(state, from, to));
    CHECK((validity_violations(problem.original_closure(), state) == 0) ==
          record.valid_after_repair);
}

}  // namespace

TEST_CASE("run_instance produces a complete record") {
    const auto instances = small_instances(1, 11);
    RunConfig config;
    config.alpha = "1.0";
    const ResultRecord record =
        run_instance(instances[0].first, instances[0].second, config);
    REQUIRE(record.solved());
    CHECK(record.expansions > 0);
    CHECK(*record.cost == static_cast<int>(record.plan.size()));
    CHECK(record.valid_after_repair >= record.valid_before_repair);
    check_replay(instances[0].second, record);
}

TEST_CASE("an already-goal instance yields a zero-cost record") {
    const ProjectState tiny = make_state({0, 1}, 2, {{0, 1}});
    RunConfig config;
    config.alpha = "1.0";
    const ResultRecord record = run_instance("tiny", tiny, config);
    REQUIRE(record.solved());
    CHECK(*record.cost == 0);
    CHECK(record.plan.empty());
    CHECK(record.expansions == 1);
    CHECK(record.valid_before_repair);
    CHECK(record.repair_edges_added == 0);
}

TEST_CASE("invalid configurations are rejected") {
    RunConfig config;
    config.algorithm = "greedy";
    CHECK_THROWS_AS(config.validate(), InputError);
    config.algorithm = "astar";
    config.weight = 5;
    CHECK_THROWS_AS(config.validate(), InputError);
    config.algorithm = "wastar";
    CHECK_NOTHROW(config.validate());
    config.weight = 0;
    CHECK_THROWS_AS(config.validate(), InputError);
    config.weight = 1;
    config.heuristic = "magic";
    CHECK_THROWS_AS(config.validate(), InputError);
    config.heuristic = "additive";
    config.alpha = "2.0";
    CHECK_THROWS_AS(config.validate(), InputError);
}

TEST_CASE("run_suite orders records by configuration then instance") {
    const auto instances = small_instances(3, 21);
    SweepConfig sweep;
    sweep.alphas = {"0.5", "1.0"};
    sweep.heuristics = {"additive", "zero"};
    const auto records = run_suite(instances, sweep);
    REQUIRE(records.size() == 2 * 2 * 3);
    CHECK(records[0].alpha == "0.5");
    CHECK(records[0].heuristic == "additive");
    CHECK(records[0].instance_id == instances[0].first);
    CHECK(records[1].instance_id == instances[1].first);
    CHECK(records[5].heuristic == "zero");
    CHECK(records[6].alpha == "1.0");
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(records[i].instance_id == instances[i % 3].first);
}

TEST_CASE("suite records replay to their stored metrics") {
    const auto instances = small_instances(4, 33);
    SweepConfig sweep;
    sweep.alphas = {"0.75"};
    sweep.heuristics = {"additive"};
    const auto records = run_suite(instances, sweep);
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < records.size(); ++i)
        check_replay(instances[i].second, records[i]);
}

TEST_CASE("parallel execution matches single-threaded results") {
    const auto instances = small_instances(6, 55);
    SweepConfig sweep;
    sweep.alphas = {"1.0"};
    sweep.heuristics = {"additive", "coupling"};
    sweep.jobs = 1;
    const auto serial = run_suite(instances, sweep);
    sweep.jobs = 4;
    const auto parallel = run_suite(instances, sweep);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(record_to_line(serial[i], false) == record_to_line(parallel[i], false));
    }
}

TEST_CASE("per-instance failures are recorded and the suite continues") {
    auto instances = small_instances(2, 77);
    SweepConfig sweep;
    sweep.alphas = {"1.0"};
    sweep.heuristics = {"zero"};
    sweep.max_expansions = 1;  // guarantees an expansion-limit status
    const auto records = run_suite(instances, sweep);
    REQUIRE(records.size() == 2);
    for (const auto& r : records) {
        CHECK(r.status == "expansion-limit");
        CHECK_FALSE(r.cost.has_value());
    }
}

TEST_CASE("results survive a file round trip") {
    const auto instances = small_instances(3, 99);
    SweepConfig sweep;
    sweep.alphas = {"0.5"};
    sweep.heuristics = {"additive"};
    const auto records = run_suite(instances, sweep);

    const fs::path path = fs::temp_directory_path() / "recoup_results_test.jsonl";
    write_results(path, sweep, records);
    const auto loaded = read_results(path);
    REQUIRE(loaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(record_to_line(loaded[i]) == record_to_line(records[i]));
    fs::remove(path);
}

TEST_CASE("schema version mismatches are explicit errors") {
    const fs::path path = fs::temp_directory_path() / "recoup_bad_schema.jsonl";
    {
        std::ofstream out(path);
        out << R"({"type":"header","schema_version":999})" << "\n";
    }
    CHECK_THROWS_AS(read_results(path), InputError);
    {
        std::ofstream out(path);
        out << R"({"type":"result","instance_id":"x"})" << "\n";
    }
    CHECK_THROWS_AS(read_results(path), InputError);  // missing header
    fs::remove(path);
}

TEST_CASE("aggregates equal an independent recomputation") {
    const auto instances = small_instances(5, 123);
    SweepConfig sweep;
    sweep.alphas = {"0.5", "1.0"};
    sweep.heuristics = {"additive"};
    const auto records = run_suite(instances, sweep);
    const auto rows = aggregate(records);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        double exp_sum = 0, cost_sum = 0;
        int count = 0, valid_after = 0;
        for (const auto& r : records) {
            if (r.alpha != row.alpha || !r.solved()) continue;
            exp_sum += static_cast<double>(r.expansions);
            cost_sum += *r.cost;
            valid_after += r.valid_after_repair ? 1 : 0;
            ++count;
        }
        REQUIRE(count == row.solved);
        CHECK(row.mean_expansions == doctest::Approx(exp_sum / count));
        CHECK(row.mean_cost == doctest::Approx(cost_sum / count));
        CHECK(row.valid_after_rate == doctest::Approx(double(valid_after) / count));
    }
}

TEST_CASE("expansion distributions match a direct quantile computation") {
    const auto instances = small_instances(9, 321);
    SweepConfig sweep;
    sweep.alphas = {"1.0"};
    sweep.heuristics = {"zero"};
    const auto records = run_suite(instances, sweep);
    const auto dists = expansion_distributions(records);
    REQUIRE(dists.size() == 1);
    const auto& d = dists[0];
    CHECK(d.count == 9);

    std::vector<double> values;
    for (const auto& r : records) values.push_back(static_cast<double>(r.expansions));
    std::sort(values.begin(), values.end());
    // With nine points the quartiles land exactly on order statistics.
    CHECK(d.min == values.front());
    CHECK(d.max == values.back());
    CHECK(d.q1 == values[2]);
    CHECK(d.median == values[4]);
    CHECK(d.q3 == values[6]);
    CHECK(d.whisker_low >= d.q1 - 1.5 * (d.q3 - d.q1));
    CHECK(d.whisker_high <= d.q3 + 1.5 * (d.q3 - d.q1));
    for (double v : d.outliers)
        CHECK((v < d.q1 - 1.5 * (d.q3 - d.q1) || v > d.q3 + 1.5 * (d.q3 - d.q1)));

    const std::string csv = render_distribution_csv(dists);
    CHECK(csv.find("schema_version") != std::string::npos);
    CHECK(csv.find("1.0,zero,astar") != std::string::npos);
}

TEST_CASE("summary csv carries the schema version") {
    const auto instances = small_instances(2, 13);
    SweepConfig sweep;
    sweep.alphas = {"0.5"};
    sweep.heuristics = {"additive"};
    const auto csv = render_summary_csv(aggregate(run_suite(instances, sweep)));
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("schema_version,", 0) == 0);
    CHECK(row.rfind("1,0.5,additive,astar,1,1,2,", 0) == 0);
}

TEST_CASE("suggest lists removals and additions for the canonical fixture") {
    RunConfig config;
    config.alpha = "1.0";
    const SuggestOutcome out = suggest(canonical_fixture(), config);
    REQUIRE(out.solved());
    int removals = 0, cohesion_adds = 0, repair_adds = 0;
    for (const auto& s : out.suggestions) {
        if (s.rfind("REMOVE", 0) == 0) ++removals;
        if (s.find("(cohesion)") != std::string::npos) ++cohesion_adds;
        if (s.find("(repair)") != std::string::npos) ++repair_adds;
    }
    CHECK(removals == 1);
    CHECK(cohesion_adds == 8);
    CHECK(repair_adds == 0);
    CHECK(out.cost == 9);
    CHECK(out.coupling_before == 2);
    CHECK(out.coupling_after == 1);
    CHECK(out.cohesion_before == 4);
    CHECK(out.cohesion_after == 12);
    CHECK(out.valid_after);

    const std::string text = render_suggestions(out);
    CHECK(text.find("REMOVE dependency b -> f") != std::string::npos);
    CHECK(text.find("coupling (inter-edges): 2 -> 1") != std::string::npos);
}

TEST_CASE("suggest reports no changes for an already-goal project") {
    const ProjectState tiny = make_state({0, 1}, 2, {{0, 1}});
    RunConfig config;
    config.alpha = "1.0";
    const SuggestOutcome out = suggest(tiny, config);
    REQUIRE(out.solved());
    CHECK(out.suggestions.empty());
    CHECK(render_suggestions(out).find("no changes") != std::string::npos);
}

TEST_CASE("suggest surfaces limit diagnostics without suggestions") {
    RunConfig config;
    config.alpha = "1.0";
    config.heuristic = "zero";
    config.max_expansions = 1;
    const SuggestOutcome out = suggest(canonical_fixture(), config);
    CHECK_FALSE(out.solved());
    CHECK(out.suggestions.empty());
    CHECK(render_suggestions(out).find("no suggestions") != std::string::npos);
    CHECK(render_suggestions(out).find("expansion-limit") != std::string::npos);
}

TEST_CASE("records are byte-identical across runs, timing aside") {
    const auto instances = small_instances(4, 777);
    SweepConfig sweep;
    sweep.heuristics = {"additive"};
    sweep.jobs = 2;
    const auto first = run_suite(instances, sweep);
    const auto second = run_suite(instances, sweep);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(record_to_line(first[i], false) == record_to_line(second[i], false));
}
