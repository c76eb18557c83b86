// recoup: suggests class-level dependency refactorings that cut inter-module
// coupling and raise intra-module cohesion, via best-first search over a
// project graph. Subcommands: gen, solve, suggest, ingest, bench, summarize.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recoup/experiments.hpp"
#include "recoup/instance_gen.hpp"
#include "recoup/java_ingest.hpp"
#include "recoup/project_io.hpp"

namespace fs = std::filesystem;
using namespace recoup;

namespace {

// Exit codes: 0 success, 2 input error, 3 limit hit, 4 unsolvable, 5 internal.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kLimit = 3;
constexpr int kUnsolvable = 4;
constexpr int kInternal = 5;

fs::path default_out_dir() {
    if (const char* dir = std::getenv("RECOUP_OUT")) return fs::path(dir);
    return fs::path(".");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

std::vector<std::pair<std::string, ProjectState>> load_instances(const fs::path& input) {
    std::vector<std::pair<std::string, ProjectState>> instances;
    if (fs::is_directory(input)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".graph")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files)
            instances.emplace_back(file.stem().string(), load_project_file(file));
        if (instances.empty())
            throw InputError("no .graph files found in '" + input.string() + "'");
    } else {
        instances.emplace_back(input.stem().string(), load_project_file(input));
    }
    return instances;
}

int status_code(const std::string& status) {
    if (status == "solved") return kOk;
    if (status == "time-limit" || status == "expansion-limit") return kLimit;
    if (status == "unsolvable") return kUnsolvable;
    return kInternal;
}

struct SearchFlags {
    std::string alpha = "0.5";
    std::string heuristic = "additive";
    std::string algorithm = "astar";
    int weight = 1;
    std::string repair = "on";
    std::uint64_t max_expansions = 0;
    double max_seconds = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "cohesion aggression in [0,1], exact decimal")
            ->capture_default_str();
        cmd->add_option("--heuristic", heuristic, "zero|coupling|cohesion|additive")
            ->capture_default_str();
        cmd->add_option("--algorithm", algorithm, "astar|wastar")->capture_default_str();
        cmd->add_option("--weight", weight, "weight for wastar (integer >= 1)")
            ->capture_default_str();
        cmd->add_option("--repair", repair, "on|off: re-add reverse inter-edges after search")
            ->capture_default_str();
        cmd->add_option("--max-expansions", max_expansions, "abort after this many expansions");
        cmd->add_option("--max-seconds", max_seconds, "abort after this much search time");
    }

    RunConfig to_config() const {
        if (repair != "on" && repair != "off")
            throw InputError("--repair expects on|off, got '" + repair + "'");
        RunConfig config;
        config.alpha = alpha;
        config.heuristic = heuristic;
        config.algorithm = algorithm;
        config.weight = weight;
        config.repair_enabled = repair == "on";
        if (max_expansions > 0) config.max_expansions = max_expansions;
        if (max_seconds > 0) config.max_seconds = max_seconds;
        config.validate();
        return config;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recoup: class-level dependency refactoring via best-first search"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate random benchmark instances");
    int gen_classes = 25, gen_modules = 15, gen_count = 100;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--classes", gen_classes, "vertices per instance")->capture_default_str();
    gen->add_option("--modules", gen_modules, "modules per instance")->capture_default_str();
    gen->add_option("--count", gen_count, "number of instances")->capture_default_str();
    gen->add_option("--seed", gen_seed, "base seed; instance i uses seed + i")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "output directory (default $RECOUP_OUT/instances)");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance and report a result record");
    std::string solve_in, solve_out;
    SearchFlags solve_flags;
    solve->add_option("--in", solve_in, "project-graph file")->required();
    solve_flags.attach(solve);
    solve->add_option("--out", solve_out, "append the result record to this JSONL file");

    // suggest
    auto* sug = app.add_subcommand("suggest", "print refactoring suggestions for a project");
    std::string sug_in;
    SearchFlags sug_flags;
    sug->add_option("--in", sug_in, "project-graph file")->required();
    sug_flags.attach(sug);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "extract a project graph from Java sources");
    std::string ingest_root, ingest_out;
    ingest->add_option("--root", ingest_root, "root of a Java source checkout")->required();
    ingest->add_option("--out", ingest_out, "output project-graph file (default $RECOUP_OUT/project.graph)");

    // bench
    auto* bench = app.add_subcommand("bench", "run a sweep over an instance directory");
    std::string bench_in, bench_out, bench_summary;
    std::string bench_alphas = "0.25,0.5,0.75,1.0";
    std::string bench_heuristics = "zero,coupling,cohesion,additive";
    std::string bench_algorithm = "astar";
    std::string bench_weights = "1";
    std::string bench_repair = "on";
    int bench_jobs = 1;
    std::uint64_t bench_max_exp = 0;
    double bench_max_sec = 0;
    bench->add_option("--instances", bench_in, "directory of .graph files")->required();
    bench->add_option("--alphas", bench_alphas, "comma-separated aggression values")
        ->capture_default_str();
    bench->add_option("--heuristics", bench_heuristics, "comma-separated heuristic names")
        ->capture_default_str();
    bench->add_option("--algorithm", bench_algorithm, "astar|wastar")->capture_default_str();
    bench->add_option("--weights", bench_weights, "comma-separated weights (wastar)")
        ->capture_default_str();
    bench->add_option("--repair", bench_repair, "on|off")->capture_default_str();
    bench->add_option("--jobs", bench_jobs, "worker pool size; one search per worker")
        ->capture_default_str();
    bench->add_option("--max-expansions", bench_max_exp, "per-search expansion cap");
    bench->add_option("--max-seconds", bench_max_sec, "per-search time cap");
    bench->add_option("--out", bench_out, "results JSONL (default $RECOUP_OUT/results.jsonl)");
    bench->add_option("--summary", bench_summary, "also write an aggregate CSV here");

    // summarize
    auto* summ = app.add_subcommand("summarize", "aggregate result files into tables");
    std::vector<std::string> summ_in;
    std::string summ_csv, summ_dist;
    summ->add_option("--in", summ_in, "result JSONL files")->required()->expected(-1);
    summ->add_option("--summary", summ_csv, "write the aggregate CSV here");
    summ->add_option("--dist", summ_dist, "write per-configuration expansion distributions here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kInputError;
    }

    try {
        if (*gen) {
            if (gen_classes < 1 || gen_modules < 1 || gen_count < 0)
                throw InputError("gen needs --classes >= 1, --modules >= 1, --count >= 0");
            const fs::path dir =
                gen_out.empty() ? default_out_dir() / "instances" : fs::path(gen_out);
            fs::create_directories(dir);
            InstanceSpec spec{gen_classes, gen_modules, gen_seed, gen_count};
            for (const auto& [id, state] : generate_batch(spec))
                emit_project_file(state, dir / (id + ".graph"));
            std::cout << "wrote " << gen_count << " instances to " << dir.string() << "\n";
            return kOk;
        }

        if (*solve) {
            const RunConfig config = solve_flags.to_config();
            if (fs::is_directory(solve_in))
                throw InputError("solve expects a single project file; use bench for '" +
                                 solve_in + "'");
            const std::string id = fs::path(solve_in).stem().string();
            const ProjectState state = load_project_file(solve_in);
            ResultRecord record = run_instance(id, state, config);
            if (record.status == "error") throw InternalError(record.error);
            std::cout << record_to_line(record) << "\n";
            if (!solve_out.empty()) {
                SweepConfig sweep;
                sweep.alphas = {config.alpha};
                sweep.heuristics = {config.heuristic};
                sweep.algorithms = {{config.algorithm, config.weight}};
                sweep.repair_enabled = config.repair_enabled;
                sweep.max_expansions = config.max_expansions;
                sweep.max_seconds = config.max_seconds;
                write_results(solve_out, sweep, {record});
            }
            return status_code(record.status);
        }

        if (*sug) {
            const RunConfig config = sug_flags.to_config();
            ProjectState project = load_project_file(sug_in);
            SuggestOutcome outcome = suggest(project, config);
            std::cout << render_suggestions(outcome);
            return status_code(outcome.status);
        }

        if (*ingest) {
            auto [state, report] = scan_project(ingest_root);
            const fs::path out =
                ingest_out.empty() ? default_out_dir() / "project.graph" : fs::path(ingest_out);
            emit_project_file(state, out);
            std::cout << "classes: " << report.classes_found
                      << "  modules: " << report.modules_found
                      << "  dependencies: " << report.dependencies_found << "\n";
            for (const auto& [file, ref] : report.unresolved_references)
                std::cerr << "unresolved: " << ref << " (" << file << ")\n";
            for (const auto& skipped : report.skipped_files)
                std::cerr << "skipped: " << skipped << "\n";
            for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";
            std::cout << "wrote " << out.string() << "\n";
            return kOk;
        }

        if (*bench) {
            if (bench_repair != "on" && bench_repair != "off")
                throw InputError("--repair expects on|off");
            SweepConfig sweep;
            sweep.alphas = split_list(bench_alphas);
            sweep.heuristics = split_list(bench_heuristics);
            sweep.algorithms.clear();
            for (const auto& w : split_list(bench_weights)) {
                try {
                    sweep.algorithms.emplace_back(bench_algorithm, std::stoi(w));
                } catch (const std::exception&) {
                    throw InputError("--weights expects integers, got '" + w + "'");
                }
            }
            sweep.repair_enabled = bench_repair == "on";
            if (bench_max_exp > 0) sweep.max_expansions = bench_max_exp;
            if (bench_max_sec > 0) sweep.max_seconds = bench_max_sec;
            sweep.jobs = bench_jobs;
            for (const RunConfig& config : sweep.expand()) config.validate();

            const auto instances = load_instances(bench_in);
            const auto records = run_suite(instances, sweep);
            const fs::path out =
                bench_out.empty() ? default_out_dir() / "results.jsonl" : fs::path(bench_out);
            write_results(out, sweep, records);
            const auto rows = aggregate(records);
            std::cout << render_table(rows);
            std::cout << "wrote " << records.size() << " records to " << out.string() << "\n";
            if (!bench_summary.empty()) {
                std::ofstream csv(bench_summary);
                if (!csv) throw InputError("cannot open '" + bench_summary + "' for writing");
                csv << render_summary_csv(rows);
            }
            return kOk;
        }

        if (*summ) {
            std::vector<ResultRecord> records;
            for (const auto& file : summ_in) {
                auto part = read_results(file);
                records.insert(records.end(), part.begin(), part.end());
            }
            if (records.empty()) throw InputError("result files contain no records");
            const auto rows = aggregate(records);
            std::cout << render_table(rows);
            if (!summ_csv.empty()) {
                std::ofstream csv(summ_csv);
                if (!csv) throw InputError("cannot open '" + summ_csv + "' for writing");
                csv << render_summary_csv(rows);
            }
            if (!summ_dist.empty()) {
                std::ofstream csv(summ_dist);
                if (!csv) throw InputError("cannot open '" + summ_dist + "' for writing");
                csv << render_distribution_csv(expansion_distributions(records));
            }
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInputError;
}
