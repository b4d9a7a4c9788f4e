// Command-line surface: task generation, episode runs, report tables,
// and trace inspection.
//
// Exit codes: 0 when every requested episode executed (task failures are
// report rows, not process failures), 2 for backend misconfiguration,
// 1 for any other runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sgrwr/orch/runner.hpp"

namespace fs = std::filesystem;
using namespace sgrwr;

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    try {
        size_t dots = text.find("..");
        if (dots == std::string::npos) {
            std::uint64_t only = std::stoull(text);
            return {only, only};
        }
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Error("cannot parse seed range '" + text + "'; expected A..B or a single seed");
    }
}

// Settings shared by `run`, resolved from --config (when given) with
// command-line flags taking precedence.
struct RunFlags {
    std::string config_path;
    std::string method = "rwr";
    std::string env = "numqa";
    std::string seeds = "0..0";
    std::string backend = "reference";
    std::string endpoint;
    std::string model;
    int parallel = 1;
    int max_iterations = 20;
    std::string out;
};

void apply_config_file(const CLI::App& cmd, RunFlags& flags) {
    if (flags.config_path.empty()) return;
    std::ifstream in(flags.config_path);
    if (!in) throw Error("cannot read config file: " + flags.config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("config file " + flags.config_path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw Error("config file must hold a JSON object");
    auto pick_str = [&](const char* flag, const char* key, std::string& into) {
        if (cmd.count(flag) == 0 && j.contains(key)) into = j.at(key).get<std::string>();
    };
    auto pick_int = [&](const char* flag, const char* key, int& into) {
        if (cmd.count(flag) == 0 && j.contains(key)) into = j.at(key).get<int>();
    };
    pick_str("--method", "method", flags.method);
    pick_str("--env", "env", flags.env);
    pick_str("--seeds", "seeds", flags.seeds);
    pick_str("--backend", "backend", flags.backend);
    pick_str("--endpoint", "endpoint", flags.endpoint);
    pick_str("--model", "model", flags.model);
    pick_int("--parallel", "parallel", flags.parallel);
    pick_int("--max-iterations", "max_iterations", flags.max_iterations);
    pick_str("--out", "out", flags.out);
    for (const auto& [key, value] : j.items()) {
        (void)value;
        static const std::vector<std::string> known{"method",   "env",      "seeds",
                                                    "backend",  "endpoint", "model",
                                                    "parallel", "max_iterations", "out"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error("config file key '" + key + "' is not a known setting");
    }
}

orch::RunConfig resolve_run_config(const CLI::App& cmd, RunFlags& flags) {
    apply_config_file(cmd, flags);
    orch::RunConfig config;
    config.method = orch::method_from_name(flags.method);
    config.env = flags.env;
    std::tie(config.seed_begin, config.seed_end) = parse_seed_range(flags.seeds);
    config.parallel = flags.parallel;
    config.limits.max_iterations = flags.max_iterations;
    config.out_dir = flags.out;

    const std::string scripted_prefix = "scripted:";
    if (flags.backend == "reference") {
        config.backend.kind = orch::BackendChoice::Kind::Reference;
    } else if (flags.backend.rfind(scripted_prefix, 0) == 0) {
        config.backend.kind = orch::BackendChoice::Kind::Scripted;
        config.backend.script_path = flags.backend.substr(scripted_prefix.size());
        if (config.backend.script_path.empty())
            throw orch::MisconfigError("scripted backend needs a path: scripted:PATH");
    } else if (flags.backend == "live") {
        config.backend.kind = orch::BackendChoice::Kind::Live;
        config.backend.live.endpoint_url = flags.endpoint;
        config.backend.live.model_name = flags.model;
    } else {
        throw orch::MisconfigError("unknown backend '" + flags.backend +
                                   "'; expected reference, scripted:PATH, or live");
    }
    if (config.backend.kind != orch::BackendChoice::Kind::Live &&
        (!flags.endpoint.empty() || !flags.model.empty()))
        throw orch::MisconfigError(
            "--endpoint/--model apply only to the live backend; remove them or use "
            "--backend live");
    return config;
}

int cmd_gen(const std::string& env, const std::string& seeds, const std::string& out,
            bool force) {
    auto [begin, end] = parse_seed_range(seeds);
    if (end < begin) throw Error("empty seed range: " + seeds);
    if (fs::exists(out) && !fs::is_directory(out)) throw Error("not a directory: " + out);
    if (fs::is_directory(out) && !fs::is_empty(out) && !force)
        throw Error("output directory " + out + " is not empty; pass --force to write into it");
    fs::create_directories(out);
    int written = 0;
    for (std::uint64_t seed = begin; seed <= end; ++seed) {
        orch::TaskInstance task = orch::gen_task(env, seed);
        orch::save_task_file(task, (fs::path(out) / (task.id + ".json")).string());
        ++written;
    }
    std::cout << "wrote " << written << " task file(s) to " << out << "\n";
    return 0;
}

int cmd_run(const CLI::App& cmd, RunFlags& flags) {
    orch::RunConfig config = resolve_run_config(cmd, flags);
    orch::RunResult result = orch::run_benchmark(config);
    std::cout << orch::render_report(result.report);
    if (!config.out_dir.empty())
        std::cout << "traces and report.json written to " << config.out_dir << "\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& dirs, bool as_json) {
    orch::Report report = orch::report_from_dirs(dirs);
    if (as_json)
        std::cout << orch::report_to_json(report).dump(2) << "\n";
    else
        std::cout << orch::render_report(report);
    return 0;
}

int cmd_show(const std::string& file) {
    orch::EpisodeTrace trace = orch::load_trace_file(file);
    std::cout << "task:         " << trace.task_id << " (env " << trace.env << ", seed "
              << trace.seed << ")\n"
              << "method:       " << trace.method << "\n"
              << "instruction:  " << trace.instruction << "\n"
              << "graph tokens: " << trace.graph_token_count << "\n";
    for (const orch::IterationRecord& it : trace.iterations) {
        std::cout << "\n--- iteration " << it.t << " [" << it.planner_turn.mode << "] ---\n";
        if (!it.planner_turn.explanation.empty())
            std::cout << "because: " << it.planner_turn.explanation << "\n";
        std::cout << "content: " << it.planner_turn.content << "\n";
        if (!it.tool_results.empty()) std::cout << "result:  " << it.tool_results << "\n";
        std::cout << "tokens:  in=" << it.tokens_in << " out=" << it.tokens_out
                  << " planner_in=" << it.planner_tokens_in;
        if (it.retrieval_attempts) std::cout << " retrieval_attempts=" << it.retrieval_attempts;
        if (it.retrieval_api_calls) std::cout << " api_calls=" << it.retrieval_api_calls;
        std::cout << "\n";
    }
    std::cout << "\noutcome: " << (trace.outcome.success ? "success" : "failure");
    if (!trace.outcome.success) std::cout << " (" << trace.outcome.failure_reason << ")";
    std::cout << "\n";
    if (!trace.outcome.detail.empty()) std::cout << "detail:  " << trace.outcome.detail << "\n";
    if (!trace.solution_text.empty()) std::cout << "solution:\n" << trace.solution_text << "\n";
    std::cout << "wall time: " << trace.wall_time_ms << " ms\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene-graph reasoning benchmark"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate task files");
    std::string gen_env = "numqa", gen_seeds = "0..0", gen_out;
    bool gen_force = false;
    gen->add_option("--env", gen_env, "numqa, trv1, trv2, vh1, or vh2");
    gen->add_option("--seeds", gen_seeds, "seed range A..B (inclusive)");
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_flag("--force", gen_force, "write into a non-empty directory");

    auto* run = app.add_subcommand("run", "run episodes and report");
    RunFlags flags;
    run->add_option("--config", flags.config_path, "JSON settings file; flags override it");
    run->add_option("--method", flags.method,
                    "rwr, rwr-limit, react, react-limit, fullgraph-zeroshot, fullgraph-cot");
    run->add_option("--env", flags.env, "numqa, trv1, trv2, vh1, or vh2");
    run->add_option("--seeds", flags.seeds, "seed range A..B (inclusive)");
    run->add_option("--backend", flags.backend, "reference, scripted:PATH, or live");
    run->add_option("--endpoint", flags.endpoint, "live chat endpoint URL");
    run->add_option("--model", flags.model, "live model name");
    run->add_option("--parallel", flags.parallel, "worker threads");
    run->add_option("--max-iterations", flags.max_iterations, "planner iteration cap");
    run->add_option("--out", flags.out, "trace/report output directory");

    auto* report = app.add_subcommand("report", "recompute a report from trace directories");
    std::vector<std::string> report_dirs;
    bool report_json = false;
    report->add_option("dirs", report_dirs, "trace directories to merge")->required();
    report->add_flag("--json", report_json, "print the report as JSON");

    auto* show = app.add_subcommand("show", "pretty-print one episode trace");
    std::string show_file;
    show->add_option("file", show_file, "trace .jsonl file")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_env, gen_seeds, gen_out, gen_force);
        if (run->parsed()) return cmd_run(*run, flags);
        if (report->parsed()) return cmd_report(report_dirs, report_json);
        if (show->parsed()) return cmd_show(show_file);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const orch::MisconfigError& e) {
        std::cerr << "backend misconfiguration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
