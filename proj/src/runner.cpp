#include "sgrwr/orch/runner.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "sgrwr/orch/reference.hpp"

namespace sgrwr::orch {

namespace fs = std::filesystem;

const char* method_name(Method m) {
    switch (m) {
        case Method::Rwr: return "rwr";
        case Method::RwrLimit: return "rwr-limit";
        case Method::React: return "react";
        case Method::ReactLimit: return "react-limit";
        case Method::FullgraphZeroshot: return "fullgraph-zeroshot";
        case Method::FullgraphCot: return "fullgraph-cot";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::Rwr, Method::RwrLimit, Method::React, Method::ReactLimit,
                     Method::FullgraphZeroshot, Method::FullgraphCot})
        if (name == method_name(m)) return m;
    throw Error("unknown method '" + name +
                "'; expected one of rwr, rwr-limit, react, react-limit, fullgraph-zeroshot, "
                "fullgraph-cot");
}

namespace {

const std::vector<std::string>& known_envs() {
    static const std::vector<std::string> envs{"numqa", "trv1", "trv2", "vh1", "vh2"};
    return envs;
}

// Per-episode backend factory. Scripted scripts restart for every
// episode; the live backend is shared since it is stateless.
class BackendFactory {
  public:
    BackendFactory(const RunConfig& config, TaskFamily family)
        : kind_(config.backend.kind), family_(family) {
        switch (kind_) {
            case BackendChoice::Kind::Reference:
                if (config.method != Method::Rwr || family == TaskFamily::Household)
                    throw MisconfigError(
                        "the reference backend supports only --method rwr on numqa, trv1, and "
                        "trv2");
                break;
            case BackendChoice::Kind::Scripted: {
                std::ifstream in(config.backend.script_path);
                if (!in)
                    throw MisconfigError("cannot read scripted backend file: " +
                                         config.backend.script_path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw MisconfigError("scripted backend file " + config.backend.script_path +
                                         " is not valid JSON: " + e.what());
                }
                if (!j.is_object())
                    throw MisconfigError("scripted backend file " + config.backend.script_path +
                                         " must be a JSON object of role -> reply list");
                for (const auto& [role, replies] : j.items()) {
                    if (!replies.is_array())
                        throw MisconfigError("scripted replies for role '" + role +
                                             "' must form a list");
                    for (const auto& r : replies)
                        if (!r.is_string())
                            throw MisconfigError("scripted replies for role '" + role +
                                                 "' must all be strings");
                    scripts_[role] = replies.get<std::vector<std::string>>();
                }
                break;
            }
            case BackendChoice::Kind::Live: {
                if (std::getenv("SGRWR_API_KEY") == nullptr)
                    throw MisconfigError(
                        "SGRWR_API_KEY is not set; the live backend reads the key only from "
                        "that environment variable");
                if (config.backend.live.endpoint_url.empty())
                    throw MisconfigError("a live run needs --endpoint");
                live_ = std::shared_ptr<agents::Backend>(
                    agents::make_live_backend(config.backend.live));
                break;
            }
        }
    }

    EpisodeBackends make() const {
        switch (kind_) {
            case BackendChoice::Kind::Reference: return make_reference_backends(family_);
            case BackendChoice::Kind::Scripted: {
                EpisodeBackends b;
                b.planner = scripted_role("planner");
                b.codewriter = scripted_role("codewriter");
                b.verifier = scripted_role("verifier");
                b.toolcaller = scripted_role("toolcaller");
                b.retrieval_agent = scripted_role("retrieval_agent");
                return b;
            }
            case BackendChoice::Kind::Live: {
                EpisodeBackends b;
                b.planner = b.codewriter = b.verifier = b.toolcaller = b.retrieval_agent = live_;
                return b;
            }
        }
        throw Error("unreachable backend kind");
    }

  private:
    std::shared_ptr<agents::Backend> scripted_role(const std::string& role) const {
        auto it = scripts_.find(role);
        std::vector<std::string> replies = it == scripts_.end() ? std::vector<std::string>{}
                                                                : it->second;
        return std::make_shared<agents::ScriptedBackend>(std::move(replies),
                                                         "scripted-" + role);
    }

    BackendChoice::Kind kind_;
    TaskFamily family_;
    std::map<std::string, std::vector<std::string>> scripts_;
    std::shared_ptr<agents::Backend> live_;
};

EpisodeTrace run_one(const RunConfig& config, const BackendFactory& factory,
                     std::uint64_t seed) {
    TaskInstance task = gen_task(config.env, seed);
    EpisodeBackends b = factory.make();
    switch (config.method) {
        case Method::Rwr: return run_rwr_episode(task, b, config.limits);
        case Method::RwrLimit: return run_rwr_limit_episode(task, b, config.limits);
        case Method::React: return run_react_episode(task, *b.planner, false, config.limits);
        case Method::ReactLimit: return run_react_episode(task, *b.planner, true, config.limits);
        case Method::FullgraphZeroshot: return run_fullgraph_episode(task, *b.planner, false);
        case Method::FullgraphCot: return run_fullgraph_episode(task, *b.planner, true);
    }
    throw Error("unreachable method");
}

std::string trace_file_name(const RunConfig& config, std::uint64_t seed) {
    std::ostringstream name;
    name << method_name(config.method) << "_" << config.env << "_" << std::setw(4)
         << std::setfill('0') << seed << ".jsonl";
    return name.str();
}

}  // namespace

RunResult run_benchmark(const RunConfig& config) {
    if (std::find(known_envs().begin(), known_envs().end(), config.env) == known_envs().end())
        throw MisconfigError("unknown env '" + config.env +
                             "'; expected one of numqa, trv1, trv2, vh1, vh2");
    if (config.seed_end < config.seed_begin)
        throw Error("empty seed range: " + std::to_string(config.seed_begin) + ".." +
                    std::to_string(config.seed_end));
    BackendFactory factory(config, family_of_env(config.env));

    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = config.seed_begin; s <= config.seed_end; ++s) seeds.push_back(s);
    std::vector<EpisodeTrace> traces(seeds.size());

    int workers = std::max(1, config.parallel);
    workers = static_cast<int>(std::min<size_t>(workers, seeds.size()));
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            try {
                traces[i] = run_one(config, factory, seeds[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    RunResult result;
    result.traces = std::move(traces);
    result.report = report_from_traces(result.traces);
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        for (size_t i = 0; i < result.traces.size(); ++i)
            save_trace_file(result.traces[i],
                            (fs::path(config.out_dir) / trace_file_name(config, seeds[i]))
                                .string());
        std::ofstream out(fs::path(config.out_dir) / "report.json");
        out << report_to_json(result.report).dump(2) << "\n";
    }
    return result;
}

Report report_from_traces(const std::vector<EpisodeTrace>& traces) {
    struct Tally {
        int trials = 0, successes = 0;
        long long iterations = 0, tokens = 0;
        std::map<std::string, int> failures;
    };
    std::map<std::pair<std::string, std::string>, Tally> groups;
    for (const EpisodeTrace& t : traces) {
        Tally& g = groups[{t.method, t.env}];
        ++g.trials;
        if (t.outcome.success) {
            ++g.successes;
        } else {
            ++g.failures[t.outcome.failure_reason.empty() ? "unspecified"
                                                          : t.outcome.failure_reason];
        }
        g.iterations += static_cast<long long>(t.iterations.size());
        for (const IterationRecord& it : t.iterations) g.tokens += it.tokens_in + it.tokens_out;
    }
    Report report;
    for (const auto& [key, g] : groups) {
        ReportRow row;
        row.method = key.first;
        row.env = key.second;
        row.trials = g.trials;
        row.successes = g.successes;
        row.success_rate = g.trials ? static_cast<double>(g.successes) / g.trials : 0.0;
        row.failures = g.failures;
        row.mean_iterations = g.trials ? static_cast<double>(g.iterations) / g.trials : 0.0;
        row.mean_tokens_per_iteration =
            g.iterations ? static_cast<double>(g.tokens) / g.iterations : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json report_to_json(const Report& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& r : report.rows) {
        nlohmann::json row;
        row["method"] = r.method;
        row["env"] = r.env;
        row["trials"] = r.trials;
        row["successes"] = r.successes;
        row["success_rate"] = r.success_rate;
        row["failures"] = r.failures;
        row["mean_iterations"] = r.mean_iterations;
        row["mean_tokens_per_iteration"] = r.mean_tokens_per_iteration;
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", rows}};
}

Report report_from_json(const nlohmann::json& j) {
    Report report;
    for (const auto& row : j.at("rows")) {
        ReportRow r;
        r.method = row.at("method").get<std::string>();
        r.env = row.at("env").get<std::string>();
        r.trials = row.at("trials").get<int>();
        r.successes = row.at("successes").get<int>();
        r.success_rate = row.at("success_rate").get<double>();
        r.failures = row.at("failures").get<std::map<std::string, int>>();
        r.mean_iterations = row.at("mean_iterations").get<double>();
        r.mean_tokens_per_iteration = row.at("mean_tokens_per_iteration").get<double>();
        report.rows.push_back(std::move(r));
    }
    return report;
}

std::string render_report(const Report& report) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"method", "env", "trials", "successes", "success_rate", "mean_iter",
                     "mean_tok/iter", "failures"});
    for (const ReportRow& r : report.rows) {
        std::ostringstream rate, iters, tokens, failures;
        rate << std::fixed << std::setprecision(2) << r.success_rate;
        iters << std::fixed << std::setprecision(2) << r.mean_iterations;
        tokens << std::fixed << std::setprecision(1) << r.mean_tokens_per_iteration;
        bool first = true;
        for (const auto& [reason, n] : r.failures) {
            if (!first) failures << " ";
            failures << reason << "=" << n;
            first = false;
        }
        if (first) failures << "-";
        table.push_back({r.method, r.env, std::to_string(r.trials),
                         std::to_string(r.successes), rate.str(), iters.str(), tokens.str(),
                         failures.str()});
    }
    std::vector<size_t> widths(table[0].size(), 0);
    for (const auto& row : table)
        for (size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    std::ostringstream out;
    for (const auto& row : table) {
        for (size_t c = 0; c < row.size(); ++c) {
            out << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
            out << (c + 1 == row.size() ? "\n" : "  ");
        }
    }
    return out.str();
}

Report report_from_dirs(const std::vector<std::string>& dirs) {
    std::vector<EpisodeTrace> traces;
    for (const std::string& dir : dirs) {
        if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) traces.push_back(load_trace_file(f.string()));
    }
    return report_from_traces(traces);
}

}  // namespace sgrwr::orch
