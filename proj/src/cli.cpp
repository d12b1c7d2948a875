#include "arcsolve/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "arcsolve/error.hpp"
#include "arcsolve/induction.hpp"
#include "arcsolve/remote.hpp"
#include "arcsolve/synth.hpp"

namespace fs = std::filesystem;

namespace arcsolve::cli {
namespace {

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Owns whichever transport chain the config asks for.
class BackendStack {
public:
    explicit BackendStack(const Config& c) {
        if (c.backend_url) {
            http_ = std::make_unique<HttpTransport>(HttpOptions{*c.backend_url, c.timeout_ms, token_from_env()});
            Transport* t = http_.get();
            if (c.transcript_path) {
                recorder_ = std::make_unique<TranscriptRecorder>(*http_, *c.transcript_path);
                t = recorder_.get();
            }
            backend_ = std::make_unique<RemoteSampleBackend>(*t);
        } else if (c.transcript_path) {
            replayer_ = std::make_unique<TranscriptReplayer>(*c.transcript_path);
            backend_ = std::make_unique<RemoteSampleBackend>(*replayer_);
        }
    }
    SampleBackend* get() const { return backend_.get(); }

private:
    std::unique_ptr<Transport> http_;
    std::unique_ptr<Transport> recorder_;
    std::unique_ptr<Transport> replayer_;
    std::unique_ptr<SampleBackend> backend_;
};

std::string pattern_line(const ScoredPattern& sp, int pairs) {
    return to_string(sp.pattern) + "  # confidence=" + fixed(sp.confidence, 2) + " support=" +
           std::to_string(sp.support) + "/" + std::to_string(pairs) + (sp.exact ? " exact" : " partial");
}

void print_perception(std::ostream& out, const std::string& label, const Grid& g, Connectivity conn) {
    const Perception p = segment(g, conn);
    out << "# " << label << ' ' << g.height() << 'x' << g.width() << " background=" << int(p.background)
        << " objects=" << p.objects.size() << '\n';
    for (const GridObject& o : p.objects) {
        out << "object id=" << o.id << " color=" << int(o.color) << " size=" << o.size() << " bbox=(" << o.bbox.top
            << ',' << o.bbox.left << ',' << o.bbox.bottom << ',' << o.bbox.right << ") cavities=" << o.cavity_count
            << '\n';
    }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

}  // namespace

int cmd_perceive(const std::string& path, const Config& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Task task = load_task(path);
        for (std::size_t i = 0; i < task.train.size(); ++i) {
            const std::string base = "train[" + std::to_string(i) + "]";
            print_perception(out, base + ".input", task.train[i].input, config.connectivity);
            print_perception(out, base + ".output", task.train[i].output, config.connectivity);
        }
        for (std::size_t i = 0; i < task.test.size(); ++i) {
            print_perception(out, "test[" + std::to_string(i) + "].input", task.test[i].input, config.connectivity);
        }
        return int(ok);
    });
}

int cmd_induce(const std::string& path, const Config& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Task task = load_task(path);
        SearchProposer proposer(SearchOptions{config.search_budget, config.connectivity});
        const Induction ind = induce(
            task, proposer, InductionOptions{config.search_budget, config.confidence_threshold, config.connectivity});
        for (const auto& w : ind.warnings) err << "warning: " << w << '\n';
        const RuleSet& rs = ind.rules;
        if (rs.patterns.empty()) {
            out << "no surviving patterns\n";
            return int(ok);
        }
        for (const ScoredPattern& sp : rs.patterns) out << pattern_line(sp, rs.pair_count) << '\n';
        for (const std::string& h : rs.hints) out << "hint: " << h << '\n';
        return int(ok);
    });
}

int cmd_solve(const std::string& path, const Config& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Task task = load_task(path);
        BackendStack backend(config);
        SearchProposer proposer(SearchOptions{config.search_budget, config.connectivity});
        const PipelineResult result = run_pipeline(task, pipeline_options(config), proposer, backend.get());
        for (const auto& w : result.induction.warnings) err << "warning: " << w << '\n';
        const RuleSet& rs = result.induction.rules;
        for (const ScoredPattern& sp : rs.patterns) out << "# rule " << pattern_line(sp, rs.pair_count) << '\n';
        for (std::size_t i = 0; i < result.predictions.size(); ++i) {
            const Prediction& p = result.predictions[i];
            const std::string item = "test[" + std::to_string(i) + "]";
            for (std::size_t a = 0; a < p.attempts.size(); ++a) {
                out << "## " << item << " attempt " << a + 1 << '\n' << encode_markdown(p.attempts[a]) << '\n';
            }
            const Trace& t = p.trace;
            out << "# trace " << item << " rules=" << t.ruleset_size << " rule_candidates=" << t.rule_candidates
                << " remote_candidates=" << t.remote_candidates << " tied_cells=" << t.tied_cells
                << " identity_fallback=" << (t.identity_fallback ? "yes" : "no")
                << " second_attempt=" << (t.second_attempt_source.empty() ? "none" : t.second_attempt_source) << '\n';
            for (const auto& n : t.notes) out << "# note " << n << '\n';
            for (const auto& w : t.warnings) err << "warning: " << item << ": " << w << '\n';
        }
        return int(ok);
    });
}

int cmd_eval(const std::string& dir, const Config& config, const std::string& summary_path, std::ostream& out,
             std::ostream& err) {
    return guarded(err, [&] {
        if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());

        std::vector<NamedTask> dataset;
        int unreadable = 0;
        for (const fs::path& f : files) {
            try {
                dataset.push_back({f.stem().string(), load_task(f.string())});
            } catch (const Error& e) {
                err << "warning: skipping unreadable task " << e.what() << '\n';
                ++unreadable;
            }
        }

        BackendStack backend(config);
        SearchProposer proposer(SearchOptions{config.search_budget, config.connectivity});
        EvalReport report = evaluate(dataset, pipeline_options(config), proposer, backend.get(), config.jobs);
        report.unreadable = unreadable;

        nlohmann::ordered_json items = nlohmann::ordered_json::array();
        for (const EvalItem& e : report.items) {
            out << e.task_id << " test[" << e.test_index << "] ";
            if (e.skipped) {
                out << "skipped (no expected output)\n";
            } else {
                out << (e.correct ? "correct" : "wrong") << " attempt=" << e.matched_attempt
                    << " candidates=" << e.candidates;
                if (!e.kinds_fired.empty()) {
                    out << " kinds=";
                    for (std::size_t k = 0; k < e.kinds_fired.size(); ++k) out << (k ? "," : "") << e.kinds_fired[k];
                }
                out << '\n';
            }
            items.push_back({{"task_id", e.task_id},
                             {"test_index", e.test_index},
                             {"skipped", e.skipped},
                             {"correct", e.correct},
                             {"matched_attempt", e.matched_attempt},
                             {"attempts", e.attempts},
                             {"candidates", e.candidates},
                             {"kinds_fired", e.kinds_fired}});
        }
        out << "tasks=" << report.tasks << " scored=" << report.scored << " correct=" << report.correct
            << " skipped=" << report.skipped << " unreadable=" << report.unreadable
            << " tasks_fully_correct=" << report.tasks_fully_correct << '\n';
        out << "accuracy=" << fixed(report.accuracy(), 4) << '\n';

        nlohmann::ordered_json summary{{"tasks", report.tasks},
                                       {"scored", report.scored},
                                       {"correct", report.correct},
                                       {"accuracy", report.accuracy()},
                                       {"skipped", report.skipped},
                                       {"unreadable", report.unreadable},
                                       {"tasks_fully_correct", report.tasks_fully_correct},
                                       {"total_candidates", report.total_candidates},
                                       {"kind_hits", report.kind_hits},
                                       {"items", std::move(items)}};
        std::ofstream file(summary_path, std::ios::trunc);
        if (!file) throw ConfigError("cannot write summary " + summary_path);
        file << summary.dump(2) << '\n';
        return int(ok);
    });
}

int cmd_generate(const std::string& dir, int planted, int noise, const Config& config, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        if (planted < 0 || noise < 0) throw ConfigError("task counts must be non-negative");
        fs::create_directories(dir);
        const auto suite =
            synth::generate_suite({planted, noise, static_cast<std::uint64_t>(config.seed)});
        for (const NamedTask& t : suite) {
            const fs::path file = fs::path(dir) / (t.id + ".json");
            std::ofstream f(file, std::ios::trunc);
            if (!f) throw ConfigError("cannot write " + file.string());
            f << serialize_task(t.task) << '\n';
        }
        out << "wrote " << suite.size() << " tasks to " << dir << '\n';
        return int(ok);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ARC task solver: perception, unit-pattern induction, voting"};
    app.require_subcommand(1);

    struct Overrides {
        std::string config_path;
        std::optional<int> connectivity, budget, passes, samples, jobs, timeout_ms;
        std::optional<double> threshold;
        std::optional<std::string> backend_url, transcript;
        std::optional<std::int64_t> seed;
    } o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file; flags override it");
        sub->add_option("--connectivity", o.connectivity, "4 or 8");
        sub->add_option("--threshold", o.threshold, "minimum support fraction for a pattern");
        sub->add_option("--budget", o.budget, "pattern applications per train pair");
        sub->add_option("--passes", o.passes, "1 or 2 attempts per test input");
        sub->add_option("--samples", o.samples, "remote samples per request");
        sub->add_option("--backend-url", o.backend_url, "remote backend endpoint (http://host:port/path)");
        sub->add_option("--transcript", o.transcript, "record (with --backend-url) or replay backend exchanges");
        sub->add_option("--seed", o.seed, "generator seed");
        sub->add_option("--jobs", o.jobs, "tasks evaluated concurrently");
        sub->add_option("--timeout-ms", o.timeout_ms, "backend request timeout");
    };

    std::string path;
    std::string summary = "eval_summary.json";
    int planted = 100;
    int noise = 0;
    auto* perceive = app.add_subcommand("perceive", "print the objects found in every grid of a task");
    auto* induce_cmd = app.add_subcommand("induce", "print surviving unit patterns and hints");
    auto* solve = app.add_subcommand("solve", "predict test outputs as markdown grids");
    auto* eval = app.add_subcommand("eval", "score every task file in a directory");
    auto* generate = app.add_subcommand("generate", "write a synthetic planted-pattern suite");
    for (auto* sub : {perceive, induce_cmd, solve}) {
        sub->add_option("task", path, "task JSON file")->required();
        add_common(sub);
    }
    eval->add_option("dir", path, "directory of task JSON files")->required();
    eval->add_option("--summary", summary, "machine-readable summary output path");
    add_common(eval);
    generate->add_option("dir", path, "output directory")->required();
    generate->add_option("--planted", planted, "planted-pattern tasks");
    generate->add_option("--noise", noise, "out-of-closure noise tasks");
    add_common(generate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(ok) : int(usage_error);
    }

    Config config;
    try {
        if (!o.config_path.empty()) config = load_config(o.config_path);
        if (o.connectivity) {
            if (*o.connectivity != 4 && *o.connectivity != 8) throw ConfigError("connectivity must be 4 or 8");
            config.connectivity = static_cast<Connectivity>(*o.connectivity);
        }
        if (o.threshold) config.confidence_threshold = *o.threshold;
        if (o.budget) config.search_budget = *o.budget;
        if (o.passes) config.passes = *o.passes;
        if (o.samples) config.samples = *o.samples;
        if (o.backend_url) config.backend_url = *o.backend_url;
        if (o.transcript) config.transcript_path = *o.transcript;
        if (o.seed) config.seed = *o.seed;
        if (o.jobs) config.jobs = *o.jobs;
        if (o.timeout_ms) config.timeout_ms = *o.timeout_ms;
        validate(config);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    if (*perceive) return cmd_perceive(path, config, out, err);
    if (*induce_cmd) return cmd_induce(path, config, out, err);
    if (*solve) return cmd_solve(path, config, out, err);
    if (*eval) return cmd_eval(path, config, summary, out, err);
    return cmd_generate(path, planted, noise, config, out, err);
}

}  // namespace arcsolve::cli
