#include "arcsolve/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "arcsolve/error.hpp"
#include "arcsolve/kernels.hpp"

namespace arcsolve {
namespace {

bool weight_tied(double w, double best) noexcept { return std::abs(w - best) <= kVoteTieTolerance * best; }

void add_unique(std::vector<Grid>& attempts, const Grid& g) {
    for (const Grid& a : attempts) {
        if (grids_equal(a, g)) return;
    }
    attempts.push_back(g);
}

}  // namespace

std::string_view to_string(CandidateSource s) noexcept {
    switch (s) {
        case CandidateSource::rule_exec:
            return "rule_exec";
        case CandidateSource::remote_sample:
            return "remote_sample";
        case CandidateSource::fallback:
            return "fallback";
    }
    return "?";
}

RuleApplication apply_ruleset(const RuleSet& rs, const Grid& test_input, Connectivity conn) {
    RuleApplication out;
    const bool any_exact =
        std::any_of(rs.patterns.begin(), rs.patterns.end(), [](const ScoredPattern& sp) { return sp.exact; });
    std::optional<Perception> scene;
    for (const ScoredPattern& sp : rs.patterns) {
        if (any_exact && !sp.exact) continue;
        try {
            if (!kind_info(sp.pattern.kind).whole_grid && !scene) scene = segment(test_input, conn);
            Grid g = scene ? apply_pattern(sp.pattern, test_input, *scene) : apply_pattern(sp.pattern, test_input);
            out.candidates.push_back({std::move(g), CandidateSource::rule_exec, sp.confidence, sp.pattern});
        } catch (const ApplyError& e) {
            out.notes.push_back("skipped " + to_string(sp.pattern) + ": " + e.what());
        }
    }
    return out;
}

VoteOutcome vote_pixels_detailed(std::span<const Candidate> cands) {
    if (cands.empty()) throw ContractError("vote_pixels needs at least one candidate");
    for (const Candidate& c : cands) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) throw ContractError("candidate weights must be positive");
    }

    // Dimension pre-vote, groups in first-appearance order.
    std::vector<std::pair<Dims, double>> groups;
    for (const Candidate& c : cands) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == c.grid.dims(); });
        if (it == groups.end())
            groups.emplace_back(c.grid.dims(), c.weight);
        else
            it->second += c.weight;
    }
    double best_weight = 0.0;
    for (const auto& g : groups) best_weight = std::max(best_weight, g.second);
    int tied_groups = 0;
    Dims dims{};
    for (const auto& g : groups) {
        if (!weight_tied(g.second, best_weight)) continue;
        if (tied_groups++ == 0) dims = g.first;
    }

    VoteOutcome outcome{Grid(dims.height, dims.width), 0, 0, tied_groups > 1};
    const std::size_t n = static_cast<std::size_t>(dims.area());
    std::vector<double> acc(n * kNumColors, 0.0);
    std::vector<const Candidate*> voters;
    for (const Candidate& c : cands) {
        if (c.grid.dims() != dims) {
            ++outcome.excluded;
            continue;
        }
        voters.push_back(&c);
        const auto present = kernels::color_histogram(c.grid.cells());
        for (int color = 0; color < kNumColors; ++color) {
            if (present[color] == 0) continue;
            kernels::accumulate_color_weight(c.grid.cells(), static_cast<Color>(color), c.weight,
                                             std::span<double>(acc.data() + color * n, n));
        }
    }

    auto cells = outcome.grid.mutable_cells();
    for (std::size_t i = 0; i < n; ++i) {
        double best = 0.0;
        for (int color = 0; color < kNumColors; ++color) best = std::max(best, acc[color * n + i]);
        std::array<bool, kNumColors> tied{};
        int tie_count = 0;
        for (int color = 0; color < kNumColors; ++color) {
            const double w = acc[color * n + i];
            if (w > 0.0 && weight_tied(w, best)) {
                tied[color] = true;
                ++tie_count;
            }
        }
        if (tie_count > 1) ++outcome.tied_cells;
        for (const Candidate* c : voters) {
            if (tied[c->grid.cells()[i]]) {
                cells[i] = c->grid.cells()[i];
                break;
            }
        }
    }
    return outcome;
}

Grid vote_pixels(std::span<const Candidate> cands) { return vote_pixels_detailed(cands).grid; }

std::vector<Prediction> solve_task(const Task& task, const RuleSet& rs, SampleBackend* backend,
                                   const SolveOptions& opts) {
    if (opts.passes != 1 && opts.passes != 2) throw ContractError("passes must be 1 or 2");
    std::vector<Prediction> predictions;
    bool backend_ok = backend != nullptr;

    auto ask_backend = [&](const Grid& input, std::vector<std::string> hints, Trace& trace) -> std::vector<Grid> {
        if (!backend_ok) return {};
        try {
            SampleResponse r = backend->sample({task.train, &input, std::move(hints), opts.samples});
            for (auto& w : r.warnings) trace.warnings.push_back(std::move(w));
            return std::move(r.grids);
        } catch (const BackendError& e) {
            trace.warnings.push_back(std::string("backend unavailable, continuing without it: ") + e.what());
            backend_ok = false;
            return {};
        }
    };

    for (const TestItem& item : task.test) {
        Prediction pred;
        Trace& trace = pred.trace;
        trace.ruleset_size = static_cast<int>(rs.patterns.size());

        RuleApplication applied = apply_ruleset(rs, item.input, opts.connectivity);
        trace.notes = std::move(applied.notes);
        std::vector<Candidate> candidates = applied.candidates;
        trace.rule_candidates = static_cast<int>(candidates.size());
        pred.rule_candidates = std::move(applied.candidates);

        if (opts.samples > 0) {
            for (Grid& g : ask_backend(item.input, rs.hints, trace)) {
                candidates.push_back({std::move(g), CandidateSource::remote_sample, 1.0, std::nullopt});
                ++trace.remote_candidates;
            }
        }

        if (candidates.empty()) {
            pred.attempts.push_back(item.input);
            trace.identity_fallback = true;
        } else {
            VoteOutcome vote = vote_pixels_detailed(candidates);
            trace.tied_cells = vote.tied_cells;
            pred.attempts.push_back(std::move(vote.grid));
        }

        if (opts.passes == 2) {
            const bool degenerate = trace.identity_fallback || rs.patterns.empty();
            auto backend_alone = [&] {
                if (opts.samples <= 0) return;
                std::vector<Candidate> base;
                for (Grid& g : ask_backend(item.input, {}, trace)) {
                    base.push_back({std::move(g), CandidateSource::fallback, 1.0, std::nullopt});
                }
                if (base.empty()) return;
                const std::size_t before = pred.attempts.size();
                add_unique(pred.attempts, vote_pixels(base));
                if (pred.attempts.size() > before) trace.second_attempt_source = "backend";
            };
            if (degenerate) backend_alone();
            if (pred.attempts.size() == 1 && !pred.rule_candidates.empty()) {
                add_unique(pred.attempts, pred.rule_candidates.front().grid);
                if (pred.attempts.size() == 2) trace.second_attempt_source = "top_pattern";
            }
            if (pred.attempts.size() == 1 && !degenerate) backend_alone();
        }
        predictions.push_back(std::move(pred));
    }
    return predictions;
}

PipelineResult run_pipeline(const Task& task, const PipelineOptions& opts, Proposer& proposer,
                            SampleBackend* backend) {
    PipelineResult result;
    result.induction = induce(task, proposer, InductionOptions{opts.budget, opts.threshold, opts.connectivity});
    result.predictions =
        solve_task(task, result.induction.rules, backend, SolveOptions{opts.passes, opts.samples, opts.connectivity});
    return result;
}

EvalReport evaluate(std::span<const NamedTask> dataset, const PipelineOptions& opts, Proposer& proposer,
                    SampleBackend* backend, int jobs) {
    std::vector<std::vector<EvalItem>> per_task(dataset.size());

    auto run_one = [&](std::size_t t) {
        const NamedTask& named = dataset[t];
        const PipelineResult result = run_pipeline(named.task, opts, proposer, backend);
        for (std::size_t i = 0; i < named.task.test.size(); ++i) {
            const TestItem& item = named.task.test[i];
            const Prediction& pred = result.predictions[i];
            EvalItem e;
            e.task_id = named.id;
            e.test_index = static_cast<int>(i);
            e.attempts = static_cast<int>(pred.attempts.size());
            e.candidates = pred.trace.rule_candidates + pred.trace.remote_candidates;
            if (!item.expected) {
                e.skipped = true;
                per_task[t].push_back(std::move(e));
                continue;
            }
            for (std::size_t a = 0; a < pred.attempts.size(); ++a) {
                if (grids_equal(pred.attempts[a], *item.expected)) {
                    e.correct = true;
                    e.matched_attempt = static_cast<int>(a) + 1;
                    break;
                }
            }
            for (const Candidate& c : pred.rule_candidates) {
                if (c.pattern && grids_equal(c.grid, *item.expected)) {
                    const std::string kind(kind_info(c.pattern->kind).name);
                    if (std::find(e.kinds_fired.begin(), e.kinds_fired.end(), kind) == e.kinds_fired.end()) {
                        e.kinds_fired.push_back(kind);
                    }
                }
            }
            per_task[t].push_back(std::move(e));
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, dataset.size()));
    if (workers <= 1) {
        for (std::size_t t = 0; t < dataset.size(); ++t) run_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < dataset.size(); t = next++) run_one(t);
            });
        }
    }

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dataset[a].id < dataset[b].id; });

    EvalReport report;
    report.tasks = static_cast<int>(dataset.size());
    for (std::size_t t : order) {
        bool all_correct = !per_task[t].empty();
        for (EvalItem& e : per_task[t]) {
            report.total_candidates += e.candidates;
            if (e.skipped) {
                ++report.skipped;
                all_correct = false;
            } else {
                ++report.scored;
                if (e.correct) ++report.correct;
                all_correct = all_correct && e.correct;
                for (const auto& k : e.kinds_fired) ++report.kind_hits[k];
            }
            report.items.push_back(std::move(e));
        }
        if (all_correct) ++report.tasks_fully_correct;
    }
    return report;
}

}  // namespace arcsolve
