// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//   acceptance --cli <path to arcsolve binary> --data <tests/data dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcsolve/error.hpp"
#include "arcsolve/induction.hpp"
#include "arcsolve/perception.hpp"
#include "arcsolve/search.hpp"
#include "arcsolve/solver.hpp"
#include "arcsolve/synth.hpp"
#include "arcsolve/task.hpp"
#include "oracles.hpp"

using namespace arcsolve;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

UnitPattern P(std::string_view text) { return parse_pattern(text); }

// 1. Segmentation against union-find, 1000 grids, under 5 s.
Outcome segmentation_oracle() {
    std::mt19937_64 rng(101);
    int mismatches = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 1000; ++i) {
        const Grid g = oracle::random_grid(rng);
        const bool eight = i % 2;
        const Perception p = segment(g, eight ? Connectivity::eight : Connectivity::four);
        std::vector<int> mine(g.height() * g.width(), -1);
        for (const GridObject& o : p.objects)
            for (const Cell& c : o.mask) mine[g.index(c.row, c.col)] = o.id;
        if (p.background != oracle::background(g) || mine != oracle::segment_labels(g, oracle::background(g), eight))
            ++mismatches;
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 5.0, fmt("%d/1000 mismatches, %.2fs (limit 5s)", mismatches, secs)};
}

std::vector<std::vector<int>> bbox_mask(const GridObject& o) {
    std::vector<std::vector<int>> m(o.bbox.height(), std::vector<int>(o.bbox.width(), 0));
    for (const Cell& c : o.mask) m[c.row - o.bbox.top][c.col - o.bbox.left] = 1;
    return m;
}

// 2. Cavities against a region-labeling oracle; solid shapes and single holes exactly.
Outcome cavity_oracle() {
    std::mt19937_64 rng(202);
    int masks = 0, objects = 0, wrong = 0, with_holes = 0;
    for (; masks < 500; ++masks) {
        const int h = oracle::uniform(rng, 3, 16), w = oracle::uniform(rng, 3, 16);
        const int density = oracle::uniform(rng, 55, 85);
        Grid g(h, w, 0);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (oracle::uniform(rng, 0, 99) < density) g.set(r, c, 1);
        for (const GridObject& o : segment_with_background(g, 0).objects) {
            ++objects;
            const int want = oracle::count_holes(bbox_mask(o));
            with_holes += want > 0;
            if (detect_cavities(o, g.dims()) != want || o.cavity_count != want) ++wrong;
        }
    }
    int solid_wrong = 0, ring_wrong = 0;
    for (int i = 0; i < 200; ++i) {
        const int h = oracle::uniform(rng, 3, 12), w = oracle::uniform(rng, 3, 12);
        // Solid rectangle, optionally with notches bitten out of the border.
        Grid solid(h + 2, w + 2, 0);
        for (int r = 1; r <= h; ++r)
            for (int c = 1; c <= w; ++c) solid.set(r, c, 4);
        if (i % 2) solid.set(1, oracle::uniform(rng, 1, w), 0);
        const auto sp = segment_with_background(solid, 0).objects;
        if (sp.size() != 1 || sp[0].cavity_count != 0) ++solid_wrong;
        // Frame enclosing one rectangular hole of random size.
        Grid ring(h + 2, w + 2, 0);
        const int hh = oracle::uniform(rng, 1, h - 2), hw = oracle::uniform(rng, 1, w - 2);
        const int top = oracle::uniform(rng, 2, h - hh), left = oracle::uniform(rng, 2, w - hw);
        for (int r = 1; r <= h; ++r)
            for (int c = 1; c <= w; ++c)
                if (r < top || r >= top + hh || c < left || c >= left + hw) ring.set(r, c, 6);
        const auto rp = segment_with_background(ring, 0).objects;
        if (rp.size() != 1 || rp[0].cavity_count != 1) ++ring_wrong;
    }
    return {wrong == 0 && solid_wrong == 0 && ring_wrong == 0,
            fmt("%d masks, %d objects (%d with holes), %d mismatches; solid %d/200 wrong, one-hole %d/200 wrong", masks,
                objects, with_holes, wrong, solid_wrong, ring_wrong)};
}

// 3. Group laws and translate inverse, 200 grids each.
Outcome group_laws() {
    std::mt19937_64 rng(303);
    int failures = 0;
    auto law = [&](const std::function<bool(const Grid&)>& holds, const std::function<Grid()>& make) {
        for (int i = 0; i < 200; ++i) failures += !holds(make());
    };
    auto any = [&] { return oracle::random_grid(rng); };
    auto ap = [](std::string_view p, const Grid& g) { return apply_pattern(P(p), g); };
    law([&](const Grid& g) { return grids_equal(ap("rotate90", ap("rotate90", ap("rotate90", ap("rotate90", g)))), g); },
        any);
    law([&](const Grid& g) { return grids_equal(ap("reflect_h", ap("reflect_h", g)), g); }, any);
    law([&](const Grid& g) { return grids_equal(ap("reflect_v", ap("reflect_v", g)), g); }, any);
    law([&](const Grid& g) { return grids_equal(ap("rotate180", g), ap("rotate90", ap("rotate90", g))); }, any);
    int translate_cases = 0;
    for (int i = 0; i < 200; ++i) {
        const int dx = oracle::uniform(rng, -4, 4), dy = oracle::uniform(rng, -4, 4);
        if (dx == 0 && dy == 0) {
            --i;
            continue;
        }
        const Grid inner = oracle::random_grid(rng, oracle::uniform(rng, 1, 12), oracle::uniform(rng, 1, 12), 5, 40);
        Grid g(inner.height() + 8, inner.width() + 8, 0);
        for (int r = 0; r < inner.height(); ++r)
            for (int c = 0; c < inner.width(); ++c) g.set(r + 4, c + 4, inner.at(r, c));
        if (background_color(g) != 0) {
            --i;
            continue;
        }
        ++translate_cases;
        const UnitPattern fwd{PatternKind::translate, Selector::all(), {dx, dy}};
        const UnitPattern back{PatternKind::translate, Selector::all(), {-dx, -dy}};
        failures += !grids_equal(apply_pattern(back, apply_pattern(fwd, g)), g);
    }
    return {failures == 0, fmt("%d failures over 4x200 grids + %d translate round trips", failures, translate_cases)};
}

// 4. Plant and recover: >= 95% recovered exact, >= 99% of those ranked first.
Outcome plant_and_recover() {
    std::mt19937_64 rng(404);
    SearchProposer search;
    int recovered = 0, first = 0;
    for (int i = 0; i < 500; ++i) {
        const auto pt = synth::plant_random_task(rng);
        const auto cands = enumerate_candidates(pt.task.train[0]);
        const bool found = std::any_of(cands.begin(), cands.end(), [&](const PatternCandidate& c) {
            return c.pattern == pt.pattern && c.fit == Fit::exact;
        });
        if (!found) continue;
        ++recovered;
        const Induction ind = induce(pt.task, search);
        if (!ind.rules.patterns.empty() && ind.rules.patterns[0].pattern == pt.pattern) ++first;
    }
    const double rec = recovered / 500.0;
    const double top = recovered ? static_cast<double>(first) / recovered : 0.0;
    return {rec >= 0.95 && top >= 0.99,
            fmt("recovered %d/500 (%.1f%%, need 95%%), ranked first %d/%d (%.1f%%, need 99%%)", recovered, 100 * rec,
                first, recovered, 100 * top)};
}

// 5. Spurious rules: exact on pair 1, wrong on pair 2, excluded at every threshold.
Outcome spurious_rejection() {
    std::mt19937_64 rng(505);
    SearchProposer search;
    int fixtures = 0, leaked = 0, spurious_total = 0;
    while (fixtures < 50) {
        const auto a = synth::plant_random_task(rng, 1);
        const auto b = synth::plant_random_task(rng, 1);
        const std::vector<TrainPair> train{a.task.train[0], b.task.train[0]};
        // Brute force: every pattern exact on pair 1 that applies to pair 2 and gets it wrong.
        std::vector<UnitPattern> spurious;
        for (const auto& c : enumerate_candidates(train[0])) {
            if (c.fit != Fit::exact) continue;
            try {
                if (!grids_equal(apply_pattern(c.pattern, train[1].input), train[1].output)) spurious.push_back(c.pattern);
            } catch (const ApplyError&) {
            }
        }
        if (spurious.empty()) continue;
        ++fixtures;
        spurious_total += static_cast<int>(spurious.size());
        std::vector<std::vector<ScoredPattern>> honest{detect_unit_patterns(train[0], search, 2000).patterns,
                                                      detect_unit_patterns(train[1], search, 2000).patterns};
        // A lying proposer also claims every spurious pattern is exact on pair 2.
        auto lying = honest;
        for (const auto& p : spurious) lying[1].push_back({p, 1, 1.0, true});
        bool clean = true;
        for (const auto* lists : {&honest, &lying}) {
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const RuleSet rs = intersect_patterns(*lists, train, {t});
                for (const auto& sp : rs.patterns) {
                    if (std::find(spurious.begin(), spurious.end(), sp.pattern) != spurious.end()) clean = false;
                }
            }
        }
        leaked += !clean;
    }
    return {leaked == 0,
            fmt("%d/50 fixtures leaked a spurious rule (%d spurious patterns, 5 thresholds, honest and lying proposer)",
                leaked, spurious_total)};
}

// 6. Vote against the histogram oracle; unanimity and scale invariance.
Outcome vote_oracle() {
    std::mt19937_64 rng(606);
    const double weights[] = {0.25, 0.5, 1.0, 1.5, 2.0};
    int wrong = 0, mixed = 0, unanimity = 0, scale = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = oracle::uniform(rng, 1, 10);
        const int h = oracle::uniform(rng, 1, 15), w = oracle::uniform(rng, 1, 15);
        const bool mix = i % 2 == 0;
        mixed += mix;
        std::vector<Candidate> cands;
        for (int k = 0; k < n; ++k) {
            const int hh = mix ? oracle::uniform(rng, h, h + 1) : h;
            const int ww = mix ? oracle::uniform(rng, w, w + 1) : w;
            cands.push_back({oracle::random_grid(rng, hh, ww, oracle::uniform(rng, 2, 5), 0),
                             CandidateSource::remote_sample, weights[oracle::uniform(rng, 0, 4)], std::nullopt});
        }
        const Grid got = vote_pixels(cands);
        wrong += !grids_equal(got, oracle::vote(cands));
        for (double factor : {0.001, 3.0, 1e6}) {
            auto scaled = cands;
            for (auto& c : scaled) c.weight *= factor;
            scale += !grids_equal(vote_pixels(scaled), got);
        }
        std::vector<Candidate> same(n, cands[0]);
        for (auto& c : same) c.weight = weights[oracle::uniform(rng, 0, 4)];
        unanimity += !grids_equal(vote_pixels(same), cands[0].grid);
    }
    return {wrong == 0 && unanimity == 0 && scale == 0,
            fmt("%d/200 oracle mismatches (%d mixed-dimension), unanimity failures %d, scale failures %d", wrong, mixed,
                unanimity, scale)};
}

// 7. Synthetic suite: 100/100 at passes=1 without a backend in < 60 s; 100/120 with noise.
Outcome synthetic_benchmark() {
    PipelineOptions opts;
    opts.passes = 1;
    opts.samples = 0;
    SearchProposer search;
    const auto t0 = Clock::now();
    const EvalReport planted = evaluate(synth::generate_suite({100, 0, 707}), opts, search, nullptr);
    const double secs = seconds_since(t0);
    const EvalReport noisy = evaluate(synth::generate_suite({100, 20, 707}), opts, search, nullptr);
    const bool ok = planted.correct == 100 && planted.scored == 100 && secs < 60.0 && noisy.correct == 100 &&
                    noisy.scored == 120;
    return {ok, fmt("planted %d/%d in %.2fs (limit 60s); with noise %d/%d", planted.correct, planted.scored, secs,
                    noisy.correct, noisy.scored)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<std::string> run_capture(const std::string& command) {
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    if (::pclose(pipe) != 0) return std::nullopt;
    return out;
}

// 8. Replayed solve is byte-identical across runs and matches the checked-in
// golden output (produced on another machine).
Outcome replay_determinism(const std::string& cli, const std::string& data) {
    const std::string golden = read_file(data + "/replay_golden.txt");
    if (golden.empty()) return {false, "missing golden file " + data + "/replay_golden.txt"};
    const std::string command = "\"" + cli + "\" solve \"" + data + "/replay_task.json\" --transcript \"" + data +
                                "/replay_transcript.json\" --samples 3 2>/dev/null";
    int identical = 0;
    for (int i = 0; i < 5; ++i) {
        const auto out = run_capture(command);
        identical += out && *out == golden;
    }
    return {identical == 5, fmt("%d/5 runs byte-identical to the golden output (%zu bytes)", identical, golden.size())};
}

// 9. Markdown round trip on 10,000 grids; ragged fuzz corpus rejected.
Outcome markdown_round_trip() {
    std::mt19937_64 rng(909);
    int broken = 0;
    for (int i = 0; i < 10000; ++i) {
        const Grid g = oracle::random_grid(rng);
        try {
            broken += !grids_equal(decode_markdown(encode_markdown(g)), g);
        } catch (const Error&) {
            ++broken;
        }
    }
    int accepted = 0, wrong_error = 0;
    const int corpus = 2000;
    for (int i = 0; i < corpus; ++i) {
        const Grid g = oracle::random_grid(rng, oracle::uniform(rng, 2, 30), oracle::uniform(rng, 1, 30));
        std::vector<std::string> rows;
        std::istringstream lines(encode_markdown(g));
        for (std::string line; std::getline(lines, line);) rows.push_back(line);
        std::string& victim = rows[oracle::uniform(rng, 0, static_cast<int>(rows.size()) - 1)];
        const bool grow = victim.size() <= 3 || oracle::uniform(rng, 0, 1);
        if (grow) {
            for (int k = oracle::uniform(rng, 1, 3); k > 0; --k) victim += std::to_string(oracle::uniform(rng, 0, 9)) + "|";
        } else {
            // Drop trailing cells, keeping the row well-formed.
            const int drop = oracle::uniform(rng, 1, std::max(1, g.width() - 1));
            for (int k = 0; k < drop && victim.size() > 3; ++k) victim.erase(victim.size() - 2);
        }
        std::string text;
        for (const auto& r : rows) text += r + "\n";
        try {
            decode_markdown(text);
            ++accepted;
        } catch (const ShapeError&) {
        } catch (...) {
            ++wrong_error;
        }
    }
    return {broken == 0 && accepted == 0 && wrong_error == 0,
            fmt("%d/10000 round-trip failures; ragged corpus %d: accepted %d, non-shape errors %d", broken, corpus,
                accepted, wrong_error)};
}

// 10. segment() per-cell cost across 10x10, 20x20, 30x30 within 2x.
Outcome perception_linearity() {
    std::mt19937_64 rng(1010);
    std::vector<double> per_cell;
    std::string detail;
    for (int n : {10, 20, 30}) {
        std::vector<Grid> grids;
        for (int i = 0; i < 64; ++i) grids.push_back(oracle::random_grid(rng, n, n, 4, 50));
        std::vector<double> trials;
        for (int t = 0; t < 7; ++t) {
            std::size_t sink = 0;
            int reps = 0;
            const auto t0 = Clock::now();
            do {
                for (const Grid& g : grids) sink += segment(g).objects.size();
                ++reps;
            } while (seconds_since(t0) < 0.05);
            trials.push_back(seconds_since(t0) / (reps * grids.size() * n * n) + (sink == 0 ? 1e-30 : 0.0));
        }
        std::sort(trials.begin(), trials.end());
        per_cell.push_back(trials[trials.size() / 2]);
        detail += fmt("%dx%d %.1fns/cell ", n, n, 1e9 * per_cell.back());
    }
    const double ratio = *std::max_element(per_cell.begin(), per_cell.end()) /
                         *std::min_element(per_cell.begin(), per_cell.end());
    return {ratio <= 2.0, detail + fmt("(max/min %.2f, limit 2.00)", ratio)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string cli_path;
    std::string data_dir;
    app.add_option("--cli", cli_path, "path to the arcsolve binary")->required();
    app.add_option("--data", data_dir, "test data directory")->required();
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"segmentation matches union-find oracle", segmentation_oracle},
        {"cavity detection matches region oracle", cavity_oracle},
        {"DSL group laws", group_laws},
        {"plant and recover", plant_and_recover},
        {"spurious rule rejection", spurious_rejection},
        {"vote matches histogram oracle", vote_oracle},
        {"synthetic end-to-end benchmark", synthetic_benchmark},
        {"replay determinism", [&] { return replay_determinism(cli_path, data_dir); }},
        {"markdown round trip and ragged rejection", markdown_round_trip},
        {"perception linear in cell count", perception_linearity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " - "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
