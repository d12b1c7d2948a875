#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "arcsolve/error.hpp"
#include "arcsolve/induction.hpp"
#include "arcsolve/search.hpp"
#include "arcsolve/synth.hpp"
#include "oracles.hpp"

using namespace arcsolve;

namespace {

UnitPattern P(std::string_view text) { return parse_pattern(text); }

TrainPair planted(const Grid& in, std::string_view pattern) { return {in, apply_pattern(P(pattern), in)}; }

bool has_exact(const std::vector<PatternCandidate>& cands, const UnitPattern& p) {
    return std::any_of(cands.begin(), cands.end(),
                       [&](const PatternCandidate& c) { return c.pattern == p && c.fit == Fit::exact; });
}

// Replays fixed pattern lines regardless of the pair.
class ScriptedProposer final : public Proposer {
public:
    explicit ScriptedProposer(std::vector<std::string> lines) : lines_(std::move(lines)) {}
    Proposal propose(const TrainPair&, int) override { return proposal_from_lines(lines_); }

private:
    std::vector<std::string> lines_;
};

const Grid kA{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
const Grid kB{{2, 0, 5}, {0, 7, 1}, {3, 3, 6}};
const Grid kC{{9, 1, 4}, {8, 2, 0}, {6, 5, 7}};

// Non-touching solid rectangles in distinct colors, so every edit is
// unambiguous to a reader.
struct Scene {
    struct Box {
        int r, c, h, w;
        Color color;
    };
    std::vector<Box> boxes;
    int height = 14, width = 14;

    Grid render() const {
        Grid g(height, width, 0);
        for (const Box& b : boxes) {
            for (int r = b.r; r < b.r + b.h; ++r)
                for (int c = b.c; c < b.c + b.w; ++c) g.set(r, c, b.color);
        }
        return g;
    }
    bool fits(const Box& n, int skip = -1) const {
        if (n.r < 0 || n.c < 0 || n.r + n.h > height || n.c + n.w > width) return false;
        for (int i = 0; i < static_cast<int>(boxes.size()); ++i) {
            if (i == skip) continue;
            const Box& b = boxes[i];
            if (n.r <= b.r + b.h && b.r <= n.r + n.h && n.c <= b.c + b.w && b.c <= n.c + n.w) return false;
        }
        return true;
    }
};

Scene random_scene(std::mt19937_64& rng, int objects) {
    Scene s;
    Color next = 1;
    while (static_cast<int>(s.boxes.size()) < objects) {
        Scene::Box b{oracle::uniform(rng, 0, 11), oracle::uniform(rng, 0, 11), oracle::uniform(rng, 1, 3),
                     oracle::uniform(rng, 1, 3), next};
        if (s.fits(b)) {
            s.boxes.push_back(b);
            ++next;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("search finds a planted rotation") {
    const auto cands = enumerate_candidates(planted(kA, "rotate90"));
    CHECK(has_exact(cands, P("rotate90")));
    CHECK(cands.front().pattern == P("rotate90"));
}

TEST_CASE("search on an unchanged pair never returns a no-op") {
    const Grid g{{0, 0, 0, 0}, {0, 3, 3, 0}, {0, 0, 0, 0}, {0, 0, 0, 5}};
    for (const auto& c : enumerate_candidates({g, g})) {
        CAPTURE(to_string(c.pattern));
        CHECK(c.pattern.kind != PatternKind::translate);
        CHECK(c.fit == Fit::exact);  // a partial would need to be strictly closer than distance 0
        CHECK(grids_equal(apply_pattern(c.pattern, g), g));
    }
}

TEST_CASE("search budget must be positive") {
    SearchOptions opts;
    opts.budget = 0;
    CHECK_THROWS_AS(enumerate_candidates(planted(kA, "rotate90"), opts), ContractError);
    opts.budget = 1;
    CHECK(enumerate_candidates(planted(kA, "rotate90"), opts).size() <= 1);
}

TEST_CASE("exact and partial flags are sound") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const TrainPair pair = i % 2 ? synth::plant_random_task(rng).task.train[0]
                                     : synth::noise_task(rng).train[0];
        const std::size_t base = pixel_distance(pair.input, pair.output);
        for (const auto& c : enumerate_candidates(pair)) {
            CAPTURE(to_string(c.pattern));
            const Grid got = apply_pattern(c.pattern, pair.input);
            if (c.fit == Fit::exact) {
                CHECK(grids_equal(got, pair.output));
            } else {
                CHECK(got.dims() == pair.output.dims());
                CHECK(pixel_distance(got, pair.output) < base);
                CHECK_FALSE(grids_equal(got, pair.input));
                CHECK(c.distance == pixel_distance(got, pair.output));
            }
        }
    }
}

TEST_CASE("a partial candidate explains part of the change") {
    // Color 1 is recolored to 4 and color 2 disappears: recolor alone is partial.
    const Grid in{{1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 2}};
    const Grid out{{4, 4, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    const auto cands = enumerate_candidates({in, out});
    const auto it = std::find_if(cands.begin(), cands.end(),
                                 [](const PatternCandidate& c) { return c.pattern == P("recolor(to=4)@color=1"); });
    REQUIRE(it != cands.end());
    CHECK(it->fit == Fit::partial);
    CHECK(it->distance == 1);
}

TEST_CASE("plant and recover on 200 pairs") {
    std::mt19937_64 rng(11);
    int recovered = 0;
    for (int i = 0; i < 200; ++i) {
        const auto planted_task = synth::plant_random_task(rng);
        if (has_exact(enumerate_candidates(planted_task.task.train[0]), planted_task.pattern)) ++recovered;
    }
    CHECK(recovered >= 190);
}

TEST_CASE("match_objects on identical scenes") {
    const Grid g{{1, 0, 2}, {0, 0, 2}, {3, 0, 0}};
    const Perception p = segment(g);
    const auto tags = match_objects(p, p);
    REQUIRE(tags.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(tags[i].tag == ChangeKind::retained);
        CHECK(tags[i].input_id == i);
        CHECK(tags[i].output_id == i);
        CHECK(tags[i].tier == MatchTier::identical);
    }
}

TEST_CASE("match_objects recognises planted edits") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        Scene in = random_scene(rng, oracle::uniform(rng, 2, 5));
        Scene out = in;
        const int victim = oracle::uniform(rng, 0, static_cast<int>(in.boxes.size()) - 1);
        const int edit = i % 3;
        if (edit == 0) {
            out.boxes.erase(out.boxes.begin() + victim);
        } else if (edit == 1) {
            Scene::Box extra{0, 0, 1, 1, 9};
            do {
                extra.r = oracle::uniform(rng, 0, 13);
                extra.c = oracle::uniform(rng, 0, 13);
            } while (!out.fits(extra));
            out.boxes.push_back(extra);
        } else {
            Scene::Box moved = out.boxes[victim];
            do {
                moved.r = oracle::uniform(rng, 0, 11);
                moved.c = oracle::uniform(rng, 0, 11);
            } while (!out.fits(moved, victim) ||
                     (moved.r == in.boxes[victim].r && moved.c == in.boxes[victim].c));
            out.boxes[victim] = moved;
        }
        const Perception pin = segment(in.render());
        const Perception pout = segment(out.render());
        const auto tags = match_objects(pin, pout);
        auto count = [&](ChangeKind k) {
            return std::count_if(tags.begin(), tags.end(), [&](const ChangeTag& t) { return t.tag == k; });
        };
        auto input_id_of = [&](Color c) {
            for (const auto& o : pin.objects)
                if (o.color == c) return o.id;
            return -1;
        };
        CAPTURE(edit);
        if (edit == 0) {
            CHECK(count(ChangeKind::removed) == 1);
            CHECK(count(ChangeKind::added) == 0);
            for (const auto& t : tags) {
                if (t.tag == ChangeKind::removed) CHECK(*t.input_id == input_id_of(in.boxes[victim].color));
            }
        } else if (edit == 1) {
            CHECK(count(ChangeKind::added) == 1);
            CHECK(count(ChangeKind::removed) == 0);
            CHECK(tags.back().tag == ChangeKind::added);
            CHECK(pout.objects[*tags.back().output_id].color == 9);
        } else {
            CHECK(count(ChangeKind::retained) == static_cast<long>(in.boxes.size()));
            for (const auto& t : tags) {
                if (t.input_id == input_id_of(in.boxes[victim].color)) CHECK(t.tier == MatchTier::translated);
            }
        }
        for (const auto& t : tags) {
            CHECK(t.input_id.has_value() == (t.tag != ChangeKind::added));
            CHECK(t.output_id.has_value() == (t.tag != ChangeKind::removed));
        }
    }
}

TEST_CASE("match_objects recolor tier") {
    const auto tags = match_objects(segment(Grid{{1, 1, 0}, {0, 0, 0}}), segment(Grid{{4, 4, 0}, {0, 0, 0}}));
    REQUIRE(tags.size() == 1);
    CHECK(tags[0].tier == MatchTier::recolored);
}

TEST_CASE("proposal_from_lines drops malformed lines") {
    const std::vector<std::string> lines{"rotate90", "", "# note", "warp(k=2)", "recolor(to=3)@color=1  # ok"};
    const Proposal p = proposal_from_lines(lines);
    REQUIRE(p.patterns.size() == 2);
    CHECK(p.patterns[1] == P("recolor(to=3)@color=1"));
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].find("line 4") != std::string::npos);
}

TEST_CASE("detect_unit_patterns re-checks proposer claims") {
    ScriptedProposer liar({"rotate90", "reflect_h", "reflect_h", "bogus", "translate(dx=0,dy=0)"});
    const PairPatterns found = detect_unit_patterns(planted(kA, "reflect_h"), liar, 100);
    REQUIRE(found.patterns.size() == 1);
    CHECK(found.patterns[0].pattern == P("reflect_h"));
    CHECK(found.patterns[0].exact);
    CHECK(found.warnings.size() == 1);

    SearchProposer search;
    const PairPatterns r = detect_unit_patterns(planted(kA, "reflect_h"), search, 2000);
    CHECK(std::any_of(r.patterns.begin(), r.patterns.end(),
                      [](const ScoredPattern& s) { return s.pattern == P("reflect_h") && s.exact; }));
    CHECK(std::is_sorted(r.patterns.begin(), r.patterns.end(),
                         [](const ScoredPattern& a, const ScoredPattern& b) { return a.pattern < b.pattern; }));
}

TEST_CASE("noise pairs never yield a fabricated exact pattern") {
    std::mt19937_64 rng(8);
    SearchProposer search;
    for (int i = 0; i < 40; ++i) {
        const TrainPair pair = synth::noise_task(rng).train[0];
        for (const auto& s : detect_unit_patterns(pair, search, 2000).patterns) {
            if (s.exact) CHECK(grids_equal(apply_pattern(s.pattern, pair.input), pair.output));
        }
    }
}

TEST_CASE("intersection: unanimous, threshold and contradiction") {
    const std::vector<TrainPair> rot{planted(kA, "rotate90"), planted(kB, "rotate90"), planted(kC, "rotate90")};
    const ScoredPattern r90{P("rotate90"), 1, 1.0, true};
    std::vector<std::vector<ScoredPattern>> lists{{r90}, {r90}, {r90}};
    const RuleSet all = intersect_patterns(lists, rot);
    REQUIRE(all.patterns.size() == 1);
    CHECK(all.patterns[0].pattern == P("rotate90"));
    CHECK(all.patterns[0].confidence == 1.0);
    CHECK(all.patterns[0].support == 3);
    CHECK(all.hints == std::vector<std::string>{"rotate the grid 90 degrees clockwise"});

    // rotate90 explains pairs 0 and 1 only.
    const std::vector<TrainPair> mixed{planted(kA, "rotate90"), planted(kB, "rotate90"), planted(kC, "reflect_h")};
    lists = {{r90}, {r90}, {{P("reflect_h"), 1, 1.0, true}}};
    CHECK(intersect_patterns(lists, mixed).patterns.empty());
    const RuleSet loose = intersect_patterns(lists, mixed, {0.6});
    REQUIRE(loose.patterns.size() == 1);
    CHECK(loose.patterns[0].pattern == P("rotate90"));
    CHECK(loose.patterns[0].confidence == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(intersect_patterns({}, {}), ContractError);
    CHECK_THROWS_AS(intersect_patterns(lists, std::span(mixed).first(2)), ContractError);
}

TEST_CASE("spurious pattern exact on one pair and wrong on another is dropped") {
    // rotate90 reproduces pair 0 but not pair 1; the proposer flags it exact on both.
    const std::vector<TrainPair> train{planted(kA, "rotate90"), planted(kB, "reflect_h")};
    const ScoredPattern claim{P("rotate90"), 1, 1.0, true};
    const std::vector<std::vector<ScoredPattern>> lists{{claim}, {claim}};
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(intersect_patterns(lists, train, {t}).patterns.empty());
    // Flagged exact only where it is: still wrong on as many pairs as it is right.
    const std::vector<std::vector<ScoredPattern>> honest{{claim}, {}};
    for (double t : {0.0, 0.5}) CHECK(intersect_patterns(honest, train, {t}).patterns.empty());
}

TEST_CASE("raising the threshold never adds patterns") {
    std::mt19937_64 rng(4);
    SearchProposer search;
    for (int i = 0; i < 20; ++i) {
        const Task task = synth::plant_random_task(rng).task;
        Induction ind = induce(task, search);
        std::vector<UnitPattern> prev;
        bool first = true;
        for (double t : {0.0, 0.34, 0.67, 1.0}) {
            std::vector<UnitPattern> cur;
            for (const auto& s : intersect_patterns(ind.per_pair, task.train, {t}).patterns) cur.push_back(s.pattern);
            std::sort(cur.begin(), cur.end());
            if (!first) CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
            prev = cur;
            first = false;
        }
    }
}

TEST_CASE("ruleset order") {
    const std::vector<TrainPair> train{planted(kA, "rotate90"), planted(kB, "rotate90")};
    const std::vector<std::vector<ScoredPattern>> lists{
        {{P("recolor(to=1)@color=2"), 1, 1.0, false}, {P("rotate90"), 1, 1.0, true}},
        {{P("recolor(to=1)@color=2"), 1, 1.0, false}, {P("rotate90"), 1, 1.0, true}, {P("reflect_h"), 1, 1.0, false}}};
    const RuleSet rs = intersect_patterns(lists, train, {0.5});
    REQUIRE(rs.patterns.size() == 3);
    CHECK(rs.patterns[0].pattern == P("rotate90"));
    CHECK(rs.patterns[1].pattern == P("recolor(to=1)@color=2"));
    CHECK(rs.patterns[2].pattern == P("reflect_h"));
    CHECK(rs.hints.size() == 3);
}

TEST_CASE("hint templates") {
    CHECK(hint_for(P("rotate90")) == "rotate the grid 90 degrees clockwise");
    CHECK(hint_for(P("cavity_fill(color=2)@color=4")) == "fill the cavities of the color-4 objects with color 2");
    CHECK(synthesize_hints(RuleSet{}).empty());
    for (const auto& k : all_kinds()) {
        UnitPattern p{k.kind, {}, {1, 2}};
        if (k.kind == PatternKind::scale_up || k.kind == PatternKind::scale_down) p.args = {2, 0};
        if (k.kind == PatternKind::tile_grid) p.args = {2, 2};
        CAPTURE(k.name);
        CHECK_FALSE(hint_for(p).empty());
    }
}

TEST_CASE("induce on a planted task ranks the planted pattern first") {
    std::mt19937_64 rng(17);
    SearchProposer search;
    int first = 0;
    for (int i = 0; i < 46; ++i) {
        const auto pt = synth::plant_task(rng, static_cast<PatternKind>(i % kNumPatternKinds));
        const Induction ind = induce(pt.task, search);
        if (!ind.rules.patterns.empty() && ind.rules.patterns[0].pattern == pt.pattern) ++first;
    }
    CHECK(first == 46);
}
