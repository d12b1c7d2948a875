#include "arcsolve/induction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arcsolve/error.hpp"

namespace arcsolve {
namespace {

bool tier_matches(MatchTier tier, const GridObject& a, const GridObject& b) {
    switch (tier) {
        case MatchTier::identical:
            return a.color == b.color && a.mask == b.mask;
        case MatchTier::translated:
            return a.color == b.color && same_shape(a, b);
        case MatchTier::recolored:
            return a.color != b.color && same_shape(a, b);
        case MatchTier::none:
            return false;
    }
    return false;
}

}  // namespace

std::string_view to_string(ChangeKind k) noexcept {
    switch (k) {
        case ChangeKind::added:
            return "added";
        case ChangeKind::removed:
            return "removed";
        case ChangeKind::retained:
            return "retained";
    }
    return "?";
}

std::vector<ChangeTag> match_objects(const Perception& in, const Perception& out) {
    std::vector<int> partner(in.objects.size(), -1);
    std::vector<MatchTier> partner_tier(in.objects.size(), MatchTier::none);
    std::vector<bool> taken(out.objects.size(), false);
    for (MatchTier tier : {MatchTier::identical, MatchTier::translated, MatchTier::recolored}) {
        for (std::size_t i = 0; i < in.objects.size(); ++i) {
            if (partner[i] >= 0) continue;
            for (std::size_t j = 0; j < out.objects.size(); ++j) {
                if (taken[j] || !tier_matches(tier, in.objects[i], out.objects[j])) continue;
                partner[i] = static_cast<int>(j);
                partner_tier[i] = tier;
                taken[j] = true;
                break;
            }
        }
    }
    std::vector<ChangeTag> tags;
    for (std::size_t i = 0; i < in.objects.size(); ++i) {
        if (partner[i] >= 0) tags.push_back({ChangeKind::retained, static_cast<int>(i), partner[i], partner_tier[i]});
    }
    for (std::size_t i = 0; i < in.objects.size(); ++i) {
        if (partner[i] < 0) tags.push_back({ChangeKind::removed, static_cast<int>(i), std::nullopt, MatchTier::none});
    }
    for (std::size_t j = 0; j < out.objects.size(); ++j) {
        if (!taken[j]) tags.push_back({ChangeKind::added, std::nullopt, static_cast<int>(j), MatchTier::none});
    }
    return tags;
}

Proposal SearchProposer::propose(const TrainPair& pair, int budget) {
    SearchOptions opts = opts_;
    opts.budget = budget;
    Proposal proposal;
    for (const PatternCandidate& c : enumerate_candidates(pair, opts)) proposal.patterns.push_back(c.pattern);
    return proposal;
}

Proposal proposal_from_lines(std::span<const std::string> lines) {
    Proposal proposal;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            proposal.patterns.push_back(parse_pattern(line));
        } catch (const ContractError& e) {
            proposal.warnings.push_back("dropped proposer line " + std::to_string(i + 1) + " '" + lines[i] +
                                        "': " + e.what());
        }
    }
    return proposal;
}

PairPatterns detect_unit_patterns(const TrainPair& pair, Proposer& proposer, int budget, Connectivity conn) {
    Proposal proposal = proposer.propose(pair, budget);
    PairPatterns out;
    out.warnings = std::move(proposal.warnings);

    const Perception scene = segment(pair.input, conn);
    std::set<UnitPattern> seen;
    for (const UnitPattern& raw : proposal.patterns) {
        std::optional<UnitPattern> p;
        try {
            p = canonicalize(raw);
        } catch (const ContractError& e) {
            out.warnings.push_back("dropped invalid pattern: " + std::string(e.what()));
            continue;
        }
        if (!p || !seen.insert(*p).second) continue;
        if (const auto fit = classify(*p, pair, scene)) {
            out.patterns.push_back({*p, 1, 1.0, fit->fit == Fit::exact});
        }
    }
    std::sort(out.patterns.begin(), out.patterns.end(),
              [](const ScoredPattern& a, const ScoredPattern& b) { return a.pattern < b.pattern; });
    return out;
}

RuleSet intersect_patterns(std::span<const std::vector<ScoredPattern>> per_pair, std::span<const TrainPair> train,
                           const IntersectOptions& opts) {
    if (per_pair.empty()) throw ContractError("intersect_patterns needs at least one pattern list");
    if (per_pair.size() != train.size()) throw ContractError("one pattern list per train pair is required");

    struct Tally {
        int support = 0;
        bool exact_everywhere = true;
        std::vector<std::size_t> exact_pairs;
    };
    std::map<UnitPattern, Tally> tallies;
    for (std::size_t k = 0; k < per_pair.size(); ++k) {
        std::set<UnitPattern> in_this_pair;  // duplicates within a pair count once
        std::set<UnitPattern> exact_here;
        for (const ScoredPattern& sp : per_pair[k]) {
            in_this_pair.insert(sp.pattern);
            if (sp.exact) exact_here.insert(sp.pattern);
        }
        for (const UnitPattern& p : in_this_pair) {
            Tally& t = tallies[p];
            ++t.support;
            if (exact_here.count(p)) {
                t.exact_pairs.push_back(k);
            } else {
                t.exact_everywhere = false;
            }
        }
    }

    std::vector<std::optional<Perception>> scenes(train.size());
    auto scene_for = [&](std::size_t k) -> const Perception& {
        if (!scenes[k]) scenes[k] = segment(train[k].input, opts.connectivity);
        return *scenes[k];
    };
    auto reproduces = [&](const UnitPattern& p, std::size_t k) -> std::optional<bool> {
        try {
            return grids_equal(apply_pattern(p, train[k].input, scene_for(k)), train[k].output);
        } catch (const ApplyError&) {
            return std::nullopt;
        }
    };

    const double pairs = static_cast<double>(per_pair.size());
    RuleSet rs;
    rs.pair_count = static_cast<int>(per_pair.size());
    for (const auto& [pattern, tally] : tallies) {
        const double confidence = tally.support / pairs;
        if (confidence + 1e-12 < opts.threshold) continue;
        if (!tally.exact_pairs.empty()) {
            bool fabricated = false;
            for (std::size_t k : tally.exact_pairs) {
                if (reproduces(pattern, k) != true) fabricated = true;
            }
            if (fabricated) continue;
            int right = 0;
            int wrong = 0;
            for (std::size_t k = 0; k < train.size(); ++k) {
                const auto ok = reproduces(pattern, k);
                if (!ok) continue;
                ++(*ok ? right : wrong);
            }
            if (wrong >= right) continue;
        }
        rs.patterns.push_back({pattern, tally.support, confidence, tally.exact_everywhere});
    }
    std::sort(rs.patterns.begin(), rs.patterns.end(), [](const ScoredPattern& a, const ScoredPattern& b) {
        if (a.support != b.support) return a.support > b.support;
        if (a.exact != b.exact) return a.exact;
        return a.pattern < b.pattern;
    });
    rs.hints = synthesize_hints(rs);
    return rs;
}

namespace {

std::string subject(const Selector& s) {
    switch (s.kind) {
        case SelectorKind::all:
            return "all objects";
        case SelectorKind::color:
            return "the color-" + std::to_string(s.value) + " objects";
        case SelectorKind::size_rank:
            if (s.value == 0) return "the largest object";
            return "the object of size rank " + std::to_string(s.value);
        case SelectorKind::cavities:
            return "the objects with " + std::to_string(s.value) + (s.value == 1 ? " cavity" : " cavities");
    }
    return "all objects";
}

std::string cells(int n) { return std::to_string(n) + (n == 1 ? " cell" : " cells"); }

std::string offset_phrase(int dx, int dy) {
    std::string out;
    if (dx != 0) out += cells(std::abs(dx)) + (dx > 0 ? " right" : " left");
    if (dy != 0) {
        if (!out.empty()) out += " and ";
        out += cells(std::abs(dy)) + (dy > 0 ? " down" : " up");
    }
    return out;
}

}  // namespace

std::string hint_for(const UnitPattern& p) {
    using PK = PatternKind;
    const std::string who = subject(p.selector);
    const int a = p.args[0];
    const int b = p.args[1];
    switch (p.kind) {
        case PK::rotate90:
            return "rotate the grid 90 degrees clockwise";
        case PK::rotate180:
            return "rotate the grid 180 degrees";
        case PK::rotate270:
            return "rotate the grid 90 degrees counterclockwise";
        case PK::reflect_h:
            return "mirror the grid left to right";
        case PK::reflect_v:
            return "mirror the grid top to bottom";
        case PK::crop_to_content:
            return "crop the grid to the bounding box of its content";
        case PK::scale_up:
            return "scale the grid up by a factor of " + std::to_string(a);
        case PK::scale_down:
            return "scale the grid down by a factor of " + std::to_string(a);
        case PK::tile_grid:
            return "tile the grid " + std::to_string(a) + " times vertically and " + std::to_string(b) +
                   " times horizontally";
        case PK::palette_swap:
            return "swap colors " + std::to_string(a) + " and " + std::to_string(b) + " everywhere";
        case PK::overlay_pairs:
            return static_cast<Split>(a) == Split::lr ? "overlay the left half on top of the right half"
                                                      : "overlay the top half on top of the bottom half";
        case PK::symmetry_complete:
            switch (static_cast<Axis>(a)) {
                case Axis::h:
                    return "complete the left-right mirror symmetry";
                case Axis::v:
                    return "complete the top-bottom mirror symmetry";
                case Axis::both:
                    return "complete the mirror symmetry across both axes";
            }
            break;
        case PK::translate:
            return "move " + who + " " + offset_phrase(a, b);
        case PK::recolor:
            return "recolor " + who + " to color " + std::to_string(a);
        case PK::delete_object:
            return "delete " + who;
        case PK::cavity_fill:
            return "fill the cavities of " + who + " with color " + std::to_string(a);
        case PK::duplicate_object:
            return "copy " + who + " " + offset_phrase(a, b);
        case PK::gravity_shift: {
            static constexpr std::string_view kDir[] = {"up", "down", "left", "right"};
            return "slide " + who + " " + std::string(kDir[a]) + " until blocked";
        }
        case PK::draw_bbox_border:
            return "draw a color-" + std::to_string(a) + " frame around " + who;
        case PK::connect_objects:
            return "connect " + who + " along rows and columns with color " + std::to_string(a);
        case PK::select_largest:
            return "output the largest of " + who;
        case PK::select_smallest:
            return "output the smallest of " + who;
        case PK::count_encode:
            return "output one color-" + std::to_string(a) + " cell per object among " + who;
    }
    return to_string(p);
}

std::vector<std::string> synthesize_hints(const RuleSet& rs) {
    std::vector<std::string> hints;
    hints.reserve(rs.patterns.size());
    for (const ScoredPattern& sp : rs.patterns) hints.push_back(hint_for(sp.pattern));
    return hints;
}

Induction induce(const Task& task, Proposer& proposer, const InductionOptions& opts) {
    Induction result;
    for (const TrainPair& pair : task.train) {
        PairPatterns found = detect_unit_patterns(pair, proposer, opts.budget, opts.connectivity);
        result.per_pair.push_back(std::move(found.patterns));
        for (auto& w : found.warnings) result.warnings.push_back(std::move(w));
    }
    result.rules =
        intersect_patterns(result.per_pair, task.train, IntersectOptions{opts.threshold, opts.connectivity});
    return result;
}

}  // namespace arcsolve
