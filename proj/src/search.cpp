#include "arcsolve/search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arcsolve/error.hpp"

namespace arcsolve {
namespace {

using PK = PatternKind;

// Offsets (dx, dy) between same-colored, same-shaped objects of the input
// and output scenes, most frequent first.
std::vector<std::pair<int, int>> candidate_offsets(const Perception& in, const Perception& out, int limit) {
    std::map<std::pair<int, int>, int> votes;
    for (const GridObject& a : in.objects) {
        for (const GridObject& b : out.objects) {
            if (a.color != b.color || !same_shape(a, b)) continue;
            const int dx = b.bbox.left - a.bbox.left;
            const int dy = b.bbox.top - a.bbox.top;
            if (dx != 0 || dy != 0) ++votes[{dx, dy}];
        }
    }
    std::vector<std::pair<std::pair<int, int>, int>> ranked(votes.begin(), votes.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::pair<int, int>> offsets;
    for (const auto& [offset, count] : ranked) {
        if (static_cast<int>(offsets.size()) >= limit) break;
        offsets.push_back(offset);
    }
    return offsets;
}

std::vector<int> colors_present(const Grid& g) {
    std::array<bool, kNumColors> seen{};
    for (Color c : g.cells()) seen[c] = true;
    std::vector<int> colors;
    for (int c = 0; c < kNumColors; ++c) {
        if (seen[c]) colors.push_back(c);
    }
    return colors;
}

std::vector<Selector> candidate_selectors(const Perception& scene, int max_rank) {
    std::vector<Selector> out{Selector::all()};
    std::set<int> colors;
    std::set<int> cavities;
    for (const GridObject& obj : scene.objects) {
        colors.insert(obj.color);
        cavities.insert(obj.cavity_count);
    }
    for (int c : colors) out.push_back(Selector::color(c));
    const int ranks = std::min<int>(max_rank, static_cast<int>(scene.objects.size()));
    for (int k = 0; k < ranks; ++k) out.push_back(Selector::size_rank(k));
    for (int n : cavities) out.push_back(Selector::cavities(n));
    return out;
}

class Enumerator {
public:
    Enumerator(const TrainPair& pair, const SearchOptions& opts)
        : pair_(pair), opts_(opts), scene_(segment(pair.input, opts.connectivity)) {}

    std::vector<PatternCandidate> run() {
        whole_grid_kinds();
        if (!scene_.objects.empty()) object_kinds();
        return std::move(found_);
    }

private:
    bool exhausted() const { return spent_ >= opts_.budget; }

    void try_pattern(UnitPattern p) {
        if (exhausted()) return;
        const auto canonical = canonicalize(p);
        if (!canonical) return;
        if (const auto dims = predicted_dims(*canonical, pair_.input.dims()); dims && *dims != pair_.output.dims()) {
            return;
        }
        if (!seen_.insert(*canonical).second) return;
        ++spent_;
        if (auto c = classify(*canonical, pair_, scene_)) found_.push_back(*c);
    }

    void whole_grid_kinds() {
        for (PK k : {PK::rotate90, PK::rotate180, PK::rotate270, PK::reflect_h, PK::reflect_v, PK::crop_to_content}) {
            try_pattern({k, {}, {0, 0}});
        }
        for (int f = 2; f <= kMaxDim; ++f) try_pattern({PK::scale_up, {}, {f, 0}});
        for (int f = 2; f <= kMaxDim; ++f) try_pattern({PK::scale_down, {}, {f, 0}});
        for (int r = 1; r <= kMaxDim; ++r) {
            for (int c = 1; c <= kMaxDim; ++c) {
                if (r != 1 || c != 1) try_pattern({PK::tile_grid, {}, {r, c}});
            }
        }
        std::vector<int> colors = colors_present(pair_.input);
        for (std::size_t i = 0; i < colors.size(); ++i) {
            for (std::size_t j = i + 1; j < colors.size(); ++j) try_pattern({PK::palette_swap, {}, {colors[i], colors[j]}});
        }
        for (int s = 0; s < 2; ++s) try_pattern({PK::overlay_pairs, {}, {s, 0}});
        for (int a = 0; a < 3; ++a) try_pattern({PK::symmetry_complete, {}, {a, 0}});
    }

    void object_kinds() {
        const auto selectors = candidate_selectors(scene_, opts_.max_rank);
        const auto out_colors = colors_present(pair_.output);
        const Perception out_scene = segment(pair_.output, opts_.connectivity);
        const auto offsets = candidate_offsets(scene_, out_scene, opts_.max_offsets);

        auto each_selector = [&](PK kind, auto&& per_selector) {
            for (const Selector& s : selectors) per_selector(kind, s);
        };
        each_selector(PK::translate, [&](PK k, const Selector& s) {
            for (auto [dx, dy] : offsets) try_pattern({k, s, {dx, dy}});
        });
        // Recolor to the background is delete_object; keep only the latter.
        each_selector(PK::recolor, [&](PK k, const Selector& s) {
            for (int c : out_colors) {
                if (c != scene_.background) try_pattern({k, s, {c, 0}});
            }
        });
        each_selector(PK::delete_object, [&](PK k, const Selector& s) { try_pattern({k, s, {0, 0}}); });
        each_selector(PK::cavity_fill, [&](PK k, const Selector& s) {
            for (int c : out_colors) try_pattern({k, s, {c, 0}});
        });
        each_selector(PK::duplicate_object, [&](PK k, const Selector& s) {
            for (auto [dx, dy] : offsets) try_pattern({k, s, {dx, dy}});
        });
        each_selector(PK::gravity_shift, [&](PK k, const Selector& s) {
            for (int d = 0; d < 4; ++d) try_pattern({k, s, {d, 0}});
        });
        each_selector(PK::draw_bbox_border, [&](PK k, const Selector& s) {
            for (int c : out_colors) try_pattern({k, s, {c, 0}});
        });
        each_selector(PK::connect_objects, [&](PK k, const Selector& s) {
            for (int c : out_colors) try_pattern({k, s, {c, 0}});
        });
        each_selector(PK::select_largest, [&](PK k, const Selector& s) { try_pattern({k, s, {0, 0}}); });
        each_selector(PK::select_smallest, [&](PK k, const Selector& s) { try_pattern({k, s, {0, 0}}); });
        if (pair_.output.height() == 1) {
            each_selector(PK::count_encode, [&](PK k, const Selector& s) {
                for (int c : out_colors) try_pattern({k, s, {c, 0}});
            });
        }
    }

    const TrainPair& pair_;
    const SearchOptions& opts_;
    Perception scene_;
    std::set<UnitPattern> seen_;
    std::vector<PatternCandidate> found_;
    int spent_ = 0;
};

}  // namespace

std::optional<PatternCandidate> classify(const UnitPattern& p, const TrainPair& pair, const Perception& input_scene) {
    std::optional<Grid> result;
    try {
        result = apply_pattern(p, pair.input, input_scene);
    } catch (const ApplyError&) {
        return std::nullopt;
    }
    if (grids_equal(*result, pair.output)) return PatternCandidate{p, Fit::exact, 0};
    if (result->dims() != pair.output.dims() || grids_equal(*result, pair.input)) return std::nullopt;
    const std::size_t d = pixel_distance(*result, pair.output);
    if (d < pixel_distance(pair.input, pair.output)) return PatternCandidate{p, Fit::partial, d};
    return std::nullopt;
}

std::vector<PatternCandidate> enumerate_candidates(const TrainPair& pair, const SearchOptions& opts) {
    if (opts.budget <= 0) throw ContractError("search budget must be positive");
    return Enumerator(pair, opts).run();
}

}  // namespace arcsolve
