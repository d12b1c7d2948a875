#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "arcsolve/grid.hpp"
#include "arcsolve/perception.hpp"

namespace arcsolve {

// The 23 atomic operations. Enumerator order is the canonical (cheapest-first)
// order used for enumeration and for ranking ties.
enum class PatternKind : std::uint8_t {
    // whole-grid
    rotate90,
    rotate180,
    rotate270,
    reflect_h,  // mirror left <-> right
    reflect_v,  // mirror top <-> bottom
    crop_to_content,
    scale_up,
    scale_down,
    tile_grid,
    palette_swap,
    overlay_pairs,
    symmetry_complete,
    // object-level
    translate,
    recolor,
    delete_object,
    cavity_fill,
    duplicate_object,
    gravity_shift,
    draw_bbox_border,
    connect_objects,
    select_largest,
    select_smallest,
    count_encode,
};

inline constexpr int kNumPatternKinds = 23;

enum class ParamType : std::uint8_t { none, offset, factor, count, color, direction, axis, split };

struct KindInfo {
    PatternKind kind;
    std::string_view name;
    bool whole_grid;
    int arity;
    std::array<std::string_view, 2> param_names;
    std::array<ParamType, 2> param_types;
};

const KindInfo& kind_info(PatternKind kind) noexcept;
std::span<const KindInfo, kNumPatternKinds> all_kinds() noexcept;
std::optional<PatternKind> kind_from_name(std::string_view name) noexcept;

enum class Direction : int { up, down, left, right };
enum class Axis : int { h, v, both };
enum class Split : int { lr, tb };

enum class SelectorKind : std::uint8_t { all, color, size_rank, cavities };

// Which objects an object-level pattern touches. size_rank 0 is the largest
// object (ties by lower id); cavities selects objects with exactly that count.
struct Selector {
    SelectorKind kind = SelectorKind::all;
    int value = 0;

    static Selector all() { return {}; }
    static Selector color(int c) { return {SelectorKind::color, c}; }
    static Selector size_rank(int k) { return {SelectorKind::size_rank, k}; }
    static Selector cavities(int n) { return {SelectorKind::cavities, n}; }

    friend auto operator<=>(const Selector&, const Selector&) = default;
};

// One atomic transformation with bound parameters. Unused args are zero.
// Ordering is the canonical order: kind, then selector, then args.
struct UnitPattern {
    PatternKind kind = PatternKind::rotate90;
    Selector selector;
    std::array<int, 2> args{0, 0};

    friend auto operator<=>(const UnitPattern&, const UnitPattern&) = default;
};

// Throws ContractError when args or selector do not fit the kind's signature.
void validate(const UnitPattern& p);

// Normalized form, or nullopt for identity-equivalent patterns (e.g.
// translate(0,0)). Throws ContractError for invalid patterns.
std::optional<UnitPattern> canonicalize(const UnitPattern& p);

// `kind(param=value,...)@selector`, e.g. `cavity_fill(color=2)@color=4`.
std::string to_string(const UnitPattern& p);
std::string to_string(const Selector& s);

// Parses the serialization above. Accepts a bare `kind` (no parentheses), a
// missing selector (defaults to @all) and a trailing `# comment`. Throws
// ContractError on malformed text or invalid parameters.
UnitPattern parse_pattern(std::string_view text);

// Indices into p.objects selected by s, ascending.
std::vector<int> resolve_selector(const Selector& s, const Perception& p);

struct ApplyOptions {
    Connectivity connectivity = Connectivity::four;
};

// Executes the pattern. Object-level kinds operate on segment(g); whole-grid
// kinds act on the full grid. Throws ContractError (invalid pattern),
// BoundsError (result beyond 30x30) or InapplicableError (precondition unmet).
Grid apply_pattern(const UnitPattern& p, const Grid& g, const ApplyOptions& opts = {});

// Same, reusing a perception of g computed with opts.connectivity.
Grid apply_pattern(const UnitPattern& p, const Grid& g, const Perception& scene);

// Output dimensions when they depend only on the input dimensions; nullopt
// for content-dependent kinds (crop, select, count).
std::optional<Dims> predicted_dims(const UnitPattern& p, Dims input) noexcept;

}  // namespace arcsolve
