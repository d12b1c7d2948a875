#include "arcsolve/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "arcsolve/error.hpp"

namespace arcsolve {
namespace {

using PK = PatternKind;
using PT = ParamType;

constexpr std::array<KindInfo, kNumPatternKinds> kKinds{{
    {PK::rotate90, "rotate90", true, 0, {}, {}},
    {PK::rotate180, "rotate180", true, 0, {}, {}},
    {PK::rotate270, "rotate270", true, 0, {}, {}},
    {PK::reflect_h, "reflect_h", true, 0, {}, {}},
    {PK::reflect_v, "reflect_v", true, 0, {}, {}},
    {PK::crop_to_content, "crop_to_content", true, 0, {}, {}},
    {PK::scale_up, "scale_up", true, 1, {"k", ""}, {PT::factor, PT::none}},
    {PK::scale_down, "scale_down", true, 1, {"k", ""}, {PT::factor, PT::none}},
    {PK::tile_grid, "tile_grid", true, 2, {"rows", "cols"}, {PT::count, PT::count}},
    {PK::palette_swap, "palette_swap", true, 2, {"a", "b"}, {PT::color, PT::color}},
    {PK::overlay_pairs, "overlay_pairs", true, 1, {"split", ""}, {PT::split, PT::none}},
    {PK::symmetry_complete, "symmetry_complete", true, 1, {"axis", ""}, {PT::axis, PT::none}},
    {PK::translate, "translate", false, 2, {"dx", "dy"}, {PT::offset, PT::offset}},
    {PK::recolor, "recolor", false, 1, {"to", ""}, {PT::color, PT::none}},
    {PK::delete_object, "delete_object", false, 0, {}, {}},
    {PK::cavity_fill, "cavity_fill", false, 1, {"color", ""}, {PT::color, PT::none}},
    {PK::duplicate_object, "duplicate_object", false, 2, {"dx", "dy"}, {PT::offset, PT::offset}},
    {PK::gravity_shift, "gravity_shift", false, 1, {"dir", ""}, {PT::direction, PT::none}},
    {PK::draw_bbox_border, "draw_bbox_border", false, 1, {"color", ""}, {PT::color, PT::none}},
    {PK::connect_objects, "connect_objects", false, 1, {"color", ""}, {PT::color, PT::none}},
    {PK::select_largest, "select_largest", false, 0, {}, {}},
    {PK::select_smallest, "select_smallest", false, 0, {}, {}},
    {PK::count_encode, "count_encode", false, 1, {"color", ""}, {PT::color, PT::none}},
}};

constexpr std::array<std::string_view, 4> kDirections{"up", "down", "left", "right"};
constexpr std::array<std::string_view, 3> kAxes{"h", "v", "both"};
constexpr std::array<std::string_view, 2> kSplits{"lr", "tb"};

template <std::size_t N>
std::optional<int> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == s) return static_cast<int>(i);
    }
    return std::nullopt;
}

bool param_in_range(ParamType t, int v) {
    switch (t) {
        case PT::none:
            return v == 0;
        case PT::offset:
            return v >= -(kMaxDim - 1) && v <= kMaxDim - 1;
        case PT::factor:
            return v >= 2 && v <= kMaxDim;
        case PT::count:
            return v >= 1 && v <= kMaxDim;
        case PT::color:
            return is_valid_color(v);
        case PT::direction:
            return v >= 0 && v < static_cast<int>(kDirections.size());
        case PT::axis:
            return v >= 0 && v < static_cast<int>(kAxes.size());
        case PT::split:
            return v >= 0 && v < static_cast<int>(kSplits.size());
    }
    return false;
}

std::string format_param(ParamType t, int v) {
    switch (t) {
        case PT::direction:
            return std::string(kDirections[v]);
        case PT::axis:
            return std::string(kAxes[v]);
        case PT::split:
            return std::string(kSplits[v]);
        default:
            return std::to_string(v);
    }
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<int> parse_param(ParamType t, std::string_view s) {
    switch (t) {
        case PT::direction:
            return lookup(kDirections, s);
        case PT::axis:
            return lookup(kAxes, s);
        case PT::split:
            return lookup(kSplits, s);
        default:
            return parse_int(s);
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

Selector parse_selector(std::string_view s) {
    s = trim(s);
    if (s == "all") return Selector::all();
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ContractError("malformed selector '" + std::string(s) + "'");
    const auto key = trim(s.substr(0, eq));
    const auto value = parse_int(trim(s.substr(eq + 1)));
    if (!value) throw ContractError("selector value is not an integer in '" + std::string(s) + "'");
    if (key == "color") return Selector::color(*value);
    if (key == "rank") return Selector::size_rank(*value);
    if (key == "cavities") return Selector::cavities(*value);
    throw ContractError("unknown selector '" + std::string(key) + "'");
}

}  // namespace

const KindInfo& kind_info(PatternKind kind) noexcept { return kKinds[static_cast<std::size_t>(kind)]; }

std::span<const KindInfo, kNumPatternKinds> all_kinds() noexcept { return kKinds; }

std::optional<PatternKind> kind_from_name(std::string_view name) noexcept {
    for (const auto& info : kKinds) {
        if (info.name == name) return info.kind;
    }
    return std::nullopt;
}

void validate(const UnitPattern& p) {
    if (static_cast<std::size_t>(p.kind) >= kKinds.size()) throw ContractError("unknown pattern kind");
    const KindInfo& info = kind_info(p.kind);
    for (int i = 0; i < 2; ++i) {
        const ParamType t = i < info.arity ? info.param_types[i] : PT::none;
        if (!param_in_range(t, p.args[i])) {
            throw ContractError(std::string(info.name) + ": parameter " +
                                (i < info.arity ? std::string(info.param_names[i]) : std::to_string(i)) + "=" +
                                std::to_string(p.args[i]) + " out of range");
        }
    }
    if (p.kind == PK::tile_grid && p.args[0] == 1 && p.args[1] == 1) {
        throw ContractError("tile_grid: rows=1,cols=1 is not a tiling");
    }
    if (p.kind == PK::palette_swap && p.args[0] == p.args[1]) throw ContractError("palette_swap: a == b");

    const Selector& s = p.selector;
    if (info.whole_grid && s.kind != SelectorKind::all) {
        throw ContractError(std::string(info.name) + " acts on the whole grid and takes no selector");
    }
    switch (s.kind) {
        case SelectorKind::all:
            if (s.value != 0) throw ContractError("@all takes no value");
            break;
        case SelectorKind::color:
            if (!is_valid_color(s.value)) throw ContractError("selector color outside 0..9");
            break;
        case SelectorKind::size_rank:
        case SelectorKind::cavities:
            if (s.value < 0 || s.value >= kMaxDim * kMaxDim) throw ContractError("selector value out of range");
            break;
    }
}

std::optional<UnitPattern> canonicalize(const UnitPattern& p) {
    validate(p);
    UnitPattern c = p;
    switch (p.kind) {
        case PK::translate:
        case PK::duplicate_object:
            if (p.args[0] == 0 && p.args[1] == 0) return std::nullopt;
            break;
        case PK::palette_swap:
            if (c.args[0] > c.args[1]) std::swap(c.args[0], c.args[1]);
            break;
        case PK::recolor:
            if (p.selector.kind == SelectorKind::color && p.selector.value == p.args[0]) return std::nullopt;
            break;
        default:
            break;
    }
    return c;
}

std::string to_string(const Selector& s) {
    switch (s.kind) {
        case SelectorKind::all:
            return "all";
        case SelectorKind::color:
            return "color=" + std::to_string(s.value);
        case SelectorKind::size_rank:
            return "rank=" + std::to_string(s.value);
        case SelectorKind::cavities:
            return "cavities=" + std::to_string(s.value);
    }
    return "all";
}

std::string to_string(const UnitPattern& p) {
    const KindInfo& info = kind_info(p.kind);
    std::string out(info.name);
    out.push_back('(');
    for (int i = 0; i < info.arity; ++i) {
        if (i > 0) out.push_back(',');
        out += info.param_names[i];
        out.push_back('=');
        out += format_param(info.param_types[i], p.args[i]);
    }
    out += ")@";
    out += to_string(p.selector);
    return out;
}

UnitPattern parse_pattern(std::string_view text) {
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) throw ContractError("empty pattern line");

    UnitPattern p;
    std::string_view head = text;
    std::string_view selector_text = "all";
    if (const auto at = text.find('@'); at != std::string_view::npos) {
        head = trim(text.substr(0, at));
        selector_text = text.substr(at + 1);
    }

    std::string_view name = head;
    std::string_view params;
    if (const auto open = head.find('('); open != std::string_view::npos) {
        if (head.back() != ')') throw ContractError("unbalanced parentheses in '" + std::string(text) + "'");
        name = trim(head.substr(0, open));
        params = head.substr(open + 1, head.size() - open - 2);
    }
    const auto kind = kind_from_name(name);
    if (!kind) throw ContractError("unknown pattern kind '" + std::string(name) + "'");
    p.kind = *kind;
    const KindInfo& info = kind_info(p.kind);

    std::array<bool, 2> seen{false, false};
    params = trim(params);
    while (!params.empty()) {
        const auto comma = params.find(',');
        const auto item = trim(params.substr(0, comma));
        params = comma == std::string_view::npos ? std::string_view{} : trim(params.substr(comma + 1));
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ContractError("parameter without '=' in '" + std::string(text) + "'");
        const auto key = trim(item.substr(0, eq));
        const auto value_text = trim(item.substr(eq + 1));
        int slot = -1;
        for (int i = 0; i < info.arity; ++i) {
            if (info.param_names[i] == key) slot = i;
        }
        if (slot < 0) throw ContractError(std::string(info.name) + " has no parameter '" + std::string(key) + "'");
        if (seen[slot]) throw ContractError("duplicate parameter '" + std::string(key) + "'");
        const auto value = parse_param(info.param_types[slot], value_text);
        if (!value) throw ContractError("bad value '" + std::string(value_text) + "' for " + std::string(key));
        p.args[slot] = *value;
        seen[slot] = true;
    }
    for (int i = 0; i < info.arity; ++i) {
        if (!seen[i]) {
            throw ContractError(std::string(info.name) + " requires parameter '" + std::string(info.param_names[i]) +
                                "'");
        }
    }
    p.selector = parse_selector(selector_text);
    validate(p);
    return p;
}

std::vector<int> resolve_selector(const Selector& s, const Perception& p) {
    std::vector<int> out;
    const int n = static_cast<int>(p.objects.size());
    switch (s.kind) {
        case SelectorKind::all:
            out.resize(n);
            std::iota(out.begin(), out.end(), 0);
            break;
        case SelectorKind::color:
            for (int i = 0; i < n; ++i) {
                if (p.objects[i].color == s.value) out.push_back(i);
            }
            break;
        case SelectorKind::cavities:
            for (int i = 0; i < n; ++i) {
                if (p.objects[i].cavity_count == s.value) out.push_back(i);
            }
            break;
        case SelectorKind::size_rank: {
            if (s.value >= n) break;
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return p.objects[a].size() > p.objects[b].size(); });
            out.push_back(order[s.value]);
            break;
        }
    }
    return out;
}

std::optional<Dims> predicted_dims(const UnitPattern& p, Dims in) noexcept {
    switch (p.kind) {
        case PK::rotate90:
        case PK::rotate270:
            return Dims{in.width, in.height};
        case PK::scale_up:
            return Dims{in.height * p.args[0], in.width * p.args[0]};
        case PK::scale_down:
            if (in.height % p.args[0] || in.width % p.args[0]) return std::nullopt;
            return Dims{in.height / p.args[0], in.width / p.args[0]};
        case PK::tile_grid:
            return Dims{in.height * p.args[0], in.width * p.args[1]};
        case PK::overlay_pairs:
            if (static_cast<Split>(p.args[0]) == Split::lr) return Dims{in.height, in.width / 2};
            return Dims{in.height / 2, in.width};
        case PK::crop_to_content:
        case PK::select_largest:
        case PK::select_smallest:
        case PK::count_encode:
            return std::nullopt;
        default:
            return in;
    }
}

}  // namespace arcsolve
