#include "arcsolve/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "arcsolve/error.hpp"

namespace arcsolve::synth {
namespace {

using PK = PatternKind;

// Uniform draws straight from the engine so suites are identical across
// standard libraries (std distributions are implementation-defined).
class Rand {
public:
    explicit Rand(std::mt19937_64& e) : e_(e) {}

    int between(int lo, int hi) { return lo + static_cast<int>(e_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(int percent) { return between(0, 99) < percent; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[between(0, static_cast<int>(v.size()) - 1)];
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[between(0, i)]);
    }

    // k distinct colors from 1..9 excluding `avoid`.
    std::vector<Color> colors(int k, const std::vector<Color>& avoid = {}) {
        std::vector<Color> pool;
        for (Color c = 1; c < kNumColors; ++c) {
            if (std::find(avoid.begin(), avoid.end(), c) == avoid.end()) pool.push_back(c);
        }
        shuffle(pool);
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64& e_;
};

using Shape = std::vector<Cell>;  // top-left at (0,0), row-major

int shape_height(const Shape& s) {
    int h = 0;
    for (const Cell& c : s) h = std::max(h, c.row + 1);
    return h;
}

int shape_width(const Shape& s) {
    int w = 0;
    for (const Cell& c : s) w = std::max(w, c.col + 1);
    return w;
}

Shape normalized(Shape s) {
    int top = s.front().row, left = s.front().col;
    for (const Cell& c : s) {
        top = std::min(top, c.row);
        left = std::min(left, c.col);
    }
    for (Cell& c : s) c = {c.row - top, c.col - left};
    std::sort(s.begin(), s.end());
    return s;
}

// Flood the padded complement from outside; anything left over is a hole.
bool has_hole(const Shape& s) {
    const int h = shape_height(s) + 2;
    const int w = shape_width(s) + 2;
    std::vector<char> state(static_cast<std::size_t>(h) * w, 0);
    for (const Cell& c : s) state[(c.row + 1) * w + c.col + 1] = 1;
    std::vector<int> stack{0};
    state[0] = 2;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const int r = i / w, c = i % w;
        const int nbr[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (const auto& n : nbr) {
            if (n[0] < 0 || n[0] >= h || n[1] < 0 || n[1] >= w) continue;
            const int j = n[0] * w + n[1];
            if (state[j] != 0) continue;
            state[j] = 2;
            stack.push_back(j);
        }
    }
    return std::find(state.begin(), state.end(), 0) != state.end();
}

// Solid 4-connected shape of exactly `size` cells inside a 4x4 box.
Shape polyomino(Rand& rng, int size) {
    for (;;) {
        Shape s{{0, 0}};
        while (static_cast<int>(s.size()) < size) {
            const Cell from = rng.pick(s);
            static constexpr int kStep[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            const int k = rng.between(0, 3);
            const Cell next{from.row + kStep[k][0], from.col + kStep[k][1]};
            if (std::find(s.begin(), s.end(), next) != s.end()) continue;
            s.push_back(next);
            const Shape n = normalized(s);
            if (shape_height(n) > 4 || shape_width(n) > 4) s.pop_back();
        }
        s = normalized(std::move(s));
        if (!has_hole(s)) return s;
    }
}

Shape ring(int h, int w) {
    Shape s;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (r == 0 || c == 0 || r == h - 1 || c == w - 1) s.push_back({r, c});
        }
    }
    return s;
}

// Shape with exactly `cavities` holes (0, 1 or 2).
Shape holed_shape(Rand& rng, int cavities, int solid_size = 0) {
    if (cavities == 0) return polyomino(rng, solid_size ? solid_size : rng.between(3, 7));
    if (cavities == 1) return ring(rng.between(3, 4), rng.between(3, 4));
    Shape s = ring(3, 5);
    s.push_back({1, 2});
    if (rng.chance(50)) {
        for (Cell& c : s) std::swap(c.row, c.col);
    }
    return normalized(std::move(s));
}

struct Piece {
    Shape shape;
    Color color = 1;
    bool target = false;
    int top = 0;
    int left = 0;
};

enum class Wall { none, top, bottom, left, right };

// Cells of different pieces stay at Chebyshev distance >= 2 so objects never
// touch, not even diagonally.
class Canvas {
public:
    Canvas(int h, int w) : h_(h), w_(w), owner_(static_cast<std::size_t>(h) * w, -1) {}

    bool fits(const Shape& s, int top, int left, int ignore = -1) const {
        for (const Cell& c : s) {
            const int r = top + c.row, col = left + c.col;
            if (r < 0 || r >= h_ || col < 0 || col >= w_) return false;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int nr = r + dr, nc = col + dc;
                    if (nr < 0 || nr >= h_ || nc < 0 || nc >= w_) continue;
                    const int o = owner_[nr * w_ + nc];
                    if (o >= 0 && o != ignore) return false;
                }
            }
        }
        return true;
    }

    bool place(Rand& rng, Piece& p, int id, int edge, Wall wall = Wall::none) {
        const int sh = shape_height(p.shape), sw = shape_width(p.shape);
        const int top_lo = edge, top_hi = h_ - sh - edge;
        const int left_lo = edge, left_hi = w_ - sw - edge;
        if (top_hi < top_lo || left_hi < left_lo) return false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            int top = rng.between(top_lo, top_hi);
            int left = rng.between(left_lo, left_hi);
            if (wall == Wall::top) top = 0;
            if (wall == Wall::bottom) top = h_ - sh;
            if (wall == Wall::left) left = 0;
            if (wall == Wall::right) left = w_ - sw;
            if (!fits(p.shape, top, left)) continue;
            p.top = top;
            p.left = left;
            for (const Cell& c : p.shape) owner_[(top + c.row) * w_ + left + c.col] = id;
            return true;
        }
        return false;
    }

private:
    int h_, w_;
    std::vector<int> owner_;
};

Grid render(int h, int w, const std::vector<Piece>& pieces) {
    Grid g(h, w, 0);
    for (const Piece& p : pieces) {
        for (const Cell& c : p.shape) g.set(p.top + c.row, p.left + c.col, p.color);
    }
    return g;
}

enum class Mode { all, color, rank, cavities };

struct Plan {
    PK kind = PK::rotate90;
    Mode mode = Mode::all;
    Color target = 1;             // color of selected objects
    std::vector<Color> others;    // distractor colors
    int rank = 0;
    int cavities = 0;
    int other_cavities = 1;
    Color paint = 1;              // color argument
    std::array<int, 2> args{0, 0};
    std::vector<Color> palette;   // whole-grid kinds
};

UnitPattern pattern_of(const Plan& plan) {
    UnitPattern p{plan.kind, Selector::all(), plan.args};
    switch (plan.mode) {
        case Mode::all:
            break;
        case Mode::color:
            p.selector = Selector::color(plan.target);
            break;
        case Mode::rank:
            p.selector = Selector::size_rank(plan.rank);
            break;
        case Mode::cavities:
            p.selector = Selector::cavities(plan.cavities);
            break;
    }
    return p;
}

std::vector<Mode> modes_for(PK kind) {
    switch (kind) {
        case PK::translate:
        case PK::duplicate_object:
        case PK::gravity_shift:
        case PK::connect_objects:
        case PK::select_largest:
        case PK::select_smallest:
            return {Mode::all, Mode::color};
        case PK::recolor:
            return {Mode::color, Mode::rank};
        case PK::delete_object:
            return {Mode::color, Mode::rank, Mode::cavities};
        case PK::cavity_fill:
        case PK::count_encode:
            return {Mode::all, Mode::color, Mode::cavities};
        case PK::draw_bbox_border:
            return {Mode::all, Mode::color, Mode::rank};
        default:
            return {Mode::all};
    }
}

Plan make_plan(Rand& rng, PK kind) {
    Plan plan;
    plan.kind = kind;
    const auto modes = modes_for(kind);
    plan.mode = rng.pick(modes);
    const auto colors = rng.colors(5);
    plan.target = colors[0];
    plan.others = {colors[1], colors[2]};
    plan.paint = colors[3];
    plan.palette = {colors[0], colors[1], colors[2]};
    if (plan.mode == Mode::rank) plan.rank = rng.between(0, 3);
    if (plan.mode == Mode::cavities) {
        if (kind == PK::cavity_fill) {
            plan.cavities = rng.between(1, 2);
            plan.other_cavities = 3 - plan.cavities;
        } else {
            plan.cavities = rng.between(0, 2);
            plan.other_cavities = (plan.cavities + rng.between(1, 2)) % 3;
        }
    }
    switch (kind) {
        case PK::scale_up:
        case PK::scale_down:
            plan.args = {rng.between(2, 3), 0};
            break;
        case PK::tile_grid:
            do {
                plan.args = {rng.between(1, 3), rng.between(1, 3)};
            } while (plan.args[0] == 1 && plan.args[1] == 1);
            break;
        case PK::palette_swap:
            plan.args = {std::min(colors[0], colors[1]), std::max(colors[0], colors[1])};
            break;
        case PK::overlay_pairs:
            plan.args = {rng.between(0, 1), 0};
            break;
        case PK::symmetry_complete:
            plan.args = {rng.between(0, 2), 0};
            break;
        case PK::translate:
        case PK::duplicate_object:
            do {
                plan.args = {rng.between(-3, 3), rng.between(-3, 3)};
            } while (plan.args[0] == 0 && plan.args[1] == 0);
            break;
        case PK::gravity_shift:
            plan.args = {rng.between(0, 3), 0};
            break;
        case PK::recolor:
        case PK::cavity_fill:
        case PK::draw_bbox_border:
        case PK::connect_objects:
        case PK::count_encode:
            plan.args = {plan.paint, 0};
            break;
        default:
            break;
    }
    return plan;
}

// ---- whole-grid inputs ------------------------------------------------------

Grid noise_grid(Rand& rng, int h, int w, const std::vector<Color>& palette, int density) {
    Grid g(h, w, 0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (rng.chance(density)) g.set(r, c, rng.pick(palette));
        }
    }
    return g;
}

bool contains(const Grid& g, Color c) { return std::find(g.cells().begin(), g.cells().end(), c) != g.cells().end(); }

std::optional<Grid> symmetric_input(Rand& rng, const Plan& plan) {
    const auto axis = static_cast<Axis>(plan.args[0]);
    const int h = rng.between(4, 10), w = rng.between(4, 10);
    Grid g = noise_grid(rng, h, w, plan.palette, 45);
    const bool mirror_h = axis != Axis::v;
    const bool mirror_v = axis != Axis::h;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int sr = r, sc = c;
            if (mirror_h && c >= (w + 1) / 2) sc = w - 1 - c;
            if (mirror_v && r >= (h + 1) / 2) sr = h - 1 - r;
            g.set(r, c, g.at(sr, sc));
        }
    }
    Grid holed = g;
    auto erase = [&](int r, int c) {
        if (g.at(r, c) == 0) return false;
        holed.set(r, c, 0);
        return true;
    };
    // Off-axis cells only: a cell on the mirror line is its own image.
    auto off_axis = [&](int r, int c) {
        return (!mirror_h || 2 * c != w - 1) && (!mirror_v || 2 * r != h - 1);
    };
    int erased = 0;
    for (int k = rng.between(1, 4); k > 0; --k) {
        const int r = rng.between(0, h - 1), c = rng.between(0, w - 1);
        if (off_axis(r, c) && erase(r, c)) ++erased;
    }
    if (axis == Axis::both) {
        // One mirrored pair per axis, so neither single-axis completion suffices.
        const int r1 = rng.between(0, h - 1), c1 = rng.between(0, w / 2 - 1);
        const int r2 = rng.between(0, h / 2 - 1), c2 = rng.between(0, w - 1);
        if (!off_axis(r1, c1) || !off_axis(r2, c2)) return std::nullopt;
        if (!erase(r1, c1) || !erase(r1, w - 1 - c1) || !erase(r2, c2) || !erase(h - 1 - r2, c2)) return std::nullopt;
        erased += 4;
    }
    if (erased == 0) return std::nullopt;
    // Every hole must be recoverable from the mirrors the kind consults.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (holed.at(r, c) == g.at(r, c)) continue;
            const bool via_h = holed.at(r, w - 1 - c) != 0;
            const bool via_v = holed.at(h - 1 - r, c) != 0;
            const bool via_hv = holed.at(h - 1 - r, w - 1 - c) != 0;
            const bool ok = axis == Axis::h ? via_h : axis == Axis::v ? via_v : (via_h || via_v || via_hv);
            if (!ok) return std::nullopt;
        }
    }
    return holed;
}

std::optional<Grid> overlay_input(Rand& rng, const Plan& plan) {
    const bool lr = static_cast<Split>(plan.args[0]) == Split::lr;
    const int rows = rng.between(3, 8), half = rng.between(3, 6);
    const Grid a = noise_grid(rng, rows, half, {plan.palette[0]}, 35);
    const Grid b = noise_grid(rng, rows, half, {plan.palette[1]}, 35);
    const bool divider = rng.chance(50);
    const int extent = 2 * half + (divider ? 1 : 0);
    Grid g = lr ? Grid(rows, extent, 0) : Grid(extent, rows, 0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < extent; ++c) {
            Color v = 0;
            if (c < half)
                v = a.at(r, c);
            else if (c >= extent - half)
                v = b.at(r, c - (extent - half));
            else
                v = plan.palette[2];
            if (lr)
                g.set(r, c, v);
            else
                g.set(c, r, v);
        }
    }
    return g;
}

std::optional<Grid> whole_grid_input(Rand& rng, const Plan& plan) {
    switch (plan.kind) {
        case PK::rotate90:
        case PK::rotate180:
        case PK::rotate270:
        case PK::reflect_h:
        case PK::reflect_v:
            return noise_grid(rng, rng.between(3, 10), rng.between(3, 10), plan.palette, 45);
        case PK::scale_up:
            return noise_grid(rng, rng.between(2, 6), rng.between(2, 6), plan.palette, 50);
        case PK::scale_down: {
            const Grid small = noise_grid(rng, rng.between(2, 6), rng.between(2, 6), plan.palette, 50);
            return apply_pattern({PK::scale_up, {}, plan.args}, small);
        }
        case PK::tile_grid:
            return noise_grid(rng, rng.between(2, 5), rng.between(2, 5), plan.palette, 60);
        case PK::palette_swap: {
            Grid g = noise_grid(rng, rng.between(3, 10), rng.between(3, 10), plan.palette, 50);
            if (!contains(g, static_cast<Color>(plan.args[0])) || !contains(g, static_cast<Color>(plan.args[1]))) {
                return std::nullopt;
            }
            return g;
        }
        case PK::overlay_pairs:
            return overlay_input(rng, plan);
        case PK::symmetry_complete:
            return symmetric_input(rng, plan);
        default:
            return std::nullopt;
    }
}

// ---- object scenes ----------------------------------------------------------

std::vector<int> distinct_sizes(Rand& rng, int n, int lo = 3, int hi = 10) {
    std::vector<int> pool;
    for (int s = lo; s <= hi; ++s) pool.push_back(s);
    rng.shuffle(pool);
    pool.resize(n);
    return pool;
}

std::vector<Piece> object_pieces(Rand& rng, const Plan& plan) {
    std::vector<Piece> pieces;
    auto add = [&](Shape s, Color c, bool target) { pieces.push_back({std::move(s), c, target, 0, 0}); };
    const PK kind = plan.kind;
    std::vector<Color> all_colors = plan.others;
    all_colors.push_back(plan.target);

    if (kind == PK::select_largest || kind == PK::select_smallest) {
        const bool largest = kind == PK::select_largest;
        if (plan.mode == Mode::all) {
            // The smallest must sit below the enumerated size ranks (0..3).
            const int n = largest ? rng.between(3, 5) : 5;
            for (int s : distinct_sizes(rng, n)) add(polyomino(rng, s), rng.pick(all_colors), true);
        } else {
            const int n = largest ? rng.between(4, 5) : 6;
            auto sizes = distinct_sizes(rng, n);
            std::sort(sizes.begin(), sizes.end());
            // The overall extreme is a distractor so the color selector matters.
            std::vector<bool> is_target(n, false);
            if (largest) {
                std::vector<int> idx(n - 1);
                for (int i = 0; i < n - 1; ++i) idx[i] = i;
                rng.shuffle(idx);
                is_target[idx[0]] = is_target[idx[1]] = true;
            } else {
                is_target[1] = true;
                is_target[rng.between(2, n - 1)] = true;
            }
            for (int i = 0; i < n; ++i) {
                add(polyomino(rng, sizes[i]), is_target[i] ? plan.target : rng.pick(plan.others), is_target[i]);
            }
        }
        return pieces;
    }

    if (kind == PK::cavity_fill) {
        switch (plan.mode) {
            case Mode::all:
                for (int k = rng.between(1, 2); k > 0; --k) add(holed_shape(rng, rng.between(1, 2)), rng.pick(all_colors), true);
                for (int k = rng.between(1, 2); k > 0; --k) add(holed_shape(rng, 0), rng.pick(all_colors), true);
                break;
            case Mode::color:
                for (int k = rng.between(1, 2); k > 0; --k) add(holed_shape(rng, rng.between(1, 2)), plan.target, true);
                add(holed_shape(rng, rng.between(1, 2)), rng.pick(plan.others), false);
                if (rng.chance(50)) add(holed_shape(rng, 0), rng.pick(plan.others), false);
                break;
            default:
                for (int k = 0; k < 2; ++k) add(holed_shape(rng, plan.cavities), plan.target, true);
                for (int k = rng.between(1, 2); k > 0; --k) add(holed_shape(rng, plan.other_cavities), plan.target, false);
                break;
        }
        return pieces;
    }

    switch (plan.mode) {
        case Mode::all: {
            int n = rng.between(2, 4);
            if (kind == PK::count_encode) n = rng.between(2, 6);
            // Gravity: one object already against the wall, the rest free, all
            // one color so no translate explains the move.
            const bool mono = kind == PK::gravity_shift;
            if (mono) n = 3;
            for (int k = 0; k < n; ++k) add(polyomino(rng, rng.between(3, 7)), mono ? plan.target : rng.pick(all_colors), true);
            break;
        }
        case Mode::color: {
            int targets = rng.between(1, 2);
            if (kind == PK::connect_objects || kind == PK::count_encode) targets = rng.between(2, 3);
            if (kind == PK::gravity_shift) targets = 3;
            for (int k = 0; k < targets; ++k) add(polyomino(rng, rng.between(3, 7)), plan.target, true);
            for (int k = rng.between(1, 3); k > 0; --k) add(polyomino(rng, rng.between(3, 7)), rng.pick(plan.others), false);
            break;
        }
        case Mode::rank: {
            const int n = rng.between(plan.rank + 2, std::max(plan.rank + 2, 5));
            auto sizes = distinct_sizes(rng, n, 3, 9);
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sizes[a] > sizes[b]; });
            for (int i = 0; i < n; ++i) add(polyomino(rng, sizes[i]), plan.target, order[plan.rank] == i);
            break;
        }
        case Mode::cavities: {
            const int targets = kind == PK::count_encode ? rng.between(2, 3) : 2;
            for (int k = 0; k < targets; ++k) add(holed_shape(rng, plan.cavities), plan.target, true);
            for (int k = rng.between(1, 2); k > 0; --k) add(holed_shape(rng, plan.other_cavities), plan.target, false);
            break;
        }
    }
    rng.shuffle(pieces);
    return pieces;
}

Wall wall_of(Direction d) {
    switch (d) {
        case Direction::up:
            return Wall::top;
        case Direction::down:
            return Wall::bottom;
        case Direction::left:
            return Wall::left;
        case Direction::right:
            return Wall::right;
    }
    return Wall::none;
}

// Copies or shifted pieces still form a non-touching, unclipped layout.
bool move_is_clean(int h, int w, const std::vector<Piece>& pieces, int dx, int dy, bool keep_original) {
    std::vector<Piece> layout;
    for (const Piece& p : pieces) {
        if (!p.target || keep_original) layout.push_back(p);
        if (p.target) layout.push_back({p.shape, p.color, false, p.top + dy, p.left + dx});
    }
    std::vector<int> owner(static_cast<std::size_t>(h) * w, -1);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (const Cell& c : layout[i].shape) {
            const int r = layout[i].top + c.row, col = layout[i].left + c.col;
            if (r < 0 || r >= h || col < 0 || col >= w) return false;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int nr = r + dr, nc = col + dc;
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    const int o = owner[nr * w + nc];
                    if (o >= 0 && o != static_cast<int>(i)) return false;
                }
            }
            owner[r * w + col] = static_cast<int>(i);
        }
    }
    return true;
}

std::optional<Grid> object_input(Rand& rng, const Plan& plan) {
    std::vector<Piece> pieces = object_pieces(rng, plan);
    const int h = rng.between(8, 14), w = rng.between(8, 14);
    Canvas canvas(h, w);
    const int edge = plan.kind == PK::draw_bbox_border || plan.kind == PK::crop_to_content ? 1 : 0;
    bool walled = false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Wall wall = Wall::none;
        if (plan.kind == PK::gravity_shift && pieces[i].target && !walled) {
            wall = wall_of(static_cast<Direction>(plan.args[0]));
            walled = true;
        }
        if (!canvas.place(rng, pieces[i], static_cast<int>(i), edge, wall)) return std::nullopt;
    }
    if (plan.kind == PK::translate && !move_is_clean(h, w, pieces, plan.args[0], plan.args[1], false)) {
        return std::nullopt;
    }
    if (plan.kind == PK::duplicate_object && !move_is_clean(h, w, pieces, plan.args[0], plan.args[1], true)) {
        return std::nullopt;
    }
    return render(h, w, pieces);
}

std::optional<Grid> crop_input(Rand& rng, const Plan& plan) {
    Plan scene = plan;
    scene.mode = Mode::all;
    return object_input(rng, scene);
}

std::optional<Grid> planted_input(Rand& rng, const Plan& plan) {
    if (plan.kind == PK::crop_to_content) return crop_input(rng, plan);
    if (kind_info(plan.kind).whole_grid) return whole_grid_input(rng, plan);
    return object_input(rng, plan);
}

std::optional<TrainPair> planted_pair(Rand& rng, const Plan& plan, const UnitPattern& p) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::optional<Grid> in = planted_input(rng, plan);
        if (!in) continue;
        std::optional<Grid> out;
        try {
            out = apply_pattern(p, *in);
        } catch (const ApplyError&) {
            continue;
        }
        if (grids_equal(*out, *in)) continue;
        return TrainPair{std::move(*in), std::move(*out)};
    }
    return std::nullopt;
}

// The selector must matter: on some train pair the same kind over every
// object gives a different grid.
bool selector_exercised(const UnitPattern& p, const std::vector<TrainPair>& train) {
    if (kind_info(p.kind).whole_grid || p.selector.kind == SelectorKind::all) return true;
    UnitPattern broad = p;
    broad.selector = Selector::all();
    for (const TrainPair& pair : train) {
        try {
            if (!grids_equal(apply_pattern(broad, pair.input), pair.output)) return true;
        } catch (const ApplyError&) {
            return true;
        }
    }
    return false;
}

}  // namespace

PlantedTask plant_task(std::mt19937_64& engine, PatternKind kind, int train_pairs) {
    if (train_pairs < 1) throw ContractError("a task needs at least one train pair");
    Rand rng(engine);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const Plan plan = make_plan(rng, kind);
        const UnitPattern p = pattern_of(plan);
        PlantedTask planted{{}, p};
        bool ok = true;
        for (int k = 0; k < train_pairs + 1 && ok; ++k) {
            auto pair = planted_pair(rng, plan, p);
            if (!pair) {
                ok = false;
            } else if (k < train_pairs) {
                planted.task.train.push_back(std::move(*pair));
            } else {
                planted.task.test.push_back({std::move(pair->input), std::move(pair->output)});
            }
        }
        if (ok && selector_exercised(p, planted.task.train)) return planted;
    }
    throw std::runtime_error("could not generate a task for " + std::string(kind_info(kind).name));
}

PlantedTask plant_random_task(std::mt19937_64& engine, int train_pairs) {
    Rand rng(engine);
    return plant_task(engine, static_cast<PatternKind>(rng.between(0, kNumPatternKinds - 1)), train_pairs);
}

Task noise_task(std::mt19937_64& engine, int train_pairs) {
    Rand rng(engine);
    const auto palette = rng.colors(4);
    Plan scene;
    scene.kind = PK::delete_object;
    scene.mode = Mode::all;
    scene.palette = palette;
    scene.others = {palette[1], palette[2]};
    scene.target = palette[0];
    auto input = [&] {
        for (;;) {
            if (auto g = object_input(rng, scene)) return *g;
        }
    };
    auto unrelated = [&] { return noise_grid(rng, rng.between(3, 8), rng.between(3, 8), palette, 50); };
    Task t;
    for (int k = 0; k < train_pairs; ++k) t.train.push_back({input(), unrelated()});
    t.test.push_back({input(), unrelated()});
    return t;
}

std::vector<NamedTask> generate_suite(const SuiteOptions& opts) {
    std::mt19937_64 engine(opts.seed);
    std::vector<NamedTask> suite;
    char id[32];
    for (int i = 0; i < opts.planted; ++i) {
        std::snprintf(id, sizeof id, "planted_%03d", i);
        suite.push_back({id, plant_task(engine, static_cast<PatternKind>(i % kNumPatternKinds)).task});
    }
    for (int i = 0; i < opts.noise; ++i) {
        std::snprintf(id, sizeof id, "zz_noise_%03d", i);
        suite.push_back({id, noise_task(engine)});
    }
    return suite;
}

}  // namespace arcsolve::synth
