// Forward semantics of the 23 atomic operations.

#include <algorithm>
#include <numeric>

#include "arcsolve/error.hpp"
#include "arcsolve/kernels.hpp"
#include "arcsolve/pattern.hpp"

namespace arcsolve {
namespace {

using PK = PatternKind;

void check_result_dims(int h, int w, std::string_view what) {
    if (h > kMaxDim || w > kMaxDim) {
        throw BoundsError(std::string(what) + ": result " + std::to_string(h) + "x" + std::to_string(w) +
                          " exceeds 30x30");
    }
}

Grid rotate90(const Grid& g) {
    Grid out(g.width(), g.height());
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) out.set(r, c, g.at(g.height() - 1 - c, r));
    }
    return out;
}

Grid rotate180(const Grid& g) {
    Grid out = g;
    auto cells = out.mutable_cells();
    std::reverse(cells.begin(), cells.end());
    return out;
}

Grid rotate270(const Grid& g) {
    Grid out(g.width(), g.height());
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) out.set(r, c, g.at(c, g.width() - 1 - r));
    }
    return out;
}

Grid reflect_h(const Grid& g) {
    Grid out = g;
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) out.set(r, c, g.at(r, g.width() - 1 - c));
    }
    return out;
}

Grid reflect_v(const Grid& g) {
    Grid out = g;
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) out.set(r, c, g.at(g.height() - 1 - r, c));
    }
    return out;
}

Grid sub_grid(const Grid& g, int top, int left, int h, int w) {
    Grid out(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) out.set(r, c, g.at(top + r, left + c));
    }
    return out;
}

Grid crop_to_content(const Grid& g) {
    const Color bg = background_color(g);
    int top = g.height(), left = g.width(), bottom = -1, right = -1;
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
            if (g.at(r, c) == bg) continue;
            top = std::min(top, r);
            bottom = std::max(bottom, r);
            left = std::min(left, c);
            right = std::max(right, c);
        }
    }
    if (bottom < 0) throw InapplicableError("crop_to_content: grid has no content");
    return sub_grid(g, top, left, bottom - top + 1, right - left + 1);
}

Grid scale_up(const Grid& g, int k) {
    check_result_dims(g.height() * k, g.width() * k, "scale_up");
    Grid out(g.height() * k, g.width() * k);
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) out.set(r, c, g.at(r / k, c / k));
    }
    return out;
}

Grid scale_down(const Grid& g, int k) {
    if (g.height() % k || g.width() % k) throw InapplicableError("scale_down: dims not divisible by factor");
    Grid out(g.height() / k, g.width() / k);
    for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
            if (g.at(r, c) != g.at(r - r % k, c - c % k)) {
                throw InapplicableError("scale_down: grid is not an exact block replication");
            }
        }
    }
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) out.set(r, c, g.at(r * k, c * k));
    }
    return out;
}

Grid tile_grid(const Grid& g, int rows, int cols) {
    check_result_dims(g.height() * rows, g.width() * cols, "tile_grid");
    Grid out(g.height() * rows, g.width() * cols);
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) out.set(r, c, g.at(r % g.height(), c % g.width()));
    }
    return out;
}

Grid palette_swap(const Grid& g, int a, int b) {
    Grid out = g;
    kernels::swap_colors(out.mutable_cells(), static_cast<Color>(a), static_cast<Color>(b));
    return out;
}

// Two equal halves, optionally separated by a single middle row/column that is
// dropped; the first half wins wherever it is not background.
Grid overlay_pairs(const Grid& g, Split split) {
    const Color bg = background_color(g);
    const bool lr = split == Split::lr;
    const int extent = lr ? g.width() : g.height();
    if (extent < 2) throw InapplicableError("overlay_pairs: grid too small to split");
    const int half = extent / 2;
    const int second = extent - half;  // offset of the second half
    Grid out = lr ? Grid(g.height(), half) : Grid(half, g.width());
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
            const Color first = g.at(r, c);
            const Color other = lr ? g.at(r, c + second) : g.at(r + second, c);
            out.set(r, c, first != bg ? first : other);
        }
    }
    return out;
}

// Background cells take the color of their first non-background mirror image.
Grid symmetry_complete(const Grid& g, Axis axis) {
    const Color bg = background_color(g);
    Grid out = g;
    const int h = g.height();
    const int w = g.width();
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (g.at(r, c) != bg) continue;
            const Cell mirrors[3] = {{r, w - 1 - c}, {h - 1 - r, c}, {h - 1 - r, w - 1 - c}};
            const int first = axis == Axis::v ? 1 : 0;
            const int last = axis == Axis::both ? 3 : first + 1;
            for (int m = first; m < last; ++m) {
                if (g.at(mirrors[m]) != bg) {
                    out.set(r, c, g.at(mirrors[m]));
                    break;
                }
            }
        }
    }
    return out;
}

Grid apply_whole_grid(const UnitPattern& p, const Grid& g) {
    switch (p.kind) {
        case PK::rotate90:
            return rotate90(g);
        case PK::rotate180:
            return rotate180(g);
        case PK::rotate270:
            return rotate270(g);
        case PK::reflect_h:
            return reflect_h(g);
        case PK::reflect_v:
            return reflect_v(g);
        case PK::crop_to_content:
            return crop_to_content(g);
        case PK::scale_up:
            return scale_up(g, p.args[0]);
        case PK::scale_down:
            return scale_down(g, p.args[0]);
        case PK::tile_grid:
            return tile_grid(g, p.args[0], p.args[1]);
        case PK::palette_swap:
            return palette_swap(g, p.args[0], p.args[1]);
        case PK::overlay_pairs:
            return overlay_pairs(g, static_cast<Split>(p.args[0]));
        case PK::symmetry_complete:
            return symmetry_complete(g, static_cast<Axis>(p.args[0]));
        default:
            throw ContractError("not a whole-grid kind");
    }
}

void paint(Grid& canvas, const GridObject& obj, Color color, int dx = 0, int dy = 0) {
    for (const Cell& cell : obj.mask) {
        const int r = cell.row + dy;
        const int c = cell.col + dx;
        if (canvas.in_bounds(r, c)) canvas.set(r, c, color);
    }
}

std::vector<bool> selection_flags(const std::vector<int>& selected, std::size_t n) {
    std::vector<bool> flags(n, false);
    for (int i : selected) flags[i] = true;
    return flags;
}

// Paints every object in id order (higher ids land on top); selected objects
// are shifted and clipped.
Grid translate(const Grid& g, const Perception& scene, const std::vector<int>& selected, int dx, int dy) {
    Grid out(g.height(), g.width(), scene.background);
    const auto moving = selection_flags(selected, scene.objects.size());
    for (const GridObject& obj : scene.objects) {
        if (moving[obj.id])
            paint(out, obj, obj.color, dx, dy);
        else
            paint(out, obj, obj.color);
    }
    return out;
}

Grid gravity_shift(const Grid& g, const Perception& scene, std::vector<int> selected, Direction dir) {
    int dr = 0, dc = 0;
    switch (dir) {
        case Direction::up:
            dr = -1;
            break;
        case Direction::down:
            dr = 1;
            break;
        case Direction::left:
            dc = -1;
            break;
        case Direction::right:
            dc = 1;
            break;
    }
    // Objects nearest the destination wall settle first.
    auto lead = [&](int i) {
        const BBox& b = scene.objects[i].bbox;
        switch (dir) {
            case Direction::up:
                return b.top;
            case Direction::down:
                return -b.bottom;
            case Direction::left:
                return b.left;
            case Direction::right:
                return -b.right;
        }
        return 0;
    };
    std::stable_sort(selected.begin(), selected.end(), [&](int a, int b) { return lead(a) < lead(b); });

    Grid out = g;
    for (int i : selected) {
        const GridObject& obj = scene.objects[i];
        paint(out, obj, scene.background);
        int steps = 0;
        for (;;) {
            const int next = steps + 1;
            const bool free = std::all_of(obj.mask.begin(), obj.mask.end(), [&](const Cell& c) {
                const int r = c.row + dr * next;
                const int col = c.col + dc * next;
                return out.in_bounds(r, col) && out.at(r, col) == scene.background;
            });
            if (!free) break;
            steps = next;
        }
        paint(out, obj, obj.color, dc * steps, dr * steps);
    }
    return out;
}

Grid draw_bbox_border(const Grid& g, const Perception& scene, const std::vector<int>& selected, Color color) {
    Grid out = g;
    for (int i : selected) {
        const BBox& b = scene.objects[i].bbox;
        for (int r = b.top - 1; r <= b.bottom + 1; ++r) {
            for (int c = b.left - 1; c <= b.right + 1; ++c) {
                const bool ring = r == b.top - 1 || r == b.bottom + 1 || c == b.left - 1 || c == b.right + 1;
                if (ring && g.in_bounds(r, c) && g.at(r, c) == scene.background) out.set(r, c, color);
            }
        }
    }
    return out;
}

// Along every row and column, the background run between two cells of
// different selected objects is painted. Runs are judged on the input grid.
Grid connect_objects(const Grid& g, const Perception& scene, const std::vector<int>& selected, Color color) {
    std::vector<int> owner(static_cast<std::size_t>(g.area()), -1);
    for (int i : selected) {
        for (const Cell& c : scene.objects[i].mask) owner[g.index(c.row, c.col)] = i;
    }
    Grid out = g;
    auto scan_line = [&](int count, auto cell_at) {
        int prev = -1;  // position of the previous non-background cell on the line
        for (int k = 0; k < count; ++k) {
            const Cell cell = cell_at(k);
            if (g.at(cell) == scene.background) continue;
            if (prev >= 0) {
                const int a = owner[g.index(cell_at(prev).row, cell_at(prev).col)];
                const int b = owner[g.index(cell.row, cell.col)];
                if (a >= 0 && b >= 0 && a != b) {
                    for (int m = prev + 1; m < k; ++m) out.set(cell_at(m), color);
                }
            }
            prev = k;
        }
    };
    for (int r = 0; r < g.height(); ++r) scan_line(g.width(), [r](int k) { return Cell{r, k}; });
    for (int c = 0; c < g.width(); ++c) scan_line(g.height(), [c](int k) { return Cell{k, c}; });
    return out;
}

Grid select_by_size(const Grid& g, const Perception& scene, const std::vector<int>& selected, bool largest) {
    if (selected.empty()) throw InapplicableError("select: no objects selected");
    int best = selected.front();
    for (int i : selected) {
        const int s = scene.objects[i].size();
        const int bs = scene.objects[best].size();
        if (largest ? s > bs : s < bs) best = i;
    }
    const GridObject& obj = scene.objects[best];
    Grid out(obj.bbox.height(), obj.bbox.width(), scene.background);
    paint(out, obj, obj.color, -obj.bbox.left, -obj.bbox.top);
    (void)g;
    return out;
}

Grid apply_object_level(const UnitPattern& p, const Grid& g, const Perception& scene) {
    const std::vector<int> selected = resolve_selector(p.selector, scene);
    switch (p.kind) {
        case PK::translate:
            return translate(g, scene, selected, p.args[0], p.args[1]);
        case PK::recolor: {
            Grid out = g;
            for (int i : selected) paint(out, scene.objects[i], static_cast<Color>(p.args[0]));
            return out;
        }
        case PK::delete_object: {
            Grid out = g;
            for (int i : selected) paint(out, scene.objects[i], scene.background);
            return out;
        }
        case PK::cavity_fill: {
            Grid out = g;
            for (int i : selected) {
                for (const Cell& c : cavity_cells(scene.objects[i])) {
                    if (g.at(c) == scene.background) out.set(c, static_cast<Color>(p.args[0]));
                }
            }
            return out;
        }
        case PK::duplicate_object: {
            Grid out = g;
            for (int i : selected) paint(out, scene.objects[i], scene.objects[i].color, p.args[0], p.args[1]);
            return out;
        }
        case PK::gravity_shift:
            return gravity_shift(g, scene, selected, static_cast<Direction>(p.args[0]));
        case PK::draw_bbox_border:
            return draw_bbox_border(g, scene, selected, static_cast<Color>(p.args[0]));
        case PK::connect_objects:
            return connect_objects(g, scene, selected, static_cast<Color>(p.args[0]));
        case PK::select_largest:
            return select_by_size(g, scene, selected, true);
        case PK::select_smallest:
            return select_by_size(g, scene, selected, false);
        case PK::count_encode: {
            const int n = static_cast<int>(selected.size());
            if (n == 0) throw InapplicableError("count_encode: no objects selected");
            check_result_dims(1, n, "count_encode");
            return Grid(1, n, static_cast<Color>(p.args[0]));
        }
        default:
            throw ContractError("not an object-level kind");
    }
}

}  // namespace

Grid apply_pattern(const UnitPattern& p, const Grid& g, const ApplyOptions& opts) {
    validate(p);
    if (kind_info(p.kind).whole_grid) return apply_whole_grid(p, g);
    return apply_object_level(p, g, segment(g, opts.connectivity));
}

Grid apply_pattern(const UnitPattern& p, const Grid& g, const Perception& scene) {
    validate(p);
    if (scene.source_dims != g.dims()) throw ContractError("perception does not belong to this grid");
    if (kind_info(p.kind).whole_grid) return apply_whole_grid(p, g);
    return apply_object_level(p, g, scene);
}

}  // namespace arcsolve
