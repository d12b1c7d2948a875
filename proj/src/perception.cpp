#include "arcsolve/perception.hpp"

#include <algorithm>
#include <array>

#include "arcsolve/kernels.hpp"

namespace arcsolve {
namespace {

constexpr std::array<Cell, 8> kSteps{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};

int step_count(Connectivity conn) noexcept { return conn == Connectivity::eight ? 8 : 4; }

// Labels the complement of the object inside its bbox: 0 = object cell,
// 1 = reached from the border, >= 2 = cavity region index + 2.
struct CavityMap {
    BBox box;
    std::vector<int> label;
    int regions = 0;
};

CavityMap label_cavities(const GridObject& obj) {
    CavityMap map{obj.bbox, {}, 0};
    const int h = obj.bbox.height();
    const int w = obj.bbox.width();
    constexpr int kUnvisited = -1;
    map.label.assign(static_cast<std::size_t>(h) * w, kUnvisited);
    for (const Cell& c : obj.mask) map.label[(c.row - obj.bbox.top) * w + (c.col - obj.bbox.left)] = 0;

    std::vector<int> queue;
    queue.reserve(map.label.size());
    auto flood = [&](int start, int value) {
        map.label[start] = value;
        queue.clear();
        queue.push_back(start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int r = queue[head] / w;
            const int c = queue[head] % w;
            for (int k = 0; k < 4; ++k) {
                const int nr = r + kSteps[k].row;
                const int nc = c + kSteps[k].col;
                if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                const int ni = nr * w + nc;
                if (map.label[ni] != kUnvisited) continue;
                map.label[ni] = value;
                queue.push_back(ni);
            }
        }
    };

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const bool border = r == 0 || c == 0 || r == h - 1 || c == w - 1;
            if (border && map.label[r * w + c] == kUnvisited) flood(r * w + c, 1);
        }
    }
    for (int i = 0; i < h * w; ++i) {
        if (map.label[i] == kUnvisited) flood(i, 2 + map.regions++);
    }
    return map;
}

}  // namespace

Color background_color(const Grid& g) noexcept {
    const auto hist = kernels::color_histogram(g.cells());
    // max_element returns the first maximum, i.e. the lowest color on ties.
    return static_cast<Color>(std::max_element(hist.begin(), hist.end()) - hist.begin());
}

BBox bounding_box(const PixelMask& mask) noexcept {
    BBox box{mask.front().row, mask.front().col, mask.front().row, mask.front().col};
    for (const Cell& c : mask) {
        box.top = std::min(box.top, c.row);
        box.bottom = std::max(box.bottom, c.row);
        box.left = std::min(box.left, c.col);
        box.right = std::max(box.right, c.col);
    }
    return box;
}

bool same_shape(const GridObject& a, const GridObject& b) noexcept {
    if (a.size() != b.size() || a.bbox.height() != b.bbox.height() || a.bbox.width() != b.bbox.width()) return false;
    for (std::size_t k = 0; k < a.mask.size(); ++k) {
        if (a.mask[k].row - a.bbox.top != b.mask[k].row - b.bbox.top ||
            a.mask[k].col - a.bbox.left != b.mask[k].col - b.bbox.left) {
            return false;
        }
    }
    return true;
}

Perception segment(const Grid& g, Connectivity conn) { return segment_with_background(g, background_color(g), conn); }

Perception segment_with_background(const Grid& g, Color background, Connectivity conn) {
    Perception p;
    p.background = background;
    p.source_dims = g.dims();

    const int h = g.height();
    const int w = g.width();
    const int steps = step_count(conn);
    std::vector<int> label(static_cast<std::size_t>(h) * w, -1);
    std::vector<int> queue;
    queue.reserve(label.size());
    std::vector<int> sizes;

    for (int start = 0; start < h * w; ++start) {
        const Color color = g.cells()[start];
        if (color == background || label[start] >= 0) continue;
        const int id = static_cast<int>(sizes.size());
        label[start] = id;
        queue.clear();
        queue.push_back(start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int r = queue[head] / w;
            const int c = queue[head] % w;
            for (int k = 0; k < steps; ++k) {
                const int nr = r + kSteps[k].row;
                const int nc = c + kSteps[k].col;
                if (!g.in_bounds(nr, nc)) continue;
                const int ni = nr * w + nc;
                if (label[ni] >= 0 || g.cells()[ni] != color) continue;
                label[ni] = id;
                queue.push_back(ni);
            }
        }
        sizes.push_back(static_cast<int>(queue.size()));
    }

    p.objects.resize(sizes.size());
    for (std::size_t id = 0; id < sizes.size(); ++id) {
        p.objects[id].id = static_cast<int>(id);
        p.objects[id].mask.reserve(sizes[id]);
    }
    // A second row-major pass yields masks already in sorted order.
    for (int i = 0; i < h * w; ++i) {
        if (label[i] < 0) continue;
        GridObject& obj = p.objects[label[i]];
        obj.color = g.cells()[i];
        obj.mask.push_back({i / w, i % w});
    }
    for (GridObject& obj : p.objects) {
        obj.bbox = bounding_box(obj.mask);
        obj.cavity_count = detect_cavities(obj, p.source_dims);
    }
    return p;
}

int detect_cavities(const GridObject& obj, Dims /*dims*/) {
    if (obj.mask.empty() || obj.bbox.height() < 3 || obj.bbox.width() < 3) return 0;
    return label_cavities(obj).regions;
}

std::vector<Cell> cavity_cells(const GridObject& obj) {
    std::vector<Cell> cells;
    if (obj.mask.empty() || obj.bbox.height() < 3 || obj.bbox.width() < 3) return cells;
    const CavityMap map = label_cavities(obj);
    const int w = obj.bbox.width();
    for (int i = 0; i < static_cast<int>(map.label.size()); ++i) {
        if (map.label[i] >= 2) cells.push_back({obj.bbox.top + i / w, obj.bbox.left + i % w});
    }
    return cells;
}

}  // namespace arcsolve
