#pragma once

#include <vector>

#include "arcsolve/grid.hpp"

namespace arcsolve {

enum class Connectivity { four = 4, eight = 8 };

struct BBox {
    int top = 0;
    int left = 0;
    int bottom = 0;  // inclusive
    int right = 0;   // inclusive
    int height() const noexcept { return bottom - top + 1; }
    int width() const noexcept { return right - left + 1; }
    friend bool operator==(const BBox&, const BBox&) = default;
};

// Cells of one object, sorted row-major, unique, non-empty.
using PixelMask = std::vector<Cell>;

struct GridObject {
    int id = 0;
    Color color = 0;
    PixelMask mask;
    BBox bbox;
    int cavity_count = 0;

    int size() const noexcept { return static_cast<int>(mask.size()); }
};

// Figure/ground decomposition of a grid. Object ids equal their index in
// `objects` and follow first-encounter row-major scan order.
struct Perception {
    std::vector<GridObject> objects;
    Color background = 0;
    Dims source_dims;
};

// Most frequent color; ties go to the lowest color value.
Color background_color(const Grid& g) noexcept;

// Color-aware BFS flood fill over non-background cells. Linear in cell count.
Perception segment(const Grid& g, Connectivity conn = Connectivity::four);

// Same, with the background fixed by the caller.
Perception segment_with_background(const Grid& g, Color background, Connectivity conn = Connectivity::four);

// Connected regions (4-connectivity) of non-object cells inside the object's
// bbox that the flood from the bbox border does not reach.
int detect_cavities(const GridObject& obj, Dims dims);

// All cells belonging to the object's cavities, row-major.
std::vector<Cell> cavity_cells(const GridObject& obj);

BBox bounding_box(const PixelMask& mask) noexcept;

// Identical masks up to translation (color ignored).
bool same_shape(const GridObject& a, const GridObject& b) noexcept;

}  // namespace arcsolve
