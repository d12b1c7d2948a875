#include "arcsolve/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <string>

#include "arcsolve/error.hpp"
#include "arcsolve/kernels.hpp"

namespace arcsolve {
namespace {

void check_dims(int height, int width) {
    if (!is_valid_dim(height) || !is_valid_dim(width)) {
        throw ValidationError("grid dimensions " + std::to_string(height) + "x" + std::to_string(width) +
                              " outside 1..30");
    }
}

}  // namespace

Grid::Grid(int height, int width, Color fill) : height_(height), width_(width) {
    check_dims(height, width);
    if (!is_valid_color(fill)) throw ValidationError("fill color " + std::to_string(fill) + " outside 0..9");
    cells_.assign(static_cast<std::size_t>(height) * width, fill);
}

Grid::Grid(int height, int width, std::vector<Color> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
    check_dims(height, width);
    if (cells_.size() != static_cast<std::size_t>(height) * width) {
        throw ValidationError("cell count " + std::to_string(cells_.size()) + " does not match " +
                              std::to_string(height) + "x" + std::to_string(width));
    }
    for (int i = 0; i < height * width; ++i) {
        if (!is_valid_color(cells_[i])) {
            throw ValidationError("cell value " + std::to_string(cells_[i]) + " at (" + std::to_string(i / width) +
                                      "," + std::to_string(i % width) + ") outside 0..9",
                                  i / width, i % width);
        }
    }
}

Grid::Grid(std::initializer_list<std::initializer_list<int>> rows)
    : height_(static_cast<int>(rows.size())), width_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
    check_dims(height_, width_);
    cells_.reserve(static_cast<std::size_t>(height_) * width_);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != width_) throw ValidationError("ragged grid literal", r, -1);
        int c = 0;
        for (int v : row) {
            if (!is_valid_color(v)) {
                throw ValidationError("cell value " + std::to_string(v) + " outside 0..9", r, c);
            }
            cells_.push_back(static_cast<Color>(v));
            ++c;
        }
        ++r;
    }
}

void Grid::set(int row, int col, Color c) noexcept {
    assert(in_bounds(row, col));
    assert(is_valid_color(c));
    cells_[index(row, col)] = c;
}

bool grids_equal(const Grid& a, const Grid& b) noexcept {
    if (a.dims() != b.dims()) return false;
    return std::memcmp(a.cells().data(), b.cells().data(), a.cells().size()) == 0;
}

std::size_t pixel_distance(const Grid& a, const Grid& b) noexcept {
    if (a.dims() == b.dims()) return kernels::count_mismatches(a.cells(), b.cells());
    const int h = std::min(a.height(), b.height());
    const int w = std::min(a.width(), b.width());
    const int union_area = std::max(a.height(), b.height()) * std::max(a.width(), b.width());
    std::size_t matches = 0;
    for (int r = 0; r < h; ++r) {
        const auto row_a = a.cells().subspan(static_cast<std::size_t>(r) * a.width(), w);
        const auto row_b = b.cells().subspan(static_cast<std::size_t>(r) * b.width(), w);
        matches += w - kernels::count_mismatches(row_a, row_b);
    }
    return static_cast<std::size_t>(union_area) - matches;
}

}  // namespace arcsolve
