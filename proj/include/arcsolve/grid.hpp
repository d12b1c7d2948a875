#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace arcsolve {

using Color = std::uint8_t;

inline constexpr int kNumColors = 10;
inline constexpr int kMaxDim = 30;

constexpr bool is_valid_color(int v) noexcept { return v >= 0 && v < kNumColors; }
constexpr bool is_valid_dim(int v) noexcept { return v >= 1 && v <= kMaxDim; }

struct Dims {
    int height = 0;
    int width = 0;
    friend bool operator==(const Dims&, const Dims&) = default;
    int area() const noexcept { return height * width; }
};

struct Cell {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Row-major matrix of palette indices, row 0 at the top. Every constructed
// Grid satisfies: 1 <= height,width <= 30 and every cell in 0..9.
class Grid {
public:
    // Uniformly filled grid. Throws ValidationError on bad dims or color.
    Grid(int height, int width, Color fill = 0);
    // Throws ValidationError on bad dims, size mismatch or out-of-range cells.
    Grid(int height, int width, std::vector<Color> cells);
    // Convenience for literals; rows must be non-ragged.
    Grid(std::initializer_list<std::initializer_list<int>> rows);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    Dims dims() const noexcept { return {height_, width_}; }
    int area() const noexcept { return height_ * width_; }

    Color at(int row, int col) const noexcept { return cells_[index(row, col)]; }
    Color at(Cell c) const noexcept { return at(c.row, c.col); }
    // Caller guarantees color validity; checked in debug builds.
    void set(int row, int col, Color c) noexcept;
    void set(Cell cell, Color c) noexcept { set(cell.row, cell.col, c); }

    bool in_bounds(int row, int col) const noexcept {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    std::span<const Color> cells() const noexcept { return cells_; }
    std::span<Color> mutable_cells() noexcept { return cells_; }

    int index(int row, int col) const noexcept { return row * width_ + col; }

    friend bool operator==(const Grid& a, const Grid& b) = default;

private:
    int height_;
    int width_;
    std::vector<Color> cells_;
};

// Exact comparison: identical dims and identical cells.
bool grids_equal(const Grid& a, const Grid& b) noexcept;

// Number of cells that differ over the union of both extents; a cell present
// in only one grid counts as a mismatch.
std::size_t pixel_distance(const Grid& a, const Grid& b) noexcept;

}  // namespace arcsolve
