#include "arcsolve/kernels.hpp"

namespace arcsolve::kernels::scalar {

std::size_t count_mismatches(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t diff = 0;
    for (std::size_t i = 0; i < n; ++i) diff += a[i] != b[i];
    return diff;
}

void color_histogram(const std::uint8_t* cells, std::size_t n, std::uint32_t* counts) {
    for (int c = 0; c < 10; ++c) counts[c] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i] < 10) ++counts[cells[i]];
    }
}

void accumulate_color_weight(const std::uint8_t* cells, std::size_t n, std::uint8_t color,
                             double weight, double* acc) {
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i] == color) acc[i] += weight;
    }
}

void swap_colors(std::uint8_t* cells, std::size_t n, std::uint8_t a, std::uint8_t b) {
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i] == a)
            cells[i] = b;
        else if (cells[i] == b)
            cells[i] = a;
    }
}

}  // namespace arcsolve::kernels::scalar
