#include <string>
#include <vector>

#include "arcsolve/error.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve {

std::string encode_markdown(const Grid& g) {
    std::string out;
    out.reserve(static_cast<std::size_t>(g.height()) * (2 * g.width() + 2));
    for (int r = 0; r < g.height(); ++r) {
        if (r > 0) out.push_back('\n');
        out.push_back('|');
        for (int c = 0; c < g.width(); ++c) {
            out.push_back(static_cast<char>('0' + g.at(r, c)));
            out.push_back('|');
        }
    }
    return out;
}

Grid decode_markdown(std::string_view text) {
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    if (text.empty()) throw ShapeError("empty markdown grid");

    std::vector<Color> cells;
    int width = -1;
    int row = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        if (line.size() < 3 || line.front() != '|' || line.back() != '|') {
            throw ShapeError("row " + std::to_string(row) + " is not a pipe-delimited table row");
        }
        int col = 0;
        std::size_t start = 1;
        while (start < line.size()) {
            const std::size_t bar = line.find('|', start);
            const std::string_view cell = line.substr(start, bar - start);
            if (cell.size() != 1 || cell[0] < '0' || cell[0] > '9') {
                throw ValueError("cell at (" + std::to_string(row) + "," + std::to_string(col) + ") is not a digit",
                                 row, col);
            }
            cells.push_back(static_cast<Color>(cell[0] - '0'));
            ++col;
            start = bar + 1;
        }
        if (width < 0) width = col;
        if (col != width) {
            throw ShapeError("ragged rows: row 0 has width " + std::to_string(width) + ", row " +
                             std::to_string(row) + " has width " + std::to_string(col));
        }
        ++row;
        pos = eol + 1;
    }
    if (!is_valid_dim(row) || !is_valid_dim(width)) {
        throw ShapeError("grid dimensions " + std::to_string(row) + "x" + std::to_string(width) + " outside 1..30");
    }
    return Grid(row, width, std::move(cells));
}

}  // namespace arcsolve
