#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcsolve/grid.hpp"

namespace arcsolve {

struct TrainPair {
    Grid input;
    Grid output;
};

struct TestItem {
    Grid input;
    std::optional<Grid> expected;
};

// An ARC task: at least one train pair and at least one test input.
struct Task {
    std::vector<TrainPair> train;
    std::vector<TestItem> test;

    friend bool operator==(const Task&, const Task&) = default;
};

inline bool operator==(const TrainPair& a, const TrainPair& b) { return a.input == b.input && a.output == b.output; }
inline bool operator==(const TestItem& a, const TestItem& b) { return a.input == b.input && a.expected == b.expected; }

// Parses the public ARC JSON task format. Throws ParseError (with a JSON path
// such as "train[0].input[2]") on structural problems and ValidationError
// (with coordinates) on out-of-range cells.
Task parse_task(std::string_view text);
Task load_task(const std::string& path);

// Compact JSON in the same schema; test items without an expected grid omit
// the "output" key.
std::string serialize_task(const Task& task);

// Pipe-delimited markdown table, one row per line, no header row:
//   |0|1|
//   |2|3|
std::string encode_markdown(const Grid& g);
// Strict inverse of encode_markdown. Throws ShapeError on ragged rows or an
// empty table and ValueError on a non-digit cell. Trailing newline optional.
Grid decode_markdown(std::string_view text);

}  // namespace arcsolve
