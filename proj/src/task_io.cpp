#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arcsolve/error.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve {
namespace {

using nlohmann::json;

Grid grid_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of rows");
    const int height = static_cast<int>(j.size());
    int width = -1;
    std::vector<Color> cells;
    for (int r = 0; r < height; ++r) {
        const json& row = j[r];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.empty()) throw ParseError(row_path, "expected a non-empty array of cells");
        if (width < 0) width = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != width) {
            throw ParseError(row_path, "row has " + std::to_string(row.size()) + " cells, expected " +
                                           std::to_string(width));
        }
        for (int c = 0; c < width; ++c) {
            const json& v = row[c];
            if (!v.is_number_integer()) {
                throw ParseError(row_path + "[" + std::to_string(c) + "]", "cell is not an integer");
            }
            const auto value = v.get<long long>();
            if (value < 0 || value > 9) {
                throw ValidationError(path + ": cell value " + std::to_string(value) + " at (" + std::to_string(r) +
                                          "," + std::to_string(c) + ") outside 0..9",
                                      r, c);
            }
            cells.push_back(static_cast<Color>(value));
        }
    }
    if (!is_valid_dim(height) || !is_valid_dim(width)) {
        throw ValidationError(path + ": grid dimensions " + std::to_string(height) + "x" + std::to_string(width) +
                              " outside 1..30");
    }
    return Grid(height, width, std::move(cells));
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path, std::string("missing key \"") + key + "\"");
    return *it;
}

nlohmann::ordered_json grid_to_json(const Grid& g) {
    auto rows = nlohmann::ordered_json::array();
    for (int r = 0; r < g.height(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int c = 0; c < g.width(); ++c) row.push_back(static_cast<int>(g.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Task parse_task(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("$", e.what());
    }
    if (!doc.is_object()) throw ParseError("$", "top level must be an object");

    Task task;
    const json& train = require(doc, "train", "$");
    if (!train.is_array() || train.empty()) throw ParseError("train", "expected a non-empty array");
    for (std::size_t i = 0; i < train.size(); ++i) {
        const std::string p = "train[" + std::to_string(i) + "]";
        if (!train[i].is_object()) throw ParseError(p, "expected an object");
        task.train.push_back({grid_from_json(require(train[i], "input", p), p + ".input"),
                              grid_from_json(require(train[i], "output", p), p + ".output")});
    }

    const json& test = require(doc, "test", "$");
    if (!test.is_array() || test.empty()) throw ParseError("test", "expected a non-empty array");
    for (std::size_t i = 0; i < test.size(); ++i) {
        const std::string p = "test[" + std::to_string(i) + "]";
        if (!test[i].is_object()) throw ParseError(p, "expected an object");
        TestItem item{grid_from_json(require(test[i], "input", p), p + ".input"), std::nullopt};
        if (auto it = test[i].find("output"); it != test[i].end()) {
            item.expected = grid_from_json(*it, p + ".output");
        }
        task.test.push_back(std::move(item));
    }
    return task;
}

Task load_task(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_task(buf.str());
    } catch (const ParseError& e) {
        const std::string_view what{e.what()};
        throw ParseError(path + ": " + e.path(), std::string(what.substr(std::min(what.size(), e.path().size() + 2))));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what(), e.row(), e.col());
    }
}

std::string serialize_task(const Task& task) {
    nlohmann::ordered_json doc;
    doc["train"] = nlohmann::ordered_json::array();
    for (const auto& pair : task.train) {
        nlohmann::ordered_json item;
        item["input"] = grid_to_json(pair.input);
        item["output"] = grid_to_json(pair.output);
        doc["train"].push_back(std::move(item));
    }
    doc["test"] = nlohmann::ordered_json::array();
    for (const auto& t : task.test) {
        nlohmann::ordered_json item;
        item["input"] = grid_to_json(t.input);
        if (t.expected) item["output"] = grid_to_json(*t.expected);
        doc["test"].push_back(std::move(item));
    }
    return doc.dump();
}

}  // namespace arcsolve
