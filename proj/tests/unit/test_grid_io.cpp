#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "arcsolve/error.hpp"
#include "arcsolve/task.hpp"
#include "oracles.hpp"

using namespace arcsolve;

TEST_CASE("grid construction validates dims and colors") {
    CHECK_THROWS_AS(Grid(0, 3), ValidationError);
    CHECK_THROWS_AS(Grid(31, 1), ValidationError);
    CHECK_THROWS_AS(Grid(2, 2, 10), ValidationError);
    CHECK_THROWS_AS(Grid(1, 2, std::vector<Color>{1}), ValidationError);
    try {
        Grid(1, 2, std::vector<Color>{1, 12});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.row() == 0);
        CHECK(e.col() == 1);
    }
    const Grid g{{1, 2}, {3, 4}};
    CHECK(g.at(1, 0) == 3);
    CHECK(g.dims() == Dims{2, 2});
    CHECK(Grid(30, 30, 9).area() == 900);
}

TEST_CASE("grids_equal requires identical dims and cells") {
    CHECK(grids_equal(Grid{{1, 2}}, Grid{{1, 2}}));
    CHECK_FALSE(grids_equal(Grid{{1, 2}}, Grid{{1}, {2}}));
    CHECK_FALSE(grids_equal(Grid{{1, 2}}, Grid{{1, 3}}));
}

TEST_CASE("pixel_distance counts mismatches over the union extent") {
    CHECK(pixel_distance(Grid{{1, 2}}, Grid{{1, 3}}) == 1);
    // 2x2 vs 1x3: union 2x3 = 6 cells, overlap 1x2 matches at (0,0) only.
    CHECK(pixel_distance(Grid{{1, 2}, {3, 4}}, Grid{{1, 5, 6}}) == 5);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const Grid a = oracle::random_grid(rng, 8);
        const Grid b = oracle::random_grid(rng, 8);
        std::size_t expected = 0;
        const int h = std::max(a.height(), b.height()), w = std::max(a.width(), b.width());
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const bool both = a.in_bounds(r, c) && b.in_bounds(r, c);
                if (!both || a.at(r, c) != b.at(r, c)) ++expected;
            }
        }
        CHECK(pixel_distance(a, b) == expected);
        CHECK(pixel_distance(a, b) == pixel_distance(b, a));
    }
}

TEST_CASE("markdown encoding") {
    CHECK(encode_markdown(Grid{{0, 1}, {2, 3}}) == "|0|1|\n|2|3|");
    CHECK(grids_equal(decode_markdown("|0|1|\n|2|3|\n"), Grid{{0, 1}, {2, 3}}));
    CHECK(grids_equal(decode_markdown("|7|"), Grid{{7}}));
}

TEST_CASE("markdown decoder rejects malformed tables") {
    CHECK_THROWS_AS(decode_markdown("|1|2|\n|3|"), ShapeError);
    CHECK_THROWS_AS(decode_markdown(""), ShapeError);
    CHECK_THROWS_AS(decode_markdown("1|2|"), ShapeError);
    CHECK_THROWS_AS(decode_markdown("|1|2|\n\n|1|2|"), ShapeError);
    try {
        decode_markdown("|1|2|\n|3|x|");
        FAIL("expected ValueError");
    } catch (const ValueError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
    CHECK_THROWS_AS(decode_markdown("|12|"), ValueError);
    CHECK_THROWS_AS(decode_markdown("||"), ShapeError);
}

TEST_CASE("markdown round trip on random grids") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const Grid g = oracle::random_grid(rng);
        CHECK(grids_equal(decode_markdown(encode_markdown(g)), g));
    }
}

TEST_CASE("task JSON parsing") {
    const Task t = parse_task(R"({"train":[{"input":[[1,0]],"output":[[0,1]]}],"test":[{"input":[[2,2]]}]})");
    REQUIRE(t.train.size() == 1);
    CHECK(grids_equal(t.train[0].output, Grid{{0, 1}}));
    CHECK_FALSE(t.test[0].expected.has_value());
    CHECK(parse_task(serialize_task(t)) == t);
    CHECK(serialize_task(t) == R"({"train":[{"input":[[1,0]],"output":[[0,1]]}],"test":[{"input":[[2,2]]}]})");
}

TEST_CASE("task JSON errors carry a path") {
    auto path_of = [](const char* text) {
        try {
            parse_task(text);
        } catch (const ParseError& e) {
            return e.path();
        }
        return std::string("no error");
    };
    CHECK(path_of("{") == "$");
    CHECK(path_of(R"({"test":[]})") == "$");
    CHECK(path_of(R"({"train":[{"input":[[1],[1,2]],"output":[[1]]}],"test":[{"input":[[1]]}]})") ==
          "train[0].input[1]");
    CHECK(path_of(R"({"train":[{"input":[[1]],"output":[[1,"a"]]}],"test":[{"input":[[1]]}]})") ==
          "train[0].output[0][1]");
    CHECK(path_of(R"({"train":[{"input":[[1]]}],"test":[{"input":[[1]]}]})") == "train[0]");

    try {
        parse_task(R"({"train":[{"input":[[1,0],[0,11]],"output":[[1]]}],"test":[{"input":[[1]]}]})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
    CHECK_THROWS_AS(parse_task(R"({"train":[{"input":[[-300]],"output":[[1]]}],"test":[{"input":[[1]]}]})"),
                    ValidationError);
}

TEST_CASE("load_task names the file in errors") {
    CHECK_THROWS_WITH_AS(load_task("/nonexistent/task.json"), doctest::Contains("/nonexistent/task.json"), ParseError);
    const std::string path =
        (std::filesystem::temp_directory_path() / ("arcsolve_bad_task_" + std::to_string(::getpid()) + ".json")).string();
    std::ofstream(path) << R"({"train":[{"input":[[1]],"output":[[1]]}],"test":[{"input":[[1],[2,3]]}]})";
    try {
        load_task(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == path + ": test[0].input[1]");
        CHECK(std::string(e.what()).find(path) == 0);
    }
    std::filesystem::remove(path);
}
