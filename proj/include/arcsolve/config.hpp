#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "arcsolve/perception.hpp"
#include "arcsolve/solver.hpp"

namespace arcsolve {

struct Config {
    Connectivity connectivity = Connectivity::four;
    double confidence_threshold = 1.0;  // [0, 1]
    int search_budget = 2000;           // > 0
    int passes = 2;                     // 1 or 2
    int samples = 5;                    // >= 0
    std::optional<std::string> backend_url;
    std::int64_t seed = 0;
    std::optional<std::string> transcript_path;
    int jobs = 1;             // eval worker pool, >= 1
    int timeout_ms = 30000;   // backend request timeout, > 0
};

// Throws ConfigError naming the offending field.
void validate(const Config& c);

// JSON object with any subset of the field names above; unknown keys are
// rejected. The result is validated.
Config config_from_json(std::string_view text);
Config load_config(const std::string& path);

PipelineOptions pipeline_options(const Config& c);

}  // namespace arcsolve
