#include "arcsolve/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arcsolve/error.hpp"

namespace arcsolve {

void validate(const Config& c) {
    if (c.connectivity != Connectivity::four && c.connectivity != Connectivity::eight) {
        throw ConfigError("connectivity must be 4 or 8");
    }
    if (!(c.confidence_threshold >= 0.0 && c.confidence_threshold <= 1.0)) {
        throw ConfigError("confidence_threshold must be within [0, 1]");
    }
    if (c.search_budget <= 0) throw ConfigError("search_budget must be a positive integer");
    if (c.passes != 1 && c.passes != 2) throw ConfigError("passes must be 1 or 2");
    if (c.samples < 0) throw ConfigError("samples must be non-negative");
    if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
    if (c.timeout_ms <= 0) throw ConfigError("timeout_ms must be positive");
    if (c.backend_url && c.backend_url->empty()) throw ConfigError("backend_url must not be empty");
    if (c.transcript_path && c.transcript_path->empty()) throw ConfigError("transcript_path must not be empty");
}

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(key) + " has the wrong type");
    }
}

int int_field(const nlohmann::json& j, const char* key) {
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    return field<int>(j, key);
}

}  // namespace

Config config_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    Config c;
    for (const auto& [key, value] : j.items()) {
        const char* k = key.c_str();
        if (key == "connectivity") {
            const int v = int_field(j, k);
            if (v != 4 && v != 8) throw ConfigError("connectivity must be 4 or 8");
            c.connectivity = static_cast<Connectivity>(v);
        } else if (key == "confidence_threshold") {
            if (!value.is_number()) throw ConfigError("confidence_threshold must be a number");
            c.confidence_threshold = value.get<double>();
        } else if (key == "search_budget") {
            c.search_budget = int_field(j, k);
        } else if (key == "passes") {
            c.passes = int_field(j, k);
        } else if (key == "samples") {
            c.samples = int_field(j, k);
        } else if (key == "backend_url") {
            if (!value.is_null()) c.backend_url = field<std::string>(j, k);
        } else if (key == "seed") {
            if (!value.is_number_integer()) throw ConfigError("seed must be an integer");
            c.seed = value.get<std::int64_t>();
        } else if (key == "transcript_path") {
            if (!value.is_null()) c.transcript_path = field<std::string>(j, k);
        } else if (key == "jobs") {
            c.jobs = int_field(j, k);
        } else if (key == "timeout_ms") {
            c.timeout_ms = int_field(j, k);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return config_from_json(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

PipelineOptions pipeline_options(const Config& c) {
    return {c.connectivity, c.confidence_threshold, c.search_budget, c.passes, c.samples};
}

}  // namespace arcsolve
