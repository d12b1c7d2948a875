#include "arcsolve/remote.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include <httplib.h>

#include "arcsolve/error.hpp"

namespace arcsolve {

std::optional<std::string> token_from_env() {
    const char* v = std::getenv("ARCSOLVE_BACKEND_TOKEN");
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

HttpTransport::HttpTransport(HttpOptions opts) : opts_(std::move(opts)) {
    constexpr std::string_view scheme = "http://";
    std::string_view rest = opts_.url;
    if (rest.substr(0, scheme.size()) != scheme) {
        throw ConfigError("backend url must start with http:// (got '" + opts_.url + "')");
    }
    rest.remove_prefix(scheme.size());
    const auto slash = rest.find('/');
    std::string_view authority = rest.substr(0, slash);
    path_ = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
        try {
            port_ = std::stoi(std::string(authority.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("bad port in backend url '" + opts_.url + "'");
        }
        authority = authority.substr(0, colon);
    }
    host_ = std::string(authority);
    if (host_.empty()) throw ConfigError("backend url has no host: '" + opts_.url + "'");
}

Json HttpTransport::post(const Json& request) {
    httplib::Client client(host_, port_);
    const auto timeout = std::chrono::milliseconds(opts_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    if (opts_.token) client.set_bearer_token_auth(*opts_.token);

    auto res = client.Post(path_, request.dump(), "application/json");
    if (!res) throw BackendError("POST " + opts_.url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) {
        throw BackendError("POST " + opts_.url + " returned HTTP " + std::to_string(res->status));
    }
    try {
        return Json::parse(res->body);
    } catch (const Json::parse_error& e) {
        throw BackendError("backend response is not JSON: " + std::string(e.what()));
    }
}

TranscriptRecorder::TranscriptRecorder(Transport& inner, std::string path) : inner_(inner), path_(std::move(path)) {}

Json TranscriptRecorder::post(const Json& request) {
    Json response = inner_.post(request);
    std::lock_guard lock(mu_);
    exchanges_.push_back({{"request", request}, {"response", response}});
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw BackendError("cannot write transcript " + path_);
    out << Json{{"version", 1}, {"exchanges", exchanges_}}.dump(2) << '\n';
    return response;
}

TranscriptReplayer::TranscriptReplayer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read transcript " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("transcript " + path + " is not JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("version", 0) != 1 || !doc.contains("exchanges") || !doc["exchanges"].is_array()) {
        throw ConfigError("transcript " + path + " is not a version 1 transcript");
    }
    for (const Json& ex : doc["exchanges"]) {
        if (!ex.contains("request") || !ex.contains("response")) {
            throw ConfigError("transcript " + path + " has an exchange without request/response");
        }
        responses_[ex["request"].dump()].push_back(ex["response"]);
    }
}

Json TranscriptReplayer::post(const Json& request) {
    std::lock_guard lock(mu_);
    auto it = responses_.find(request.dump());
    if (it == responses_.end() || it->second.empty()) throw BackendError("no recorded response for this request");
    Json response = std::move(it->second.front());
    it->second.pop_front();
    return response;
}

Json sample_request(const SampleRequest& request) {
    Json train = Json::array();
    for (const TrainPair& p : request.train) {
        train.push_back({{"input", encode_markdown(p.input)}, {"output", encode_markdown(p.output)}});
    }
    return Json{{"mode", "solve"},
                {"train", std::move(train)},
                {"test_input", encode_markdown(*request.test_input)},
                {"hints", request.hints},
                {"samples", request.samples}};
}

Json propose_request(const TrainPair& pair, int budget) {
    return Json{{"mode", "propose"},
                {"input", encode_markdown(pair.input)},
                {"output", encode_markdown(pair.output)},
                {"budget", budget}};
}

SampleResponse RemoteSampleBackend::sample(const SampleRequest& request) {
    if (!request.test_input) throw ContractError("sample request without a test input");
    const Json response = transport_.post(sample_request(request));
    if (!response.is_object() || !response.contains("grids") || !response["grids"].is_array()) {
        throw BackendError("backend response has no grids array");
    }
    SampleResponse out;
    int index = 0;
    for (const Json& g : response["grids"]) {
        try {
            if (!g.is_string()) throw ShapeError("not a string");
            out.grids.push_back(decode_markdown(g.get<std::string>()));
        } catch (const Error& e) {
            out.warnings.push_back("dropped backend grid " + std::to_string(index) + ": " + e.what());
        }
        ++index;
    }
    return out;
}

Proposal RemoteProposer::propose(const TrainPair& pair, int budget) {
    const Json response = transport_.post(propose_request(pair, budget));
    if (!response.is_object() || !response.contains("patterns") || !response["patterns"].is_array()) {
        throw BackendError("backend response has no patterns array");
    }
    std::vector<std::string> lines;
    for (const Json& line : response["patterns"]) {
        lines.push_back(line.is_string() ? line.get<std::string>() : line.dump());
    }
    return proposal_from_lines(lines);
}

}  // namespace arcsolve
