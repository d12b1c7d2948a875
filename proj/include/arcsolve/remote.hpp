#pragma once

// Client side of the remote proposer / sampling protocol. One HTTP endpoint
// takes a JSON body and answers with JSON:
//   {"mode":"solve","train":[{"input":md,"output":md}],"test_input":md,
//    "hints":[...],"samples":n}                      -> {"grids":[md,...]}
//   {"mode":"propose","input":md,"output":md,"budget":n} -> {"patterns":[line,...]}
// where md is a grid in the pipe-table markdown encoding.

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "arcsolve/induction.hpp"
#include "arcsolve/solver.hpp"

namespace arcsolve {

using Json = nlohmann::ordered_json;

// Request/response exchange. Implementations throw BackendError and must be
// safe to call from several threads.
class Transport {
public:
    virtual ~Transport() = default;
    virtual Json post(const Json& request) = 0;
};

struct HttpOptions {
    std::string url;          // http://host[:port]/path
    int timeout_ms = 30000;
    std::optional<std::string> token;  // sent as a bearer token, never logged
};

// Reads the bearer token from ARCSOLVE_BACKEND_TOKEN when set.
std::optional<std::string> token_from_env();

class HttpTransport final : public Transport {
public:
    explicit HttpTransport(HttpOptions opts);
    Json post(const Json& request) override;

private:
    HttpOptions opts_;
    std::string host_;
    int port_ = 80;
    std::string path_;
};

// Forwards to another transport and appends every completed exchange to a
// transcript file, rewritten after each exchange.
class TranscriptRecorder final : public Transport {
public:
    TranscriptRecorder(Transport& inner, std::string path);
    Json post(const Json& request) override;

private:
    Transport& inner_;
    std::string path_;
    std::mutex mu_;
    Json exchanges_ = Json::array();
};

// Answers from a recorded transcript. Identical requests are answered in
// recording order; an unknown request is a BackendError.
class TranscriptReplayer final : public Transport {
public:
    explicit TranscriptReplayer(const std::string& path);
    Json post(const Json& request) override;

private:
    std::mutex mu_;
    std::map<std::string, std::deque<Json>> responses_;
};

Json sample_request(const SampleRequest& request);
Json propose_request(const TrainPair& pair, int budget);

class RemoteSampleBackend final : public SampleBackend {
public:
    explicit RemoteSampleBackend(Transport& transport) : transport_(transport) {}
    // Undecodable grids are dropped with a warning; a response without a
    // "grids" array is a BackendError.
    SampleResponse sample(const SampleRequest& request) override;

private:
    Transport& transport_;
};

class RemoteProposer final : public Proposer {
public:
    explicit RemoteProposer(Transport& transport) : transport_(transport) {}
    Proposal propose(const TrainPair& pair, int budget) override;

private:
    Transport& transport_;
};

}  // namespace arcsolve
