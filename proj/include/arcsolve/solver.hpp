#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcsolve/induction.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve {

enum class CandidateSource : std::uint8_t { rule_exec, remote_sample, fallback };

std::string_view to_string(CandidateSource s) noexcept;

struct Candidate {
    Grid grid;
    CandidateSource source = CandidateSource::rule_exec;
    double weight = 1.0;                // > 0
    std::optional<UnitPattern> pattern;  // set for rule_exec
};

struct RuleApplication {
    std::vector<Candidate> candidates;
    std::vector<std::string> notes;  // one per pattern that failed to apply
};

// Applies surviving patterns to the test input in RuleSet order, one
// candidate per successful application with weight = confidence. When the
// set holds any exact pattern, partial-only patterns are not executed.
RuleApplication apply_ruleset(const RuleSet& rs, const Grid& test_input, Connectivity conn = Connectivity::four);

struct VoteOutcome {
    Grid grid;
    int tied_cells = 0;        // cells where more than one color shared the top weight
    int excluded = 0;          // candidates dropped by the dimension pre-vote
    bool dimension_tie = false;
};

// Weighted per-pixel majority. Mixed dimensions are settled first by a
// weighted dimension vote; ties (relative tolerance 1e-9) go to the earliest
// candidate holding a tied value. Throws ContractError when cands is empty
// or a weight is not positive.
VoteOutcome vote_pixels_detailed(std::span<const Candidate> cands);
Grid vote_pixels(std::span<const Candidate> cands);

inline constexpr double kVoteTieTolerance = 1e-9;

// Remote sampling backend. Implementations throw
// BackendError on transport failure.
struct SampleRequest {
    std::span<const TrainPair> train;
    const Grid* test_input = nullptr;
    std::vector<std::string> hints;
    int samples = 5;
};

struct SampleResponse {
    std::vector<Grid> grids;
    std::vector<std::string> warnings;  // e.g. undecodable grids that were dropped
};

class SampleBackend {
public:
    virtual ~SampleBackend() = default;
    virtual SampleResponse sample(const SampleRequest& request) = 0;
};

struct SolveOptions {
    int passes = 2;   // 1 or 2
    int samples = 5;  // remote samples per request
    Connectivity connectivity = Connectivity::four;
};

struct Trace {
    int ruleset_size = 0;
    int rule_candidates = 0;
    int remote_candidates = 0;
    int tied_cells = 0;
    bool identity_fallback = false;
    std::string second_attempt_source;  // "", "top_pattern" or "backend"
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
};

struct Prediction {
    std::vector<Grid> attempts;  // 1 or 2, pairwise distinct
    Trace trace;
    std::vector<Candidate> rule_candidates;
};

// One Prediction per test input. Backend failures degrade to the no-backend
// path with a trace warning; this never throws for backend problems.
std::vector<Prediction> solve_task(const Task& task, const RuleSet& rs, SampleBackend* backend,
                                   const SolveOptions& opts = {});

// ---- evaluation ---------------------------------------------------------------

struct PipelineOptions {
    Connectivity connectivity = Connectivity::four;
    double threshold = 1.0;
    int budget = 2000;
    int passes = 2;
    int samples = 5;
};

struct PipelineResult {
    Induction induction;
    std::vector<Prediction> predictions;
};

// Induce then solve.
PipelineResult run_pipeline(const Task& task, const PipelineOptions& opts, Proposer& proposer,
                            SampleBackend* backend);

struct NamedTask {
    std::string id;
    Task task;
};

struct EvalItem {
    std::string task_id;
    int test_index = 0;
    bool skipped = false;   // no expected output
    bool correct = false;
    int matched_attempt = 0;  // 1-based; 0 when no attempt matched
    int attempts = 0;
    int candidates = 0;
    std::vector<std::string> kinds_fired;  // kinds whose own candidate matched
};

struct EvalReport {
    std::vector<EvalItem> items;  // ordered by task id, then test index
    int tasks = 0;
    int scored = 0;
    int correct = 0;
    int skipped = 0;
    int unreadable = 0;
    int tasks_fully_correct = 0;
    long total_candidates = 0;
    std::map<std::string, int> kind_hits;

    double accuracy() const noexcept { return scored ? static_cast<double>(correct) / scored : 0.0; }
};

// A test item counts only when some attempt equals the expected grid exactly.
// Runs up to `jobs` tasks concurrently; the report order does not depend on it.
EvalReport evaluate(std::span<const NamedTask> dataset, const PipelineOptions& opts, Proposer& proposer,
                    SampleBackend* backend, int jobs = 1);

}  // namespace arcsolve
