#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcsolve/pattern.hpp"
#include "arcsolve/search.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve {

// ---- change tagging --------------------------------------------------------

enum class ChangeKind : std::uint8_t { added, removed, retained };

enum class MatchTier : std::uint8_t { identical, translated, recolored, none };

struct ChangeTag {
    ChangeKind tag = ChangeKind::retained;
    std::optional<int> input_id;   // absent for added
    std::optional<int> output_id;  // absent for removed
    MatchTier tier = MatchTier::none;
};

// Greedy matching in priority order: identical mask and color, same shape and
// color up to translation, same shape with a different color. Each object is
// matched at most once; leftovers become removed (input) / added (output).
// Tags are listed retained-first in input id order, then removed, then added.
std::vector<ChangeTag> match_objects(const Perception& in, const Perception& out);

std::string_view to_string(ChangeKind k) noexcept;

// ---- proposers -------------------------------------------------------------

struct Proposal {
    std::vector<UnitPattern> patterns;
    std::vector<std::string> warnings;
};

// Source of candidate unit patterns for one train pair.
class Proposer {
public:
    virtual ~Proposer() = default;
    virtual Proposal propose(const TrainPair& pair, int budget) = 0;
};

// Default backend: exhaustive bounded search over the taxonomy.
class SearchProposer final : public Proposer {
public:
    explicit SearchProposer(SearchOptions opts = {}) : opts_(opts) {}
    Proposal propose(const TrainPair& pair, int budget) override;

private:
    SearchOptions opts_;
};

// Parses pattern lines, dropping malformed ones with a warning each. Blank
// and comment-only lines are ignored.
Proposal proposal_from_lines(std::span<const std::string> lines);

// ---- detection, intersection, hints ------------------------------------------

struct ScoredPattern {
    UnitPattern pattern;
    int support = 1;
    double confidence = 1.0;
    bool exact = false;
};

struct RuleSet {
    std::vector<ScoredPattern> patterns;  // (confidence desc, exact first, canonical order)
    std::vector<std::string> hints;       // index-aligned with patterns
    int pair_count = 0;
};

struct PairPatterns {
    std::vector<ScoredPattern> patterns;  // support = 1, canonical order, no duplicates
    std::vector<std::string> warnings;
};

// Runs the proposer and keeps only candidates that are consistent with the
// pair when re-applied here, regardless of what the proposer claims.
PairPatterns detect_unit_patterns(const TrainPair& pair, Proposer& proposer, int budget,
                                  Connectivity conn = Connectivity::four);

struct IntersectOptions {
    double threshold = 1.0;  // minimum support / pair count
    Connectivity connectivity = Connectivity::four;
};

// Aggregates per-pair pattern lists into a ranked RuleSet. Support counts the
// pairs whose list holds the pattern; confidence = support / pairs. Drops:
// patterns below the threshold; patterns flagged exact on a pair where
// re-application does not reproduce that pair's output; and exact-flagged
// patterns that, re-applied to every train pair, produce a wrong grid on at
// least as many pairs as they reproduce exactly.
// Throws ContractError on empty input or a train/list count mismatch.
RuleSet intersect_patterns(std::span<const std::vector<ScoredPattern>> per_pair, std::span<const TrainPair> train,
                           const IntersectOptions& opts = {});

// One template sentence per pattern, e.g. "rotate the grid 90 degrees clockwise".
std::vector<std::string> synthesize_hints(const RuleSet& rs);
std::string hint_for(const UnitPattern& p);

struct InductionOptions {
    int budget = 2000;
    double threshold = 1.0;
    Connectivity connectivity = Connectivity::four;
};

struct Induction {
    RuleSet rules;
    std::vector<std::vector<ScoredPattern>> per_pair;
    std::vector<std::string> warnings;
};

// Per-pair detection then intersection over a task's train pairs.
Induction induce(const Task& task, Proposer& proposer, const InductionOptions& opts = {});

}  // namespace arcsolve
