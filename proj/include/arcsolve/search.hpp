#pragma once

#include <optional>
#include <vector>

#include "arcsolve/pattern.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve {

enum class Fit : std::uint8_t { exact, partial };

struct PatternCandidate {
    UnitPattern pattern;
    Fit fit = Fit::exact;
    std::size_t distance = 0;  // pixel distance of the result to the target output
};

struct SearchOptions {
    int budget = 2000;  // maximum number of pattern applications
    Connectivity connectivity = Connectivity::four;
    int max_rank = 4;     // size-rank selectors enumerated: rank=0..max_rank-1
    int max_offsets = 8;  // translate/duplicate offsets kept, by vote count
};

// How a pattern's result relates to a pair: exact, partial (same dims as the
// output, strictly closer to it than the input is, and not a no-op), or
// inconsistent (nullopt). Application errors count as inconsistent.
std::optional<PatternCandidate> classify(const UnitPattern& p, const TrainPair& pair, const Perception& input_scene);

// Bounded enumeration over the taxonomy, cheapest kinds first. Whole-grid
// kinds come first; object kinds follow with selectors taken from the input
// scene and parameters read off the scene diff (output colors, offsets
// between same-shaped objects). Candidates whose output dimensions are known
// to differ from the target are skipped without spending budget.
std::vector<PatternCandidate> enumerate_candidates(const TrainPair& pair, const SearchOptions& opts = {});

}  // namespace arcsolve
