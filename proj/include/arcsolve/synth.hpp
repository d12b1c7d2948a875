#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arcsolve/pattern.hpp"
#include "arcsolve/solver.hpp"
#include "arcsolve/task.hpp"

namespace arcsolve::synth {

// Generated task with one planted unit pattern: every train output and the
// test expectation are apply_pattern(pattern, input).
struct PlantedTask {
    Task task;
    UnitPattern pattern;
};

// Scenes are built so the planted pattern is the simplest explanation: the
// selector is exercised (distractors it must leave alone), objects never touch
// so 4- and 8-connectivity agree, moves never clip, sizes are unique where a
// rank or size choice depends on them.
PlantedTask plant_task(std::mt19937_64& rng, PatternKind kind, int train_pairs = 3);
PlantedTask plant_random_task(std::mt19937_64& rng, int train_pairs = 3);

// Train outputs and the test expectation are random grids unrelated to the
// inputs, so no single pattern explains them.
Task noise_task(std::mt19937_64& rng, int train_pairs = 3);

struct SuiteOptions {
    int planted = 100;
    int noise = 0;
    std::uint64_t seed = 0;
};

// Planted tasks cycle through all 23 kinds; ids sort planted before noise.
std::vector<NamedTask> generate_suite(const SuiteOptions& opts);

}  // namespace arcsolve::synth
