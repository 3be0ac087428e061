#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cnq/circuit.hpp"

namespace cnq::tools {

struct RandomCircuitOptions {
    int max_lines = 5;
    int max_gates = 20;
    std::vector<std::int64_t> root_orders{1, 2, 4, 8};
    int max_controls = 3;
    /// Chance that a Q gate is immediately followed by a partner that completes
    /// its power to K, so that collapses (and target feedback) actually occur.
    double complement_probability = 0.3;
};

/// Random CNQ circuit. Non-NOT Q gates only target target-role lines; NOT-family
/// gates may hit any line. The result is valid but may still contain a target
/// interaction.
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts = {});

/// Redraws until the circuit evaluates without a target interaction.
Circuit random_evaluable_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts = {});

}  // namespace cnq::tools
