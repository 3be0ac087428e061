#pragma once

// Exponent-level peephole optimisation.
//
// Contributions to the same target exponent add (Q^a·Q^b = Q^(a+b)), so any two
// gates feeding the same exponent with the same resolved control signal can be
// fused, wherever they sit in the gate list. The fused power either vanishes
// (cancellation), equals K (a plain controlled NOT), or stays a single CQ gate.

#include <optional>
#include <string>
#include <vector>

#include "cnq/circuit.hpp"
#include "cnq/symbolic.hpp"

namespace cnq {

struct Contribution {
    std::size_t gate_index;
    Var target;
    std::int64_t k;
    std::int64_t p;
    Anf resolved_control;
};

enum class ChangeKind { Merged, Cancelled, Promoted };

struct Change {
    ChangeKind kind;
    Var target;
    Anf resolved_control;
    std::vector<std::size_t> gate_indices;  ///< positions in the input circuit
    std::optional<Gate> emitted;            ///< replaces the last member; none for a cancellation
};

struct MergeResult {
    Circuit circuit;
    std::vector<Change> changes;
};

/// Contributions absorbed into target exponents, in gate order.
std::vector<Contribution> contributions(const Circuit& c);

/// Fuses same-control contributions per target exponent. The output is always
/// equivalent to the input and never has more gates. Throws Error{TargetInteraction}.
MergeResult merge_pass(const Circuit& c);

struct OptimizeSummary {
    GateCounts before;
    GateCounts after;
    std::vector<Change> changes;
};

OptimizeSummary summarize(const Circuit& before, const MergeResult& result);

std::string_view change_kind_name(ChangeKind kind);
std::string format_summary(const OptimizeSummary& s);

}  // namespace cnq
