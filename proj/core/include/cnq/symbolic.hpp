#pragma once

// Exponent calculus for CNQ circuits.
//
// A controlled Q^p gate with resolved control signal c contributes p·c to the
// exponent of its target (t' = Q^(p·c)·t), and consecutive contributions add
// up. A target line therefore carries (base, K, E) meaning t' = Q_K^E(x)·base(x),
// with E a multilinear integer polynomial reduced mod 2K. When every
// coefficient of E is 0 or K the line is a plain Boolean update t' = base ^ f.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnq/circuit.hpp"
#include "cnq/expr.hpp"

namespace cnq {

struct TargetState {
    Anf base;
    std::int64_t K = 1;
    MlPoly E;  // canonical mod 2K

    /// Same state expressed with root order `K2` (a multiple of K): E scales by K2/K.
    TargetState rebased(std::int64_t K2) const;

    /// The exponent F with Q_K^F(x)|0> equal to this state, i.e. (E + K·base) mod 2K.
    /// Two states are equal on every input iff their F agree coefficientwise at a common K.
    MlPoly exponent_from_zero() const;

    friend bool operator==(const TargetState&, const TargetState&) = default;
};

/// The Boolean update f with E == K·f (mod 2K), or nullopt when some coefficient of
/// E lies outside {0, K}.
std::optional<Anf> collapse(const TargetState& ts);

enum class OutcomeStatus {
    Pure,       ///< never acted on by a non-NOT Q gate
    Collapsed,  ///< was carried as an exponent and reduced to a Boolean value
    Residual,   ///< genuine root-of-NOT state; only `exponent` is meaningful
};

struct LineOutcome {
    Var line;
    Role role;
    OutcomeStatus status;
    Anf value;                           ///< final Boolean value unless Residual
    std::optional<TargetState> exponent; ///< last exponent carried by the line (Collapsed/Residual)

    /// Exponent F (mod 2K) with the final single-line state equal to Q_K^F|0>.
    MlPoly exponent_from_zero(std::int64_t K) const;
    std::int64_t root_order() const { return exponent ? exponent->K : 1; }
};

/// A target line used as a control before the end of the circuit.
struct FeedbackCollapse {
    std::size_t gate_index;
    Var line;
    TargetState state;
    Anf update;
};

struct EvalReport {
    std::vector<LineOutcome> lines;
    std::vector<FeedbackCollapse> feedback;
    std::vector<Diagnostic> warnings;

    const LineOutcome& line(Var id) const;
};

/// Per-gate record of what the evaluator saw, used by the optimizer.
struct GateTrace {
    Anf control;           ///< product of the resolved control values
    bool absorbed = false; ///< contributed to a target exponent (not a plain XOR)
    int epoch = 0;         ///< taint epoch of the target line (bumped by every collapse)
};

struct EvalTrace {
    std::vector<GateTrace> gates;
    /// Root order reached by each (line, epoch) exponent at the moment it ended.
    std::map<std::pair<Var, int>, std::int64_t> epoch_root;
};

/// Runs the calculus over the gate list. Throws Error{TargetInteraction} when a
/// line carrying a non-Boolean exponent is used as a control, and rethrows the
/// first validate() diagnostic for malformed circuits.
EvalReport evaluate(const Circuit& c, EvalTrace* trace = nullptr);

enum class SpecStatus { Pass, Fail, NoCollapse };

struct SpecVerdict {
    Var line;
    Anf expected;
    SpecStatus status;
    std::optional<Anf> actual;            ///< when the line collapses
    std::optional<TargetState> residual;  ///< when it does not
    std::optional<Assignment> witness;    ///< first input where expected and actual differ
};

/// Compares each `spec` line against the evaluated outcome by canonical ANF equality.
std::vector<SpecVerdict> check_spec(const Circuit& c, unsigned enum_guard = kDefaultEnumGuard);

struct LineDifference {
    Var line;
    std::string detail;
    std::optional<Assignment> witness;
};

struct EquivVerdict {
    bool equivalent = true;
    std::vector<LineDifference> differences;
};

/// Line-by-line comparison of two circuits over the same lines. Throws
/// Error{LineMismatch} when the line names or roles differ.
EquivVerdict equivalent(const Circuit& a, const Circuit& b, unsigned enum_guard = kDefaultEnumGuard);

/// Human-readable rendering of a report, one line per circuit line.
std::string format_report(const EvalReport& report);
std::string format_outcome(const LineOutcome& o);

}  // namespace cnq
