#pragma once

// Circuit IR for the CNQ gate family and its `.cnq` text format.
//
// Every gate is a controlled power of a k-th root of NOT: Q_k^p with Q_k^k = NOT
// and k a power of two. NOT/CNOT/Toffoli are simply k = 1, p = 1; V = (2, 1),
// V* = (2, 3), W = (4, 1), W* = (4, 7). Powers are stored as the canonical
// residue in [1, 2k).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnq/error.hpp"
#include "cnq/expr.hpp"

namespace cnq {

enum class Role { Control, Target };

struct Line {
    Var id;
    Role role = Role::Control;

    friend bool operator==(const Line&, const Line&) = default;
};

struct Gate {
    std::int64_t k = 1;
    std::int64_t p = 1;
    std::vector<Var> controls;
    Var target;

    /// Q^p with p == k (mod 2k), i.e. the gate acts as a (multi-)controlled NOT.
    bool is_not_family() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

bool is_power_of_two(std::int64_t k);

/// Reduces `p` into [0, 2k).
std::int64_t canonical_power(std::int64_t k, std::int64_t p);

/// Builds a canonicalised gate. Throws Error{BadK} / Error{ZeroPower}.
Gate make_gate(std::int64_t k, std::int64_t p, std::vector<Var> controls, Var target);

struct Spec {
    Var line;
    Anf expected;

    friend bool operator==(const Spec&, const Spec&) = default;
};

struct Circuit {
    std::vector<Line> lines;
    std::vector<Gate> gates;
    std::vector<Spec> specs;

    const Line* find_line(Var id) const;
    std::vector<Var> line_ids() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Parses `.cnq` text. Throws Error with the 1-based line/column of the offending token.
Circuit parse_circuit(std::string_view text);

/// Canonical `.cnq` text; parse_circuit(render_circuit(c)) == c.
std::string render_circuit(const Circuit& c);
std::string render_gate(const Gate& g);

struct Diagnostic {
    ErrorCode code;
    std::optional<std::size_t> gate_index;
    std::string message;
};

/// Structural checks; empty iff every gate and circuit invariant holds.
std::vector<Diagnostic> validate(const Circuit& c);

struct GateCounts {
    /// "NOT", "CNOT", "MCNOT" (two or more controls), "CV", "CV*", "CW", "CW*", or "CQ(k=8,p=5)".
    /// Uncontrolled Q gates drop the "C": "V", "W*", "Q(k=8,p=5)".
    std::map<std::string, int> categories;
    /// Elementary controlled gates: every gate with at least one control.
    int total_controlled = 0;
    /// Controlled gates whose target is a target-role line.
    int on_target = 0;
    /// Controlled gates acting on control-role lines (e.g. CNOTs forming a^b).
    int on_control_lines = 0;
    int uncontrolled = 0;

    friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

GateCounts gate_count(const Circuit& c);

}  // namespace cnq
