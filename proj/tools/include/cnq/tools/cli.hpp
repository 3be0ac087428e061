#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnq/expr.hpp"
#include "cnq/oracle.hpp"

namespace cnq::tools {

enum class Command { Eval, Verify, Simulate, Check, Optimize, Equiv, Fuzz };
enum class Format { Text, Structured };

enum ExitCode : int {
    kExitOk = 0,
    kExitFail = 1,
    kExitUsage = 2,
    kExitTargetInteraction = 3,
    kExitGuard = 4,
};

struct RunConfig {
    Command command = Command::Eval;
    std::vector<std::string> inputs;
    Format format = Format::Text;
    unsigned enum_guard = kDefaultEnumGuard;
    unsigned sim_guard = kDefaultSimGuard;
    std::optional<std::string> input_bits;  // simulate: one basis input, first line first
    std::uint64_t seed = 1;
    int iterations = 200;  // fuzz
};

/// Lines at or below this count make `simulate` enumerate every basis input.
inline constexpr std::size_t kSimulateAllInputsLimit = 8;

/// Executes one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches to run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The parts of a structured report that carry verdicts.
struct StructuredSummary {
    std::string command;
    std::string verdict;
    std::map<std::string, std::string> line_status;
    std::vector<std::string> diagnostic_codes;

    friend bool operator==(const StructuredSummary&, const StructuredSummary&) = default;
};

/// Reads back a document produced with `--format structured`.
StructuredSummary read_structured(const std::string& document);

}  // namespace cnq::tools
