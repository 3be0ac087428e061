#include "cnq/tools/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnq/circuit.hpp"
#include "cnq/optimize.hpp"
#include "cnq/symbolic.hpp"
#include "cnq/tools/random_circuit.hpp"

namespace cnq::tools {

namespace {

using json = nlohmann::ordered_json;

/// An error already tied to a file name (parse errors, unreadable files).
struct InputError {
    std::string path;
    ErrorCode code;
    std::string message;
    SourceLoc loc;
};

struct UsageError {
    std::string message;
};

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Eval: return "eval";
        case Command::Verify: return "verify";
        case Command::Simulate: return "simulate";
        case Command::Check: return "check";
        case Command::Optimize: return "optimize";
        case Command::Equiv: return "equiv";
        case Command::Fuzz: return "fuzz";
    }
    return "unknown";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::TargetInteraction: return kExitTargetInteraction;
        case ErrorCode::TooManyLines:
        case ErrorCode::TooManyVars: return kExitGuard;
        case ErrorCode::NoCollapse: return kExitFail;
        default: return kExitUsage;
    }
}

Circuit load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{path, ErrorCode::Syntax, "cannot open file", {}};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_circuit(buf.str());
    } catch (const Error& e) {
        throw InputError{path, e.code(), e.what(), e.where()};
    }
}

std::string_view status_name(OutcomeStatus s) {
    switch (s) {
        case OutcomeStatus::Pure: return "pure";
        case OutcomeStatus::Collapsed: return "collapsed";
        case OutcomeStatus::Residual: return "residual";
    }
    return "unknown";
}

std::string_view spec_status_name(SpecStatus s) {
    switch (s) {
        case SpecStatus::Pass: return "PASS";
        case SpecStatus::Fail: return "FAIL";
        case SpecStatus::NoCollapse: return "E_NO_COLLAPSE";
    }
    return "unknown";
}

json exponent_json(const TargetState& ts) {
    return {{"K", ts.K}, {"E", ts.E.to_string()}, {"base", ts.base.to_string()}};
}

json outcome_json(const LineOutcome& o) {
    json j{{"line", o.line.name()},
           {"role", o.role == Role::Target ? "target" : "control"},
           {"status", status_name(o.status)}};
    if (o.status != OutcomeStatus::Residual) j["anf"] = o.value.to_string();
    if (o.exponent) j["exponent"] = exponent_json(*o.exponent);
    return j;
}

json lines_json(const EvalReport& r) {
    json arr = json::array();
    for (const auto& o : r.lines) arr.push_back(outcome_json(o));
    return arr;
}

json counts_json(const GateCounts& g) {
    return {{"total_controlled", g.total_controlled},
            {"on_target", g.on_target},
            {"on_control_lines", g.on_control_lines},
            {"uncontrolled", g.uncontrolled},
            {"categories", g.categories}};
}

json diag_json(const Diagnostic& d) {
    json j{{"code", code_name(d.code)}, {"message", d.message}};
    if (d.gate_index) j["gate_index"] = *d.gate_index;
    return j;
}

std::string bits_of(const Assignment& a, const std::vector<Var>& order) {
    std::string out;
    for (Var v : order) out += a.get(v) ? '1' : '0';
    return out;
}

std::string format_counts(const GateCounts& g) {
    std::ostringstream out;
    out << "gates: " << g.total_controlled << " elementary controlled (" << g.on_target << " on target lines, "
        << g.on_control_lines << " on control lines), " << g.uncontrolled << " uncontrolled";
    return out.str();
}

struct Outcome {
    int exit_code = kExitOk;
    json doc;
    std::string text;
};

Outcome do_eval(const RunConfig& cfg) {
    const Circuit c = load(cfg.inputs.at(0));
    const EvalReport r = evaluate(c);
    json diags = json::array();
    for (const auto& w : r.warnings) diags.push_back(diag_json(w));
    json feedback = json::array();
    for (const auto& f : r.feedback) {
        feedback.push_back({{"gate_index", f.gate_index}, {"line", f.line.name()},
                            {"exponent", exponent_json(f.state)}, {"update", f.update.to_string()}});
    }
    Outcome o;
    o.doc = {{"lines", lines_json(r)}, {"feedback", feedback}, {"diagnostics", diags},
             {"gate_counts", counts_json(gate_count(c))}, {"verdict", "OK"}};
    o.text = format_report(r) + format_counts(gate_count(c)) + "\n";
    return o;
}

Outcome do_verify(const RunConfig& cfg) {
    const Circuit c = load(cfg.inputs.at(0));
    if (c.specs.empty()) throw UsageError{cfg.inputs[0] + ": verify needs at least one 'spec' statement"};
    const EvalReport r = evaluate(c);
    const auto verdicts = check_spec(c, cfg.enum_guard);

    Outcome o;
    bool all_pass = true;
    json specs = json::array();
    json diags = json::array();
    std::ostringstream text;
    for (const auto& v : verdicts) {
        all_pass = all_pass && v.status == SpecStatus::Pass;
        json j{{"line", v.line.name()}, {"expected", v.expected.to_string()}, {"status", spec_status_name(v.status)}};
        text << "spec " << v.line.name() << " = " << v.expected.to_string() << ": " << spec_status_name(v.status);
        if (v.actual) j["actual"] = v.actual->to_string();
        if (v.residual) j["residual"] = exponent_json(*v.residual);
        if (v.witness) j["witness"] = v.witness->to_string();
        if (v.status == SpecStatus::Fail) {
            text << " (got " << v.actual->to_string();
            if (v.witness) text << "; differs at " << v.witness->to_string();
            text << ")";
        } else if (v.status == SpecStatus::NoCollapse) {
            text << " (residual K=" << v.residual->K << ", E=" << v.residual->E.to_string();
            if (v.witness) text << "; non-Boolean at " << v.witness->to_string();
            text << ")";
            diags.push_back({{"code", "E_NO_COLLAPSE"},
                             {"message", "line '" + v.line.name() + "' does not collapse"}});
        }
        text << '\n';
        specs.push_back(std::move(j));
    }
    o.exit_code = all_pass ? kExitOk : kExitFail;
    o.doc = {{"verdict", all_pass ? "PASS" : "FAIL"}, {"lines", lines_json(r)}, {"specs", specs},
             {"diagnostics", diags}, {"gate_counts", counts_json(gate_count(c))}};
    o.text = text.str() + (all_pass ? "PASS\n" : "FAIL\n");
    return o;
}

Outcome do_simulate(const RunConfig& cfg) {
    const Circuit c = load(cfg.inputs.at(0));
    const auto ids = c.line_ids();
    if (ids.size() > cfg.sim_guard) {
        throw Error(ErrorCode::TooManyLines, "circuit has " + std::to_string(ids.size()) +
                                                 " lines; simulation guard is " + std::to_string(cfg.sim_guard));
    }
    std::vector<Assignment> inputs;
    if (cfg.input_bits) {
        const auto& bits = *cfg.input_bits;
        if (bits.size() != ids.size() || bits.find_first_not_of("01") != std::string::npos) {
            throw UsageError{"--input needs " + std::to_string(ids.size()) + " bits (one per line, in declaration order)"};
        }
        Assignment a;
        for (std::size_t i = 0; i < ids.size(); ++i) a.set(ids[i], bits[i] == '1');
        inputs.push_back(a);
    } else if (ids.size() <= kSimulateAllInputsLimit) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << ids.size()); ++i) inputs.push_back(Assignment::from_index(ids, i));
    } else {
        throw UsageError{"circuit has more than " + std::to_string(kSimulateAllInputsLimit) +
                         " lines; pick one basis state with --input"};
    }

    Outcome o;
    json states = json::array();
    std::ostringstream text;
    for (const auto& in : inputs) {
        const StateVector s = simulate(c, in, cfg.sim_guard);
        const auto bits = bits_of(in, ids);
        text << "input |" << bits << "⟩\n";
        std::ostringstream dump;
        s.dump(dump);
        std::istringstream lines(dump.str());
        json amps = json::array();
        for (std::string line; std::getline(lines, line);) text << "  " << line << '\n';
        const auto a = s.amplitudes();
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (std::abs(a[j]) < 1e-12) continue;
            std::string basis(ids.size(), '0');
            for (std::size_t b = 0; b < ids.size(); ++b) {
                if ((j >> (ids.size() - 1 - b)) & 1U) basis[b] = '1';
            }
            amps.push_back({{"basis", basis}, {"re", a[j].real()}, {"im", a[j].imag()}});
        }
        states.push_back({{"input", bits}, {"amplitudes", amps}});
    }
    json order = json::array();
    for (Var v : ids) order.push_back(v.name());
    o.doc = {{"verdict", "OK"}, {"line_order", order}, {"states", states}, {"lines", json::array()},
             {"diagnostics", json::array()}, {"gate_counts", counts_json(gate_count(c))}};
    o.text = text.str();
    return o;
}

Outcome do_check(const RunConfig& cfg) {
    const Circuit c = load(cfg.inputs.at(0));
    const EvalReport r = evaluate(c);
    const CrossCheckVerdict v = cross_check(c, r, cfg.sim_guard);
    Outcome o;
    o.exit_code = v.pass ? kExitOk : kExitFail;
    json cc{{"inputs_checked", v.inputs_checked}, {"max_error", v.max_error}};
    if (v.witness) cc["witness"] = v.witness->to_string();
    o.doc = {{"verdict", v.pass ? "PASS" : "FAIL"}, {"lines", lines_json(r)}, {"cross_check", cc},
             {"diagnostics", json::array()}, {"gate_counts", counts_json(gate_count(c))}};
    std::ostringstream text;
    text << format_report(r) << "cross-check " << (v.pass ? "PASS" : "FAIL") << " over " << v.inputs_checked
         << " basis inputs (max amplitude deviation " << std::scientific << std::setprecision(2) << v.max_error << ")\n";
    if (!v.pass) text << v.detail << '\n';
    o.text = text.str();
    return o;
}

json change_json(const Change& ch) {
    json j{{"kind", change_kind_name(ch.kind)}, {"target", ch.target.name()},
           {"resolved_control", ch.resolved_control.to_string()}, {"gate_indices", ch.gate_indices}};
    j["emitted"] = ch.emitted ? json(render_gate(*ch.emitted)) : json(nullptr);
    return j;
}

Outcome do_optimize(const RunConfig& cfg) {
    const Circuit c = load(cfg.inputs.at(0));
    const MergeResult r = merge_pass(c);
    const OptimizeSummary s = summarize(c, r);
    Outcome o;
    json changes = json::array();
    for (const auto& ch : s.changes) changes.push_back(change_json(ch));
    o.doc = {{"verdict", "OK"}, {"circuit", render_circuit(r.circuit)}, {"changes", changes},
             {"lines", lines_json(evaluate(r.circuit))}, {"diagnostics", json::array()},
             {"gate_counts", {{"before", counts_json(s.before)}, {"after", counts_json(s.after)}}}};
    std::ostringstream text;
    text << render_circuit(r.circuit);
    std::istringstream summary(format_summary(s));
    for (std::string line; std::getline(summary, line);) text << "# " << line << '\n';
    o.text = text.str();
    return o;
}

Outcome do_equiv(const RunConfig& cfg) {
    const Circuit a = load(cfg.inputs.at(0));
    const Circuit b = load(cfg.inputs.at(1));
    const EquivVerdict v = equivalent(a, b, cfg.enum_guard);
    Outcome o;
    o.exit_code = v.equivalent ? kExitOk : kExitFail;
    json lines = json::array();
    for (const auto& l : a.lines) {
        auto diff = std::find_if(v.differences.begin(), v.differences.end(),
                                 [&](const LineDifference& d) { return d.line == l.id; });
        json j{{"line", l.id.name()}, {"status", diff == v.differences.end() ? "equal" : "differs"}};
        if (diff != v.differences.end()) {
            j["detail"] = diff->detail;
            if (diff->witness) j["witness"] = diff->witness->to_string();
        }
        lines.push_back(std::move(j));
    }
    o.doc = {{"verdict", v.equivalent ? "PASS" : "FAIL"}, {"lines", lines}, {"diagnostics", json::array()},
             {"gate_counts", {{"first", counts_json(gate_count(a))}, {"second", counts_json(gate_count(b))}}}};
    std::ostringstream text;
    for (const auto& d : v.differences) {
        text << "line " << d.line.name() << " differs: " << d.detail;
        if (d.witness) text << " (at " << d.witness->to_string() << ")";
        text << '\n';
    }
    text << (v.equivalent ? "PASS" : "FAIL") << '\n';
    o.text = text.str();
    return o;
}

Outcome do_fuzz(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    json failures = json::array();
    for (int i = 0; i < cfg.iterations; ++i) {
        const Circuit c = random_evaluable_circuit(rng);
        std::string problem;
        const auto cc = cross_check(c, evaluate(c), cfg.sim_guard);
        if (!cc.pass) problem = "symbolic/oracle mismatch: " + cc.detail;
        const auto merged = merge_pass(c);
        if (problem.empty() && !equivalent(c, merged.circuit, cfg.enum_guard).equivalent) problem = "merge_pass changed behaviour";
        if (problem.empty() && gate_count(merged.circuit).total_controlled > gate_count(c).total_controlled)
            problem = "merge_pass increased the gate count";
        if (!problem.empty()) failures.push_back({{"iteration", i}, {"problem", problem}, {"circuit", render_circuit(c)}});
    }
    Outcome o;
    o.exit_code = failures.empty() ? kExitOk : kExitFail;
    o.doc = {{"verdict", failures.empty() ? "PASS" : "FAIL"}, {"seed", cfg.seed}, {"iterations", cfg.iterations},
             {"failures", failures}, {"lines", json::array()}, {"diagnostics", json::array()}, {"gate_counts", json::object()}};
    std::ostringstream text;
    for (const auto& f : failures) {
        text << "iteration " << f["iteration"].get<int>() << ": " << f["problem"].get<std::string>() << '\n'
             << f["circuit"].get<std::string>();
    }
    text << "fuzz seed=" << cfg.seed << " iterations=" << cfg.iterations << ": " << (failures.empty() ? "PASS" : "FAIL") << '\n';
    o.text = text.str();
    return o;
}

void emit(const RunConfig& cfg, json doc, const std::string& text, std::ostream& out) {
    if (cfg.format == Format::Structured) {
        json ordered{{"command", command_name(cfg.command)}, {"verdict", doc["verdict"]}};
        for (auto& [key, value] : doc.items()) {
            if (key != "verdict") ordered[key] = value;
        }
        out << ordered.dump(2) << '\n';
    } else {
        out << text;
    }
}

void emit_error(const RunConfig& cfg, const std::string& code, const std::string& message, std::ostream& out) {
    if (cfg.format != Format::Structured) return;
    json doc{{"verdict", "ERROR"}, {"lines", json::array()},
             {"diagnostics", json::array({{{"code", code}, {"message", message}}})}, {"gate_counts", json::object()}};
    emit(cfg, std::move(doc), "", out);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t wanted = cfg.command == Command::Equiv ? 2 : (cfg.command == Command::Fuzz ? 0 : 1);
    if (cfg.inputs.size() != wanted) {
        err << "error: " << command_name(cfg.command) << " expects " << wanted << " circuit file(s)\n";
        emit_error(cfg, "E_USAGE", "wrong number of circuit files", out);
        return kExitUsage;
    }
    try {
        Outcome o;
        switch (cfg.command) {
            case Command::Eval: o = do_eval(cfg); break;
            case Command::Verify: o = do_verify(cfg); break;
            case Command::Simulate: o = do_simulate(cfg); break;
            case Command::Check: o = do_check(cfg); break;
            case Command::Optimize: o = do_optimize(cfg); break;
            case Command::Equiv: o = do_equiv(cfg); break;
            case Command::Fuzz: o = do_fuzz(cfg); break;
        }
        emit(cfg, std::move(o.doc), o.text, out);
        return o.exit_code;
    } catch (const InputError& e) {
        err << e.path;
        if (e.loc.line > 0) err << ':' << e.loc.line << ':' << e.loc.column;
        err << ": error: " << code_name(e.code) << ": " << e.message << '\n';
        emit_error(cfg, std::string(code_name(e.code)), e.message, out);
        return exit_code_for(e.code);
    } catch (const UsageError& e) {
        err << "error: " << e.message << '\n';
        emit_error(cfg, "E_USAGE", e.message, out);
        return kExitUsage;
    } catch (const Error& e) {
        const std::string where = cfg.inputs.empty() ? std::string("cnq") : cfg.inputs.front();
        err << where << ": error: " << code_name(e.code()) << ": " << e.what() << '\n';
        emit_error(cfg, std::string(code_name(e.code())), e.what(), out);
        return exit_code_for(e.code());
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic evaluation, verification and peephole optimisation of CNQ circuits", "cnq"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "text";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--guard-enum", cfg.enum_guard, "Maximum variable count for exhaustive enumeration");
    app.add_option("--guard-sim", cfg.sim_guard, "Maximum line count for state-vector simulation");
    app.add_option("--seed", cfg.seed, "Seed for the random-circuit self-test");

    struct Sub {
        const char* name;
        const char* help;
        Command command;
        int files;
    };
    const Sub subs[] = {
        {"eval", "Evaluate every line symbolically", Command::Eval, 1},
        {"verify", "Check the circuit's 'spec' statements", Command::Verify, 1},
        {"simulate", "Print simulated final states", Command::Simulate, 1},
        {"check", "Cross-check the symbolic result against state-vector simulation", Command::Check, 1},
        {"optimize", "Fuse gates feeding the same exponent with the same control", Command::Optimize, 1},
        {"equiv", "Decide whether two circuits compute the same outputs", Command::Equiv, 2},
    };
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("circuit", cfg.inputs, s.files == 2 ? "Two .cnq files" : "A .cnq file")
            ->required()
            ->expected(s.files);
        sub->callback([&cfg, command = s.command] { cfg.command = command; });
        if (s.command == Command::Simulate) {
            sub->add_option("--input", cfg.input_bits, "Basis input as bits, first declared line first");
        }
    }
    auto* fuzz = app.add_subcommand("fuzz", "Random-circuit self-test")->group("");
    fuzz->add_option("--iterations", cfg.iterations, "Number of random circuits");
    fuzz->callback([&cfg] { cfg.command = Command::Fuzz; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.format = format == "structured" ? Format::Structured : Format::Text;
    return run(cfg, out, err);
}

StructuredSummary read_structured(const std::string& document) {
    const json doc = json::parse(document);
    StructuredSummary s;
    s.command = doc.at("command").get<std::string>();
    s.verdict = doc.at("verdict").get<std::string>();
    for (const auto& l : doc.at("lines")) {
        s.line_status[l.at("line").get<std::string>()] = l.at("status").get<std::string>();
    }
    if (doc.contains("specs")) {
        for (const auto& sp : doc["specs"]) {
            s.line_status["spec:" + sp.at("line").get<std::string>()] = sp.at("status").get<std::string>();
        }
    }
    for (const auto& d : doc.at("diagnostics")) s.diagnostic_codes.push_back(d.at("code").get<std::string>());
    return s;
}

}  // namespace cnq::tools
