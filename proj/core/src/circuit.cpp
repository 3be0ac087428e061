#include "cnq/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cnq {

bool is_power_of_two(std::int64_t k) { return k > 0 && (k & (k - 1)) == 0; }

std::int64_t canonical_power(std::int64_t k, std::int64_t p) {
    const std::int64_t m = 2 * k;
    std::int64_t r = p % m;
    return r < 0 ? r + m : r;
}

bool Gate::is_not_family() const { return canonical_power(k, p) == k; }

Gate make_gate(std::int64_t k, std::int64_t p, std::vector<Var> controls, Var target) {
    if (!is_power_of_two(k)) {
        throw Error(ErrorCode::BadK, "root order k=" + std::to_string(k) + " is not a power of two");
    }
    const auto cp = canonical_power(k, p);
    if (cp == 0) {
        throw Error(ErrorCode::ZeroPower, "power p=" + std::to_string(p) + " is 0 mod 2k=" +
                                              std::to_string(2 * k) + " (identity gate)");
    }
    return Gate{k, cp, std::move(controls), target};
}

const Line* Circuit::find_line(Var id) const {
    auto it = std::find_if(lines.begin(), lines.end(), [id](const Line& l) { return l.id == id; });
    return it == lines.end() ? nullptr : &*it;
}

std::vector<Var> Circuit::line_ids() const {
    std::vector<Var> ids;
    ids.reserve(lines.size());
    for (const auto& l : lines) ids.push_back(l.id);
    return ids;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

class CircuitParser {
public:
    Circuit run(std::string_view text) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            ++line_no_;
            auto eol = text.find('\n', pos);
            if (eol == std::string_view::npos) eol = text.size();
            auto raw = text.substr(pos, eol - pos);
            if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            statement(raw);
            pos = eol + 1;
        }
        if (circuit_.lines.empty()) {
            throw Error(ErrorCode::NoLines, "circuit declares no lines", {1, 1});
        }
        return std::move(circuit_);
    }

private:
    [[noreturn]] void fail(ErrorCode code, const std::string& msg, int column) const {
        throw Error(code, msg, {line_no_, column});
    }

    Var declared(const Token& tok) const {
        if (!Var::is_valid_name(tok.text)) {
            fail(ErrorCode::Syntax, "invalid line name '" + std::string(tok.text) + "'", tok.column);
        }
        Var v = Var::intern(tok.text);
        if (!circuit_.find_line(v)) {
            fail(ErrorCode::UndeclaredLine, "line '" + std::string(tok.text) + "' is not declared",
                 tok.column);
        }
        return v;
    }

    std::int64_t integer(const Token& tok, std::string_view value) const {
        std::int64_t out = 0;
        const char* first = value.data();
        const char* last = value.data() + value.size();
        if (!value.empty() && value.front() == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc{} || ptr != last || first == last) {
            fail(ErrorCode::Syntax, "expected an integer in '" + std::string(tok.text) + "'",
                 tok.column);
        }
        return out;
    }

    void add_gate(std::int64_t k, std::int64_t p, std::span<const Token> control_toks,
                  const Token& target_tok, int column) {
        std::vector<Var> controls;
        for (const auto& t : control_toks) {
            Var c = declared(t);
            if (std::find(controls.begin(), controls.end(), c) != controls.end()) {
                fail(ErrorCode::DuplicateControl, "line '" + c.name() + "' listed twice as a control",
                     t.column);
            }
            controls.push_back(c);
        }
        Var target = declared(target_tok);
        if (std::find(controls.begin(), controls.end(), target) != controls.end()) {
            fail(ErrorCode::SelfControl, "line '" + target.name() + "' cannot control itself",
                 target_tok.column);
        }
        try {
            circuit_.gates.push_back(make_gate(k, p, std::move(controls), target));
        } catch (const Error& e) {
            fail(e.code(), e.what(), column);
        }
    }

    // `<controls...> -> <target>`
    void arrow_gate(std::int64_t k, std::int64_t p, std::span<const Token> args, int column) {
        auto arrow = std::find_if(args.begin(), args.end(), [](const Token& t) { return t.text == "->"; });
        if (arrow == args.end()) {
            fail(ErrorCode::Syntax, "expected '-> <line>'", args.empty() ? column : args.back().column);
        }
        if (std::distance(arrow, args.end()) != 2) {
            fail(ErrorCode::Syntax, "expected exactly one target line after '->'", arrow->column);
        }
        add_gate(k, p, std::span(args.begin(), arrow), *(arrow + 1), column);
    }

    void statement(std::string_view raw) {
        auto toks = tokenize(raw);
        if (toks.empty()) return;
        const auto& head = toks.front();
        std::span<const Token> args(toks.begin() + 1, toks.end());

        if (head.text == "line") {
            if (args.empty() || args.size() > 2) {
                fail(ErrorCode::Syntax, "expected 'line <id> [target]'", head.column);
            }
            if (!Var::is_valid_name(args[0].text)) {
                fail(ErrorCode::Syntax, "invalid line name '" + std::string(args[0].text) + "'",
                     args[0].column);
            }
            Var id = Var::intern(args[0].text);
            if (circuit_.find_line(id)) {
                fail(ErrorCode::DuplicateLine, "line '" + id.name() + "' declared twice", args[0].column);
            }
            Role role = Role::Control;
            if (args.size() == 2) {
                if (args[1].text != "target") {
                    fail(ErrorCode::Syntax, "expected 'target' after the line name", args[1].column);
                }
                role = Role::Target;
            }
            circuit_.lines.push_back({id, role});
        } else if (head.text == "not") {
            if (args.size() != 1) fail(ErrorCode::Syntax, "expected 'not <line>'", head.column);
            add_gate(1, 1, {}, args[0], head.column);
        } else if (head.text == "cnot") {
            if (args.size() != 2) fail(ErrorCode::Syntax, "expected 'cnot <control> <line>'", head.column);
            add_gate(1, 1, args.first(1), args[1], head.column);
        } else if (head.text == "ccx") {
            if (args.size() < 2) {
                fail(ErrorCode::Syntax, "expected 'ccx <c1> [<c2> ...] <line>'", head.column);
            }
            add_gate(1, 1, args.first(args.size() - 1), args.back(), head.column);
        } else if (head.text == "v") {
            arrow_gate(2, 1, args, head.column);
        } else if (head.text == "v*") {
            arrow_gate(2, -1, args, head.column);
        } else if (head.text == "w") {
            arrow_gate(4, 1, args, head.column);
        } else if (head.text == "w*") {
            arrow_gate(4, -1, args, head.column);
        } else if (head.text == "q") {
            if (args.size() < 2 || !args[0].text.starts_with("k=") || !args[1].text.starts_with("p=")) {
                fail(ErrorCode::Syntax, "expected 'q k=<K> p=<P> [controls] -> <line>'", head.column);
            }
            const auto k = integer(args[0], args[0].text.substr(2));
            const auto p = integer(args[1], args[1].text.substr(2));
            if (!is_power_of_two(k)) {
                fail(ErrorCode::BadK, "root order k=" + std::to_string(k) + " is not a power of two",
                     args[0].column);
            }
            arrow_gate(k, p, args.subspan(2), head.column);
        } else if (head.text == "spec") {
            spec(raw, toks);
        } else {
            fail(ErrorCode::Syntax, "unknown statement '" + std::string(head.text) + "'", head.column);
        }
    }

    void spec(std::string_view raw, const std::vector<Token>& toks) {
        if (toks.size() < 3 || toks[2].text.front() != '=') {
            fail(ErrorCode::Syntax, "expected 'spec <line> = <expr>'", toks.front().column);
        }
        Var line = declared(toks[1]);
        if (circuit_.find_line(line)->role != Role::Target) {
            fail(ErrorCode::SpecNotTarget, "spec names '" + line.name() + "', which is not a target line",
                 toks[1].column);
        }
        for (const auto& s : circuit_.specs) {
            if (s.line == line) fail(ErrorCode::Syntax, "duplicate spec for '" + line.name() + "'", toks[1].column);
        }
        const std::size_t expr_start = static_cast<std::size_t>(toks[2].column);  // just past '='
        Anf expected;
        try {
            expected = Anf::parse(raw.substr(expr_start));
        } catch (const Error& e) {
            fail(e.code(), e.what(), static_cast<int>(expr_start) + e.where().column);
        }
        for (Var v : expected.variables()) {
            if (!circuit_.find_line(v)) {
                fail(ErrorCode::UndeclaredLine, "spec refers to undeclared line '" + v.name() + "'",
                     static_cast<int>(expr_start) + 1);
            }
        }
        circuit_.specs.push_back({line, std::move(expected)});
    }

    Circuit circuit_;
    int line_no_ = 0;
};

std::string join_controls(const Gate& g) {
    std::string out;
    for (Var c : g.controls) {
        out += c.name();
        out += ' ';
    }
    return out;
}

}  // namespace

Circuit parse_circuit(std::string_view text) { return CircuitParser{}.run(text); }

std::string render_gate(const Gate& g) {
    const auto p = canonical_power(g.k, g.p);
    if (g.k == 1) {
        switch (g.controls.size()) {
            case 0: return "not " + g.target.name();
            case 1: return "cnot " + g.controls[0].name() + " " + g.target.name();
            default: return "ccx " + join_controls(g) + g.target.name();
        }
    }
    std::string head;
    if (g.k == 2 && p == 1) head = "v";
    else if (g.k == 2 && p == 3) head = "v*";
    else if (g.k == 4 && p == 1) head = "w";
    else if (g.k == 4 && p == 7) head = "w*";
    else head = "q k=" + std::to_string(g.k) + " p=" + std::to_string(p);
    return head + " " + join_controls(g) + "-> " + g.target.name();
}

std::string render_circuit(const Circuit& c) {
    std::ostringstream out;
    for (const auto& l : c.lines) {
        out << "line " << l.id.name() << (l.role == Role::Target ? " target" : "") << '\n';
    }
    for (const auto& g : c.gates) out << render_gate(g) << '\n';
    for (const auto& s : c.specs) out << "spec " << s.line.name() << " = " << s.expected.to_string() << '\n';
    return out.str();
}

std::vector<Diagnostic> validate(const Circuit& c) {
    std::vector<Diagnostic> out;
    if (c.lines.empty()) out.push_back({ErrorCode::NoLines, std::nullopt, "circuit declares no lines"});
    std::set<Var> seen;
    for (const auto& l : c.lines) {
        if (!seen.insert(l.id).second) {
            out.push_back({ErrorCode::DuplicateLine, std::nullopt, "line '" + l.id.name() + "' declared twice"});
        }
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        auto diag = [&](ErrorCode code, std::string msg) { out.push_back({code, i, std::move(msg)}); };
        if (!is_power_of_two(g.k)) {
            diag(ErrorCode::BadK, "root order k=" + std::to_string(g.k) + " is not a power of two");
        } else if (canonical_power(g.k, g.p) == 0) {
            diag(ErrorCode::ZeroPower, "power p=" + std::to_string(g.p) + " is 0 mod 2k");
        } else if (g.p <= 0 || g.p >= 2 * g.k) {
            diag(ErrorCode::BadPower, "power p=" + std::to_string(g.p) + " is not canonical in [1, 2k)");
        }
        if (!c.find_line(g.target)) diag(ErrorCode::UndeclaredLine, "target '" + g.target.name() + "' is not declared");
        std::set<Var> ctrl;
        for (Var v : g.controls) {
            if (!c.find_line(v)) diag(ErrorCode::UndeclaredLine, "control '" + v.name() + "' is not declared");
            if (!ctrl.insert(v).second) diag(ErrorCode::DuplicateControl, "control '" + v.name() + "' repeated");
            if (v == g.target) diag(ErrorCode::SelfControl, "line '" + v.name() + "' controls itself");
        }
    }
    for (const auto& s : c.specs) {
        const Line* l = c.find_line(s.line);
        if (!l) {
            out.push_back({ErrorCode::UndeclaredLine, std::nullopt, "spec names undeclared line '" + s.line.name() + "'"});
        } else if (l->role != Role::Target) {
            out.push_back({ErrorCode::SpecNotTarget, std::nullopt, "spec names control line '" + s.line.name() + "'"});
        }
        for (Var v : s.expected.variables()) {
            if (!c.find_line(v)) {
                out.push_back({ErrorCode::UndeclaredLine, std::nullopt, "spec refers to undeclared line '" + v.name() + "'"});
            }
        }
    }
    return out;
}

namespace {

std::string category(const Gate& g) {
    if (g.is_not_family()) {
        switch (g.controls.size()) {
            case 0: return "NOT";
            case 1: return "CNOT";
            default: return "MCNOT";
        }
    }
    const auto p = canonical_power(g.k, g.p);
    const std::string prefix = g.controls.empty() ? "" : "C";
    if (g.k == 2 && p == 1) return prefix + "V";
    if (g.k == 2 && p == 3) return prefix + "V*";
    if (g.k == 4 && p == 1) return prefix + "W";
    if (g.k == 4 && p == 7) return prefix + "W*";
    return (g.controls.empty() ? "Q" : "CQ") + ("(k=" + std::to_string(g.k) + ",p=" + std::to_string(p) + ")");
}

}  // namespace

GateCounts gate_count(const Circuit& c) {
    GateCounts out;
    for (const auto& g : c.gates) {
        ++out.categories[category(g)];
        if (g.controls.empty()) {
            ++out.uncontrolled;
            continue;
        }
        ++out.total_controlled;
        const Line* l = c.find_line(g.target);
        if (l && l->role == Role::Target) ++out.on_target;
        else ++out.on_control_lines;
    }
    return out;
}

}  // namespace cnq
