#include "cnq/symbolic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cnq {

TargetState TargetState::rebased(std::int64_t K2) const {
    if (K2 == K) return *this;
    if (K2 < K || K2 % K != 0) {
        throw std::invalid_argument("cannot rebase root order " + std::to_string(K) + " to " +
                                    std::to_string(K2));
    }
    return TargetState{base, K2, BigInt(K2 / K) * E};
}

MlPoly TargetState::exponent_from_zero() const {
    return (E + BigInt(K) * base.to_arith()).mod(BigInt(2 * K));
}

std::optional<Anf> collapse(const TargetState& ts) {
    std::vector<Monomial> update;
    const MlPoly reduced = ts.E.mod(BigInt(2 * ts.K));
    for (const auto& [m, c] : reduced.terms()) {
        if (c != ts.K) return std::nullopt;
        update.push_back(m);
    }
    return Anf::from_monomials(update);
}

MlPoly LineOutcome::exponent_from_zero(std::int64_t K) const {
    if (status == OutcomeStatus::Residual) return exponent->rebased(K).exponent_from_zero();
    return (BigInt(K) * value.to_arith()).mod(BigInt(2 * K));
}

const LineOutcome& EvalReport::line(Var id) const {
    auto it = std::find_if(lines.begin(), lines.end(), [id](const LineOutcome& o) { return o.line == id; });
    if (it == lines.end()) throw Error(ErrorCode::UnknownLine, "no line '" + id.name() + "' in report");
    return *it;
}

namespace {

class Evaluator {
public:
    Evaluator(const Circuit& c, EvalTrace* trace) : circuit_(c), trace_(trace) {
        for (const auto& l : c.lines) slots_.emplace(l.id, Slot{Anf::var(l.id), std::nullopt, std::nullopt, 0});
        if (trace_) {
            trace_->gates.clear();
            trace_->epoch_root.clear();
        }
    }

    EvalReport run() {
        for (std::size_t i = 0; i < circuit_.gates.size(); ++i) step(i, circuit_.gates[i]);

        for (const auto& l : circuit_.lines) {
            Slot& s = slots_.at(l.id);
            LineOutcome out{l.id, l.role, OutcomeStatus::Pure, s.value, s.last_exponent};
            if (s.taint) {
                close_epoch(l.id, s);
                if (auto f = collapse(*s.taint)) {
                    out.status = OutcomeStatus::Collapsed;
                    out.value = s.taint->base ^ *f;
                } else {
                    out.status = OutcomeStatus::Residual;
                    out.value = Anf{};
                    report_.warnings.push_back(
                        {ErrorCode::NoCollapse, std::nullopt,
                         "line '" + l.id.name() + "' does not collapse to a Boolean value (K=" +
                             std::to_string(s.taint->K) + ", E=" + s.taint->E.to_string() + ")"});
                }
                out.exponent = s.taint;
            } else if (s.last_exponent) {
                out.status = OutcomeStatus::Collapsed;
            }
            report_.lines.push_back(std::move(out));
        }
        return std::move(report_);
    }

private:
    struct Slot {
        Anf value;
        std::optional<TargetState> taint;
        std::optional<TargetState> last_exponent;
        int epoch = 0;
    };

    void close_epoch(Var id, Slot& s) {
        if (trace_) trace_->epoch_root[{id, s.epoch}] = s.taint->K;
    }

    Anf resolve(std::size_t gate_index, Var id) {
        Slot& s = slots_.at(id);
        if (!s.taint) return s.value;
        auto f = collapse(*s.taint);
        if (!f) {
            throw Error(ErrorCode::TargetInteraction,
                        "gate " + std::to_string(gate_index + 1) + " (" + render_gate(circuit_.gates[gate_index]) +
                            "): line '" + id.name() + "' carries Q_" + std::to_string(s.taint->K) + "^(" +
                            s.taint->E.to_string() + ") and cannot act as a Boolean control");
        }
        s.value = s.taint->base ^ *f;
        report_.feedback.push_back({gate_index, id, *s.taint, *f});
        close_epoch(id, s);
        s.last_exponent = std::move(s.taint);
        s.taint.reset();
        ++s.epoch;
        return s.value;
    }

    void step(std::size_t index, const Gate& g) {
        Anf control = Anf::one();
        for (Var c : g.controls) control &= resolve(index, c);

        Slot& t = slots_.at(g.target);
        GateTrace gt{control, false, t.epoch};
        if (!t.taint && g.is_not_family()) {
            t.value ^= control;
        } else {
            if (!t.taint) t.taint = TargetState{t.value, g.k, MlPoly{}};
            TargetState& ts = *t.taint;
            const auto K = std::max(ts.K, g.k);
            ts = ts.rebased(K);
            const BigInt power = BigInt(g.p) * BigInt(K / g.k);
            ts.E = (ts.E + power * control.to_arith()).mod(BigInt(2 * K));
            gt.absorbed = true;
        }
        if (trace_) trace_->gates.push_back(std::move(gt));
    }

    const Circuit& circuit_;
    EvalTrace* trace_;
    std::map<Var, Slot> slots_;
    EvalReport report_;
};

std::optional<Assignment> first_difference(std::span<const Var> vars, unsigned guard,
                                           const std::function<bool(const Assignment&)>& differs) {
    std::optional<Assignment> found;
    try {
        // Enumeration is only used for the witness, so a guard overflow just means "no witness".
        for_each_point(vars, guard, [&](std::uint64_t, const Assignment& a) {
            if (!found && differs(a)) found = a;
        });
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooManyVars) throw;
    }
    return found;
}

BigInt residue(const BigInt& v, std::int64_t m) {
    BigInt r = v % m;
    return r < 0 ? BigInt(r + m) : r;
}

std::string render_update(const Anf& base, const Anf& update) {
    bool disjoint = std::none_of(update.monomials().begin(), update.monomials().end(),
                                 [&](const Monomial& m) { return base.contains(m); });
    if (!disjoint || update.monomials().size() < 2) return (base ^ update).to_string();
    if (base.is_zero()) return render_factored(update);
    return base.to_string() + " ^ " + render_factored(update);
}

}  // namespace

EvalReport evaluate(const Circuit& c, EvalTrace* trace) {
    if (auto diags = validate(c); !diags.empty()) {
        const auto& d = diags.front();
        std::string where = d.gate_index ? "gate " + std::to_string(*d.gate_index + 1) + ": " : "";
        throw Error(d.code, where + d.message);
    }
    return Evaluator(c, trace).run();
}

std::vector<SpecVerdict> check_spec(const Circuit& c, unsigned enum_guard) {
    const EvalReport report = evaluate(c);
    std::vector<SpecVerdict> out;
    for (const auto& spec : c.specs) {
        const LineOutcome& o = report.line(spec.line);
        SpecVerdict v{spec.line, spec.expected, SpecStatus::Pass, std::nullopt, std::nullopt, std::nullopt};
        if (o.status == OutcomeStatus::Residual) {
            v.status = SpecStatus::NoCollapse;
            v.residual = o.exponent;
            const auto& ts = *o.exponent;
            auto vars = ts.E.variables();
            v.witness = first_difference(vars, enum_guard, [&](const Assignment& a) {
                auto r = residue(ts.E.eval(a), 2 * ts.K);
                return r != 0 && r != ts.K;
            });
        } else {
            v.actual = o.value;
            if (o.value != spec.expected) {
                v.status = SpecStatus::Fail;
                std::vector<std::vector<Var>> groups{o.value.variables(), spec.expected.variables()};
                auto vars = union_vars(groups);
                v.witness = first_difference(vars, enum_guard, [&](const Assignment& a) {
                    return o.value.eval(a) != spec.expected.eval(a);
                });
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

EquivVerdict equivalent(const Circuit& a, const Circuit& b, unsigned enum_guard) {
    auto line_set = [](const Circuit& c) {
        std::set<std::pair<Var, Role>> s;
        for (const auto& l : c.lines) s.emplace(l.id, l.role);
        return s;
    };
    if (line_set(a) != line_set(b)) {
        throw Error(ErrorCode::LineMismatch, "circuits do not declare the same lines with the same roles");
    }
    const EvalReport ra = evaluate(a);
    const EvalReport rb = evaluate(b);
    EquivVerdict verdict;
    for (const auto& oa : ra.lines) {
        const LineOutcome& ob = rb.line(oa.line);
        const auto K = std::max(oa.root_order(), ob.root_order());
        const MlPoly fa = oa.exponent_from_zero(K);
        const MlPoly fb = ob.exponent_from_zero(K);
        if (fa == fb) continue;
        std::vector<std::vector<Var>> groups{fa.variables(), fb.variables()};
        auto vars = union_vars(groups);
        auto witness = first_difference(vars, enum_guard, [&](const Assignment& p) {
            return residue(fa.eval(p), 2 * K) != residue(fb.eval(p), 2 * K);
        });
        verdict.equivalent = false;
        verdict.differences.push_back(
            {oa.line, format_outcome(oa) + "  vs  " + format_outcome(ob), std::move(witness)});
    }
    return verdict;
}

std::string format_outcome(const LineOutcome& o) {
    std::string out = o.line.name() + " = ";
    switch (o.status) {
        case OutcomeStatus::Pure:
            return out + o.value.to_string();
        case OutcomeStatus::Collapsed: {
            const auto& ts = *o.exponent;
            auto f = collapse(ts);
            if (f && (ts.base ^ *f) == o.value) out += render_update(ts.base, *f);
            else out += o.value.to_string();
            return out + "    [K=" + std::to_string(ts.K) + ", E=" + ts.E.to_string() + "]";
        }
        case OutcomeStatus::Residual: {
            const auto& ts = *o.exponent;
            return out + "Q" + std::to_string(ts.K) + "^(" + ts.E.to_string() + ") . (" +
                   ts.base.to_string() + ")    [residual K=" + std::to_string(ts.K) +
                   ", E=" + ts.E.to_string() + "]";
        }
    }
    return out;
}

std::string format_report(const EvalReport& report) {
    std::ostringstream out;
    for (const auto& o : report.lines) out << format_outcome(o) << '\n';
    for (const auto& f : report.feedback) {
        out << "note: gate " << f.gate_index + 1 << " uses target '" << f.line.name()
            << "' as a control after collapsing it to " << (f.state.base ^ f.update).to_string() << '\n';
    }
    for (const auto& w : report.warnings) out << "warning: " << w.message << '\n';
    return out.str();
}

}  // namespace cnq
