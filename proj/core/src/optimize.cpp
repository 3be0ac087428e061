#include "cnq/optimize.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace cnq {

namespace {

struct Traced {
    std::vector<Contribution> contributions;
    std::vector<int> epochs;  // parallel to contributions
    EvalTrace trace;
};

Traced trace_contributions(const Circuit& c) {
    Traced out;
    evaluate(c, &out.trace);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const auto& gt = out.trace.gates[i];
        if (!gt.absorbed) continue;
        const auto& g = c.gates[i];
        out.contributions.push_back({i, g.target, g.k, g.p, gt.control});
        out.epochs.push_back(gt.epoch);
    }
    return out;
}

}  // namespace

std::vector<Contribution> contributions(const Circuit& c) { return trace_contributions(c).contributions; }

MergeResult merge_pass(const Circuit& c) {
    const Traced traced = trace_contributions(c);

    // One exponent per (target, epoch); members of a group share the resolved control.
    using Key = std::tuple<Var, int, Anf>;
    std::map<Key, std::vector<std::size_t>> groups;  // -> indices into traced.contributions
    std::vector<Key> order;
    for (std::size_t i = 0; i < traced.contributions.size(); ++i) {
        const auto& con = traced.contributions[i];
        Key key{con.target, traced.epochs[i], con.resolved_control};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(i);
    }

    std::vector<bool> drop(c.gates.size(), false);
    std::map<std::size_t, std::optional<Gate>> replace;
    MergeResult result;
    for (const auto& key : order) {
        const auto& members = groups.at(key);
        if (members.size() < 2) continue;
        const auto& [target, epoch, control] = key;
        const std::int64_t K = traced.trace.epoch_root.at({target, epoch});

        std::int64_t sum = 0;
        Change change{ChangeKind::Merged, target, control, {}, std::nullopt};
        for (auto m : members) {
            const auto& con = traced.contributions[m];
            sum = (sum + con.p * (K / con.k)) % (2 * K);
            change.gate_indices.push_back(con.gate_index);
            drop[con.gate_index] = true;
        }
        const std::size_t last = change.gate_indices.back();
        if (sum == 0) {
            change.kind = ChangeKind::Cancelled;
        } else {
            // Smallest root order that expresses the fused power.
            std::int64_t k = K;
            std::int64_t p = sum;
            while (k > 1 && p % 2 == 0) {
                k /= 2;
                p /= 2;
            }
            change.kind = (k == 1) ? ChangeKind::Promoted : ChangeKind::Merged;
            change.emitted = make_gate(k, p, c.gates[last].controls, target);
        }
        replace[last] = change.emitted;
        result.changes.push_back(std::move(change));
    }

    result.circuit.lines = c.lines;
    result.circuit.specs = c.specs;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        if (!drop[i]) {
            result.circuit.gates.push_back(c.gates[i]);
        } else if (auto it = replace.find(i); it != replace.end() && it->second) {
            result.circuit.gates.push_back(*it->second);
        }
    }
    return result;
}

OptimizeSummary summarize(const Circuit& before, const MergeResult& result) {
    return {gate_count(before), gate_count(result.circuit), result.changes};
}

std::string_view change_kind_name(ChangeKind kind) {
    switch (kind) {
        case ChangeKind::Merged: return "merged";
        case ChangeKind::Cancelled: return "cancelled";
        case ChangeKind::Promoted: return "promoted";
    }
    return "unknown";
}

std::string format_summary(const OptimizeSummary& s) {
    std::ostringstream out;
    out << "elementary controlled gates: " << s.before.total_controlled << " -> " << s.after.total_controlled << '\n';
    for (const auto& ch : s.changes) {
        out << change_kind_name(ch.kind) << " on " << ch.target.name() << " (control "
            << ch.resolved_control.to_string() << "): gates";
        for (auto i : ch.gate_indices) out << ' ' << i + 1;
        if (ch.emitted) out << " -> " << render_gate(*ch.emitted);
        else out << " -> (removed)";
        out << '\n';
    }
    if (s.changes.empty()) out << "no changes\n";
    return out.str();
}

}  // namespace cnq
