#include "cnq/tools/random_circuit.hpp"

#include <algorithm>
#include <string>

#include "cnq/symbolic.hpp"

namespace cnq::tools {

namespace {

template <typename T>
T uniform(std::mt19937_64& rng, T lo, T hi) {
    return std::uniform_int_distribution<T>(lo, hi)(rng);
}

}  // namespace

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts) {
    static const char* const kNames[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
    Circuit c;
    const int n = uniform(rng, 1, std::min(opts.max_lines, 12));
    std::vector<Var> targets;
    for (int i = 0; i < n; ++i) {
        const Var id = Var::intern(kNames[i]);
        const bool is_target = uniform(rng, 0, 2) == 0 || (i == n - 1 && targets.empty());
        c.lines.push_back({id, is_target ? Role::Target : Role::Control});
        if (is_target) targets.push_back(id);
    }

    const int gate_count = uniform(rng, 0, opts.max_gates);
    while (static_cast<int>(c.gates.size()) < gate_count) {
        const auto k = opts.root_orders[uniform<std::size_t>(rng, 0, opts.root_orders.size() - 1)];
        auto p = (k == 1) ? std::int64_t{1} : uniform<std::int64_t>(rng, 1, 2 * k - 1);
        const bool not_family = canonical_power(k, p) == k;

        Var target = not_family ? c.lines[uniform<std::size_t>(rng, 0, c.lines.size() - 1)].id
                                : targets[uniform<std::size_t>(rng, 0, targets.size() - 1)];
        std::vector<Var> pool;
        for (const auto& l : c.lines) {
            if (l.id != target) pool.push_back(l.id);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        const int max_ctrl = std::min<int>(opts.max_controls, static_cast<int>(pool.size()));
        pool.erase(pool.begin() + uniform(rng, 0, max_ctrl), pool.end());

        c.gates.push_back(make_gate(k, p, pool, target));
        if (!not_family && static_cast<int>(c.gates.size()) < gate_count &&
            std::bernoulli_distribution(opts.complement_probability)(rng)) {
            c.gates.push_back(make_gate(k, k - p, pool, target));
        }
    }
    return c;
}

Circuit random_evaluable_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opts) {
    for (;;) {
        Circuit c = random_circuit(rng, opts);
        try {
            evaluate(c);
            return c;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TargetInteraction) throw;
        }
    }
}

}  // namespace cnq::tools
