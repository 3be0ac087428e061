#include "cnq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cnq {

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[static_cast<std::size_t>(2 * r + c)] = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
        }
    }
    return out;
}

Mat2 Mat2::conj() const {
    Mat2 out;
    std::transform(m.begin(), m.end(), out.m.begin(), [](Cx z) { return std::conj(z); });
    return out;
}

Mat2 Mat2::adjoint() const {
    Mat2 c = conj();
    std::swap(c.m[1], c.m[2]);
    return c;
}

double Mat2::max_abs_diff(const Mat2& other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m[i] - other.m[i]));
    return worst;
}

Mat2 identity2() { return Mat2{{Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}}}; }

Mat2 not_matrix() { return Mat2{{Cx{0, 0}, Cx{1, 0}, Cx{1, 0}, Cx{0, 0}}}; }

Mat2 q_matrix(std::int64_t k, std::int64_t p) {
    if (!is_power_of_two(k)) {
        throw Error(ErrorCode::BadK, "root order k=" + std::to_string(k) + " is not a power of two");
    }
    // NOT = H diag(1, -1) H, so Q = H diag(1, w) H with w^k = -1.
    const auto r = canonical_power(k, p);
    const Cx w = std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(k));
    const Cx diag = (1.0 + w) / 2.0;
    const Cx off = (1.0 - w) / 2.0;
    return Mat2{{diag, off, off, diag}};
}

// ---------------------------------------------------------------------------

StateVector::StateVector(std::vector<Var> lines, std::uint64_t basis_index) : lines_(std::move(lines)) {
    if (lines_.size() >= 32) {
        throw Error(ErrorCode::TooManyLines, "state vector over " + std::to_string(lines_.size()) + " lines");
    }
    amps_.assign(std::size_t{1} << lines_.size(), Cx{0, 0});
    amps_.at(basis_index) = Cx{1, 0};
}

StateVector StateVector::basis(std::vector<Var> lines, const Assignment& input) {
    std::uint64_t index = 0;
    for (Var l : lines) index = (index << 1) | (input.get(l) ? 1U : 0U);
    return StateVector(std::move(lines), index);
}

unsigned StateVector::bit_of(Var line) const {
    auto it = std::find(lines_.begin(), lines_.end(), line);
    if (it == lines_.end()) throw Error(ErrorCode::UnknownLine, "line '" + line.name() + "' is not simulated");
    return static_cast<unsigned>(lines_.size() - 1 - static_cast<std::size_t>(it - lines_.begin()));
}

double StateVector::norm() const {
    double sum = 0.0;
    for (Cx a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void StateVector::apply(const Gate& g) {
    std::uint64_t control_mask = 0;
    for (Var c : g.controls) control_mask |= std::uint64_t{1} << bit_of(c);
    const std::uint64_t target_bit = std::uint64_t{1} << bit_of(g.target);
    const Mat2 u = q_matrix(g.k, g.p);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & target_bit) || (i & control_mask) != control_mask) continue;
        const Cx a0 = amps_[i];
        const Cx a1 = amps_[i | target_bit];
        amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps_[i | target_bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void StateVector::dump(std::ostream& out) const {
    const auto n = lines_.size();
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (std::abs(amps_[i]) < 1e-12) continue;
        std::string bits(n, '0');
        for (std::size_t b = 0; b < n; ++b) {
            if ((i >> (n - 1 - b)) & 1U) bits[b] = '1';
        }
        out << '|' << bits << "⟩ " << amps_[i].real() << ' ' << amps_[i].imag() << '\n';
    }
}

StateVector apply_gate(StateVector s, const Gate& g) {
    s.apply(g);
    return s;
}

namespace {

void check_guard(const Circuit& c, unsigned guard) {
    if (c.lines.size() > guard) {
        throw Error(ErrorCode::TooManyLines, "circuit has " + std::to_string(c.lines.size()) +
                                                 " lines; simulation guard is " + std::to_string(guard));
    }
}

}  // namespace

StateVector simulate(const Circuit& c, const Assignment& input, unsigned guard) {
    check_guard(c, guard);
    StateVector s = StateVector::basis(c.line_ids(), input);
    for (const auto& g : c.gates) s.apply(g);
    return s;
}

CrossCheckVerdict cross_check(const Circuit& c, const EvalReport& report, unsigned guard, double tolerance) {
    check_guard(c, guard);
    const auto ids = c.line_ids();
    const auto n = ids.size();

    // Per residual line, its exponent relative to |0>.
    std::vector<std::optional<MlPoly>> from_zero(n);
    for (std::size_t l = 0; l < n; ++l) {
        const LineOutcome& o = report.line(ids[l]);
        if (o.status == OutcomeStatus::Residual) from_zero[l] = o.exponent_from_zero(o.root_order());
    }

    CrossCheckVerdict verdict;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t input = 0; input < count; ++input) {
        const Assignment point = Assignment::from_index(ids, input);
        StateVector s(ids, input);
        for (const auto& g : c.gates) s.apply(g);

        // Predicted single-line states; the full state is their tensor product.
        std::vector<std::array<Cx, 2>> predicted(n);
        for (std::size_t l = 0; l < n; ++l) {
            const LineOutcome& o = report.line(ids[l]);
            if (from_zero[l]) {
                const auto K = o.root_order();
                BigInt e = from_zero[l]->eval(point) % (2 * K);
                if (e < 0) e += 2 * K;
                const Mat2 q = q_matrix(K, static_cast<std::int64_t>(e));
                predicted[l] = {q(0, 0), q(1, 0)};
            } else {
                const bool bit = o.value.eval(point);
                predicted[l] = {Cx{bit ? 0.0 : 1.0, 0}, Cx{bit ? 1.0 : 0.0, 0}};
            }
        }

        double worst = 0.0;
        auto amps = s.amplitudes();
        for (std::uint64_t j = 0; j < count; ++j) {
            Cx expected{1, 0};
            for (std::size_t l = 0; l < n; ++l) expected *= predicted[l][(j >> (n - 1 - l)) & 1U];
            worst = std::max(worst, std::abs(expected - amps[j]));
        }
        ++verdict.inputs_checked;
        verdict.max_error = std::max(verdict.max_error, worst);
        if (worst > tolerance && verdict.pass) {
            verdict.pass = false;
            verdict.witness = point;
            std::ostringstream msg;
            msg << "input " << point.to_string() << ": amplitude deviation " << worst;
            verdict.detail = msg.str();
        }
    }
    return verdict;
}

}  // namespace cnq
