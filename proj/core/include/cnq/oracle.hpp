#pragma once

// Dense state-vector simulation of CNQ circuits. Independent of the exponent
// calculus: gates are applied as explicit 2x2 complex matrices, so it serves
// as ground truth for every symbolic claim.

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnq/circuit.hpp"
#include "cnq/symbolic.hpp"

namespace cnq {

using Cx = std::complex<double>;

inline constexpr unsigned kDefaultSimGuard = 12;

/// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<Cx, 4> m{};

    Cx operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b);
    Mat2 conj() const;
    Mat2 adjoint() const;
    double max_abs_diff(const Mat2& other) const;
};

Mat2 identity2();
Mat2 not_matrix();

/// Q_k^p in closed form: with w = exp(i*pi/k),
///   Q^p = 1/2 [[1 + w^p, 1 - w^p], [1 - w^p, 1 + w^p]].
/// Throws Error{BadK} unless k is a positive power of two.
Mat2 q_matrix(std::int64_t k, std::int64_t p);

/// Amplitudes over the lines of a circuit. The first declared line is the most
/// significant bit of the basis index.
class StateVector {
public:
    StateVector(std::vector<Var> lines, std::uint64_t basis_index);
    static StateVector basis(std::vector<Var> lines, const Assignment& input);

    std::span<const Cx> amplitudes() const noexcept { return amps_; }
    const std::vector<Var>& lines() const noexcept { return lines_; }
    /// Throws Error{UnknownLine}.
    unsigned bit_of(Var line) const;
    double norm() const;

    /// In-place controlled-Q^p on the target's amplitude pairs where all controls are 1.
    void apply(const Gate& g);

    /// `|bits> re im` per basis state, skipping amplitudes with modulus below 1e-12.
    void dump(std::ostream& out) const;

private:
    std::vector<Var> lines_;
    std::vector<Cx> amps_;
};

StateVector apply_gate(StateVector s, const Gate& g);

/// Throws Error{TooManyLines} when the circuit has more than `guard` lines.
StateVector simulate(const Circuit& c, const Assignment& input, unsigned guard = kDefaultSimGuard);

struct CrossCheckVerdict {
    bool pass = true;
    std::uint64_t inputs_checked = 0;
    double max_error = 0.0;
    std::optional<Assignment> witness;
    std::string detail;
};

/// Simulates every basis input and compares against the product state predicted
/// by `report` (basis values on Boolean lines, Q_K^F(x)|0> on residual lines),
/// amplitude by amplitude within `tolerance`.
CrossCheckVerdict cross_check(const Circuit& c, const EvalReport& report,
                              unsigned guard = kDefaultSimGuard, double tolerance = 1e-9);

}  // namespace cnq
