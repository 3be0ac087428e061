#pragma once

// Test-side helpers. The reference routines here deliberately avoid the library's
// own algorithms (no Moebius code, no closed-form gate matrix, no exponent
// bookkeeping) so they can serve as independent oracles.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnq/cnq.hpp"

namespace cnq::test {

#ifndef CNQ_FIXTURE_DIR
#error "CNQ_FIXTURE_DIR must point at tests/fixtures"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(CNQ_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Circuit load(const std::string& name) { return parse_circuit(read_fixture(name)); }

inline std::vector<Var> vars(std::initializer_list<const char*> names) {
    std::vector<Var> out;
    for (auto n : names) out.push_back(Var::intern(n));
    return out;
}

// ---- truth values ----------------------------------------------------------

using Point = std::map<std::string, bool>;

inline Point point_from_bits(const std::vector<Var>& vs, std::uint64_t index) {
    Point p;
    for (std::size_t i = 0; i < vs.size(); ++i) p[vs[i].name()] = (index >> (vs.size() - 1 - i)) & 1u;
    return p;
}

inline bool anf_value(const Anf& f, const Point& p) {
    bool acc = false;
    for (const auto& m : f.monomials()) {
        bool term = true;
        for (Var v : m.vars()) term = term && p.at(v.name());
        acc ^= term;
    }
    return acc;
}

inline BigInt poly_value(const MlPoly& f, const Point& p) {
    BigInt acc = 0;
    for (const auto& [m, c] : f.terms()) {
        bool on = true;
        for (Var v : m.vars()) on = on && p.at(v.name());
        if (on) acc += c;
    }
    return acc;
}

inline std::int64_t residue(const BigInt& v, std::int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

// ---- reference simulator ----------------------------------------------------

using Cplx = std::complex<double>;
using M2 = std::array<Cplx, 4>;

inline M2 mul(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// Q_k^p built as H · diag(1, exp(i*pi*p/k)) · H, i.e. from the eigenbasis of NOT.
inline M2 ref_q(std::int64_t k, std::int64_t p) {
    const double h = 1.0 / std::sqrt(2.0);
    const M2 H{h, h, h, -h};
    const M2 D{1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi * static_cast<double>(p) / static_cast<double>(k))};
    return mul(mul(H, D), H);
}

inline double max_diff(const M2& a, const Mat2& b) {
    double d = 0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[static_cast<std::size_t>(i)] - b(i / 2, i % 2)));
    return d;
}

// Full amplitude vector, first declared line is the leading bit.
inline std::vector<Cplx> ref_simulate(const Circuit& c, std::uint64_t input) {
    const auto n = c.lines.size();
    std::vector<Cplx> amp(std::size_t{1} << n, 0.0);
    amp[input] = 1.0;
    auto bit = [&](Var v) {
        for (std::size_t i = 0; i < n; ++i)
            if (c.lines[i].id == v) return std::uint64_t{1} << (n - 1 - i);
        throw std::logic_error("no line");
    };
    for (const auto& g : c.gates) {
        const M2 q = ref_q(g.k, g.p);
        const auto tb = bit(g.target);
        std::uint64_t cmask = 0;
        for (Var v : g.controls) cmask |= bit(v);
        for (std::uint64_t s = 0; s < amp.size(); ++s) {
            if ((s & tb) || (s & cmask) != cmask) continue;
            const Cplx a0 = amp[s], a1 = amp[s | tb];
            amp[s] = q[0] * a0 + q[1] * a1;
            amp[s | tb] = q[2] * a0 + q[3] * a1;
        }
    }
    return amp;
}

// Probability that `line` reads 1 after running the circuit on `input`.
inline double ref_prob_one(const Circuit& c, std::uint64_t input, Var line) {
    const auto amp = ref_simulate(c, input);
    const auto n = c.lines.size();
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (c.lines[i].id == line) b = std::uint64_t{1} << (n - 1 - i);
    double p = 0;
    for (std::uint64_t s = 0; s < amp.size(); ++s)
        if (s & b) p += std::norm(amp[s]);
    return p;
}

// ---- random generators -------------------------------------------------------

inline Anf random_anf(std::mt19937_64& rng, const std::vector<Var>& pool, int max_terms = 5) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::bernoulli_distribution coin(0.5);
    Anf out;
    for (int t = terms(rng); t > 0; --t) {
        std::vector<Var> m;
        for (Var v : pool)
            if (coin(rng)) m.push_back(v);
        out ^= Anf::monomial(Monomial(m));
    }
    return out;
}

inline MlPoly random_poly(std::mt19937_64& rng, const std::vector<Var>& pool, int max_terms = 6,
                          std::int64_t coeff_range = 20) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<std::int64_t> coeff(-coeff_range, coeff_range);
    std::bernoulli_distribution coin(0.5);
    MlPoly out;
    for (int t = terms(rng); t > 0; --t) {
        std::vector<Var> m;
        for (Var v : pool)
            if (coin(rng)) m.push_back(v);
        out += MlPoly::term(BigInt(coeff(rng)), Monomial(m));
    }
    return out;
}

}  // namespace cnq::test
