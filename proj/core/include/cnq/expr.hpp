#pragma once

// Exact symbolic algebra over Boolean variables:
//  - Anf:     GF(2) algebraic normal form (XOR of AND-monomials), the language of
//             control signals and output specifications.
//  - MlPoly:  multilinear polynomial with arbitrary-precision integer coefficients,
//             the language of Q-exponents.
// Both are immutable value types kept in a canonical form, so structural
// equality is functional equality.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cnq/error.hpp"

namespace cnq {

using BigInt = boost::multiprecision::cpp_int;

/// Largest variable count accepted by exhaustive enumeration unless overridden.
inline constexpr unsigned kDefaultEnumGuard = 20;

/// Interned identifier. Copies are pointer-sized and compare equal in O(1);
/// ordering is lexicographic on the name.
class Var {
public:
    /// Throws Error{Syntax} unless `name` matches [A-Za-z_][A-Za-z0-9_]*.
    static Var intern(std::string_view name);
    static bool is_valid_name(std::string_view name);

    const std::string& name() const noexcept { return *name_; }

    friend bool operator==(Var a, Var b) noexcept { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(Var a, Var b) noexcept {
        if (a.name_ == b.name_) return std::strong_ordering::equal;
        return a.name_->compare(*b.name_) <=> 0;
    }

private:
    explicit Var(const std::string* name) : name_(name) {}
    const std::string* name_;
};

/// A product of distinct variables. The empty product is the constant 1.
/// Ordered by degree first, then lexicographically over the sorted names.
class Monomial {
public:
    Monomial() = default;
    Monomial(std::initializer_list<Var> vars);
    explicit Monomial(std::vector<Var> vars);

    std::span<const Var> vars() const noexcept { return vars_; }
    std::size_t degree() const noexcept { return vars_.size(); }
    bool is_constant() const noexcept { return vars_.empty(); }
    bool contains(Var v) const;
    /// True iff every variable of `*this` occurs in `other`.
    bool divides(const Monomial& other) const;
    Monomial without(Var v) const;

    /// Multilinear product: v·v = v, so this is set union.
    friend Monomial operator*(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

    /// "1" for the constant, otherwise names joined by `sep`.
    std::string to_string(std::string_view sep) const;

private:
    std::vector<Var> vars_;  // sorted, unique
};

/// Total 0/1 valuation of a set of variables.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<Var, bool>> values);

    /// Point number `index` of the enumeration over `vars`: vars.front() is the
    /// most significant bit of `index`.
    static Assignment from_index(std::span<const Var> vars, std::uint64_t index);

    void set(Var v, bool value) { values_[v] = value; }
    /// Throws Error{UnboundVar} when `v` has no value.
    bool get(Var v) const;
    bool has(Var v) const { return values_.contains(v); }
    const std::map<Var, bool>& values() const noexcept { return values_; }

    /// "a=0,b=1,c=1"
    std::string to_string() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::map<Var, bool> values_;
};

class MlPoly;

/// GF(2) algebraic normal form. The empty monomial set is the constant 0.
class Anf {
public:
    Anf() = default;
    static Anf zero() { return {}; }
    static Anf one();
    static Anf var(Var v);
    static Anf monomial(Monomial m);
    static Anf from_monomials(std::span<const Monomial> monomials);

    /// Grammar: identifiers, `0`, `1`, parentheses, `&` (AND) binding tighter than
    /// `^` (XOR). Throws Error{Syntax} with a 1-based column on malformed input.
    static Anf parse(std::string_view text);

    const std::set<Monomial>& monomials() const& noexcept { return monos_; }
    std::set<Monomial> monomials() && noexcept { return std::move(monos_); }
    bool is_zero() const noexcept { return monos_.empty(); }
    bool contains(const Monomial& m) const { return monos_.contains(m); }
    std::vector<Var> variables() const;

    bool eval(const Assignment& point) const;
    /// The unique multilinear integer polynomial agreeing with this function on {0,1}^n.
    MlPoly to_arith() const;

    friend Anf operator^(const Anf& x, const Anf& y);
    friend Anf operator&(const Anf& x, const Anf& y);
    Anf& operator^=(const Anf& y) { return *this = *this ^ y; }
    Anf& operator&=(const Anf& y) { return *this = *this & y; }

    friend bool operator==(const Anf&, const Anf&) = default;
    friend std::strong_ordering operator<=>(const Anf& x, const Anf& y) {
        return std::lexicographical_compare_three_way(x.monos_.begin(), x.monos_.end(),
                                                      y.monos_.begin(), y.monos_.end());
    }

    /// Canonical text, e.g. "t ^ a&b ^ b&c". Parses back to an equal value.
    std::string to_string() const;

private:
    std::set<Monomial> monos_;
};

/// Multilinear polynomial with integer coefficients; zero coefficients are never stored.
class MlPoly {
public:
    MlPoly() = default;
    static MlPoly constant(const BigInt& c);
    static MlPoly var(Var v);
    static MlPoly term(const BigInt& coeff, Monomial m);

    /// Grammar: sums/differences of products of integers, identifiers and
    /// parenthesised sub-expressions, e.g. "2*a*b + 2*b*(a - c)".
    static MlPoly parse(std::string_view text);

    const std::map<Monomial, BigInt>& terms() const& noexcept { return terms_; }
    std::map<Monomial, BigInt> terms() && noexcept { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    BigInt coefficient(const Monomial& m) const;
    std::vector<Var> variables() const;

    BigInt eval(const Assignment& point) const;
    /// Coefficientwise reduction into [0, m). Requires m >= 1.
    MlPoly mod(const BigInt& m) const;

    friend MlPoly operator+(const MlPoly& x, const MlPoly& y);
    friend MlPoly operator-(const MlPoly& x, const MlPoly& y);
    friend MlPoly operator-(const MlPoly& x);
    friend MlPoly operator*(const MlPoly& x, const MlPoly& y);
    friend MlPoly operator*(const BigInt& c, const MlPoly& x);
    MlPoly& operator+=(const MlPoly& y) {
        for (const auto& [m, c] : y.terms_) add_term(m, c);
        return *this;
    }

    friend bool operator==(const MlPoly&, const MlPoly&) = default;

    /// Canonical text, e.g. "2*a*b + 2*b*c" or "1 - a". Parses back to an equal value.
    std::string to_string() const;

private:
    void add_term(const Monomial& m, const BigInt& c);
    std::map<Monomial, BigInt> terms_;
};

/// Calls `fn(index, point)` for every point of {0,1}^vars in index order.
/// Throws Error{TooManyVars} when vars.size() exceeds `guard`.
void for_each_point(std::span<const Var> vars, unsigned guard,
                    const std::function<void(std::uint64_t, const Assignment&)>& fn);

/// Values of `p` on every point of {0,1}^vars, indexed as in Assignment::from_index.
std::vector<BigInt> values_of(const MlPoly& p, std::span<const Var> vars,
                              unsigned guard = kDefaultEnumGuard);

/// Inverse of values_of: the unique multilinear polynomial taking `values` on
/// {0,1}^vars (integer Moebius transform over the subset lattice).
/// Throws Error{TooManyVars} above `guard`; `values.size()` must be 2^vars.size().
MlPoly mobius_from_values(std::span<const BigInt> values, std::span<const Var> vars,
                          unsigned guard = kDefaultEnumGuard);

/// Sorted union of the variables of several expressions.
std::vector<Var> union_vars(std::span<const std::vector<Var>> groups);

/// "b&(a^c)" when exactly one variable divides every monomial of a multi-term
/// expression; the canonical expanded form otherwise.
std::string render_factored(const Anf& x);

}  // namespace cnq

template <>
struct std::hash<cnq::Var> {
    std::size_t operator()(cnq::Var v) const noexcept {
        return std::hash<const void*>{}(&v.name());
    }
};
