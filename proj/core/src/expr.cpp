#include "cnq/expr.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace cnq {

// ---------------------------------------------------------------------------
// Var

bool Var::is_valid_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(name.begin() + 1, name.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || c == '_';
    });
}

Var Var::intern(std::string_view name) {
    if (!is_valid_name(name)) {
        throw Error(ErrorCode::Syntax, "invalid identifier '" + std::string(name) + "'");
    }
    static std::mutex mutex;
    static std::unordered_set<std::string> table;  // node-based: element addresses are stable
    std::lock_guard lock(mutex);
    auto [it, inserted] = table.emplace(name);
    return Var(&*it);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::initializer_list<Var> vars) : Monomial(std::vector<Var>(vars)) {}

Monomial::Monomial(std::vector<Var> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Monomial::contains(Var v) const {
    return std::binary_search(vars_.begin(), vars_.end(), v);
}

bool Monomial::divides(const Monomial& other) const {
    return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
}

Monomial Monomial::without(Var v) const {
    Monomial out;
    std::copy_if(vars_.begin(), vars_.end(), std::back_inserter(out.vars_),
                 [v](Var x) { return x != v; });
    return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.vars_.reserve(a.vars_.size() + b.vars_.size());
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(out.vars_));
    return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.vars_.begin(), a.vars_.end(),
                                                  b.vars_.begin(), b.vars_.end());
}

std::string Monomial::to_string(std::string_view sep) const {
    if (vars_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) out += sep;
        out += vars_[i].name();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::initializer_list<std::pair<Var, bool>> values) {
    for (const auto& [v, b] : values) values_[v] = b;
}

Assignment Assignment::from_index(std::span<const Var> vars, std::uint64_t index) {
    Assignment out;
    const auto n = vars.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.values_[vars[i]] = ((index >> (n - 1 - i)) & 1U) != 0;
    }
    return out;
}

bool Assignment::get(Var v) const {
    auto it = values_.find(v);
    if (it == values_.end()) {
        throw Error(ErrorCode::UnboundVar, "no value for variable '" + v.name() + "'");
    }
    return it->second;
}

std::string Assignment::to_string() const {
    std::string out;
    for (const auto& [v, b] : values_) {
        if (!out.empty()) out += ',';
        out += v.name();
        out += b ? "=1" : "=0";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expression text parsing

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char ch) {
        if (peek() != ch) return false;
        ++pos_;
        return true;
    }
    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }
    std::optional<std::string_view> identifier() {
        skip_ws();
        auto start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return text_.substr(start, pos_ - start);
        }
        return std::nullopt;
    }
    std::optional<std::string_view> digits() {
        skip_ws();
        auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) return std::nullopt;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            fail("identifiers may not start with a digit");
        return text_.substr(start, pos_ - start);
    }
    [[noreturn]] void fail(const std::string& message) {
        skip_ws();
        throw Error(ErrorCode::Syntax, message, {1, static_cast<int>(pos_) + 1});
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Anf parse_anf_xor(Cursor& cur);

Anf parse_anf_factor(Cursor& cur) {
    if (cur.accept('(')) {
        Anf inner = parse_anf_xor(cur);
        cur.expect(')');
        return inner;
    }
    if (auto num = cur.digits()) {
        if (*num == "0") return Anf::zero();
        if (*num == "1") return Anf::one();
        cur.fail("only the constants 0 and 1 are allowed in GF(2) expressions");
    }
    if (auto id = cur.identifier()) return Anf::var(Var::intern(*id));
    cur.fail("expected variable, constant or '('");
}

Anf parse_anf_and(Cursor& cur) {
    Anf acc = parse_anf_factor(cur);
    while (cur.accept('&')) acc &= parse_anf_factor(cur);
    if (auto c = cur.peek(); std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
        cur.fail("missing operator: AND must be written with '&'");
    return acc;
}

Anf parse_anf_xor(Cursor& cur) {
    Anf acc = parse_anf_and(cur);
    while (cur.accept('^')) acc ^= parse_anf_and(cur);
    return acc;
}

MlPoly parse_poly_sum(Cursor& cur);

MlPoly parse_poly_factor(Cursor& cur) {
    if (cur.accept('(')) {
        MlPoly inner = parse_poly_sum(cur);
        cur.expect(')');
        return inner;
    }
    if (auto num = cur.digits()) return MlPoly::constant(BigInt(std::string(*num)));
    if (auto id = cur.identifier()) return MlPoly::var(Var::intern(*id));
    cur.fail("expected integer, variable or '('");
}

MlPoly parse_poly_product(Cursor& cur) {
    MlPoly acc = parse_poly_factor(cur);
    while (cur.accept('*')) acc = acc * parse_poly_factor(cur);
    if (auto c = cur.peek(); std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
        cur.fail("missing operator: products must be written with '*'");
    return acc;
}

MlPoly parse_poly_sum(Cursor& cur) {
    bool negate = false;
    if (cur.accept('-')) negate = true;
    else cur.accept('+');
    MlPoly acc = parse_poly_product(cur);
    if (negate) acc = -acc;
    for (;;) {
        if (cur.accept('+')) acc += parse_poly_product(cur);
        else if (cur.accept('-')) acc = acc - parse_poly_product(cur);
        else return acc;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Anf

Anf Anf::one() { return monomial(Monomial{}); }

Anf Anf::var(Var v) { return monomial(Monomial{v}); }

Anf Anf::monomial(Monomial m) {
    Anf out;
    out.monos_.insert(std::move(m));
    return out;
}

Anf Anf::from_monomials(std::span<const Monomial> monomials) {
    Anf out;
    for (const auto& m : monomials) {
        if (auto [it, inserted] = out.monos_.insert(m); !inserted) out.monos_.erase(it);
    }
    return out;
}

Anf Anf::parse(std::string_view text) {
    Cursor cur(text);
    Anf out = parse_anf_xor(cur);
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return out;
}

std::vector<Var> Anf::variables() const {
    std::set<Var> vars;
    for (const auto& m : monos_) vars.insert(m.vars().begin(), m.vars().end());
    return {vars.begin(), vars.end()};
}

bool Anf::eval(const Assignment& point) const {
    bool acc = false;
    for (const auto& m : monos_) {
        bool term = true;
        for (Var v : m.vars()) term = point.get(v) && term;
        acc ^= term;
    }
    return acc;
}

MlPoly Anf::to_arith() const {
    // P xor m = P + m - 2*P*m
    MlPoly acc;
    for (const auto& m : monos_) {
        MlPoly mp = MlPoly::term(1, m);
        acc = acc + mp - BigInt(2) * (acc * mp);
    }
    return acc;
}

Anf operator^(const Anf& x, const Anf& y) {
    Anf out;
    std::set_symmetric_difference(x.monos_.begin(), x.monos_.end(), y.monos_.begin(),
                                  y.monos_.end(), std::inserter(out.monos_, out.monos_.end()));
    return out;
}

Anf operator&(const Anf& x, const Anf& y) {
    Anf out;
    for (const auto& a : x.monos_) {
        for (const auto& b : y.monos_) {
            auto prod = a * b;
            if (auto [it, inserted] = out.monos_.insert(prod); !inserted) out.monos_.erase(it);
        }
    }
    return out;
}

std::string Anf::to_string() const {
    if (monos_.empty()) return "0";
    std::string out;
    for (const auto& m : monos_) {
        if (!out.empty()) out += " ^ ";
        out += m.to_string("&");
    }
    return out;
}

// ---------------------------------------------------------------------------
// MlPoly

MlPoly MlPoly::constant(const BigInt& c) { return term(c, Monomial{}); }

MlPoly MlPoly::var(Var v) { return term(1, Monomial{v}); }

MlPoly MlPoly::term(const BigInt& coeff, Monomial m) {
    MlPoly out;
    out.add_term(m, coeff);
    return out;
}

MlPoly MlPoly::parse(std::string_view text) {
    Cursor cur(text);
    MlPoly out = parse_poly_sum(cur);
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return out;
}

void MlPoly::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BigInt MlPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<Var> MlPoly::variables() const {
    std::set<Var> vars;
    for (const auto& [m, c] : terms_) vars.insert(m.vars().begin(), m.vars().end());
    return {vars.begin(), vars.end()};
}

BigInt MlPoly::eval(const Assignment& point) const {
    BigInt acc = 0;
    for (const auto& [m, c] : terms_) {
        bool on = true;
        for (Var v : m.vars()) on = point.get(v) && on;
        if (on) acc += c;
    }
    return acc;
}

MlPoly MlPoly::mod(const BigInt& m) const {
    MlPoly out;
    for (const auto& [mono, c] : terms_) {
        BigInt r = c % m;
        if (r < 0) r += m;
        if (r != 0) out.terms_.emplace_hint(out.terms_.end(), mono, std::move(r));
    }
    return out;
}

MlPoly operator+(const MlPoly& x, const MlPoly& y) {
    MlPoly out = x;
    for (const auto& [m, c] : y.terms_) out.add_term(m, c);
    return out;
}

MlPoly operator-(const MlPoly& x) {
    MlPoly out = x;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

MlPoly operator-(const MlPoly& x, const MlPoly& y) { return x + (-y); }

MlPoly operator*(const MlPoly& x, const MlPoly& y) {
    MlPoly out;
    for (const auto& [ma, ca] : x.terms_) {
        for (const auto& [mb, cb] : y.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

MlPoly operator*(const BigInt& c, const MlPoly& x) {
    if (c == 0) return {};
    MlPoly out = x;
    for (auto& [m, coeff] : out.terms_) coeff *= c;
    return out;
}

std::string MlPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        const BigInt magnitude = negative ? BigInt(-c) : c;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (m.is_constant()) {
            out << magnitude;
        } else {
            if (magnitude != 1) out << magnitude << '*';
            out << m.to_string("*");
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Enumeration and the coefficient/value transform

void for_each_point(std::span<const Var> vars, unsigned guard,
                    const std::function<void(std::uint64_t, const Assignment&)>& fn) {
    if (vars.size() > guard || vars.size() >= 63) {
        throw Error(ErrorCode::TooManyVars,
                    "enumeration over " + std::to_string(vars.size()) +
                        " variables exceeds the guard of " + std::to_string(guard));
    }
    const std::uint64_t count = std::uint64_t{1} << vars.size();
    for (std::uint64_t i = 0; i < count; ++i) fn(i, Assignment::from_index(vars, i));
}

std::vector<BigInt> values_of(const MlPoly& p, std::span<const Var> vars, unsigned guard) {
    std::vector<BigInt> out;
    for_each_point(vars, guard, [&](std::uint64_t, const Assignment& a) { out.push_back(p.eval(a)); });
    return out;
}

MlPoly mobius_from_values(std::span<const BigInt> values, std::span<const Var> vars, unsigned guard) {
    const auto n = vars.size();
    if (n > guard || n >= 63) {
        throw Error(ErrorCode::TooManyVars,
                    "Moebius transform over " + std::to_string(n) +
                        " variables exceeds the guard of " + std::to_string(guard));
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    if (values.size() != count) {
        throw std::invalid_argument("mobius_from_values: expected " + std::to_string(count) +
                                    " values, got " + std::to_string(values.size()));
    }
    std::vector<BigInt> coeff(values.begin(), values.end());
    for (std::uint64_t bit = 1; bit < count; bit <<= 1) {
        for (std::uint64_t s = 0; s < count; ++s) {
            if (s & bit) coeff[s] -= coeff[s ^ bit];
        }
    }
    MlPoly out;
    for (std::uint64_t s = 0; s < count; ++s) {
        if (coeff[s] == 0) continue;
        std::vector<Var> mono;
        for (std::size_t i = 0; i < n; ++i) {
            if ((s >> (n - 1 - i)) & 1U) mono.push_back(vars[i]);
        }
        out += MlPoly::term(coeff[s], Monomial(std::move(mono)));
    }
    return out;
}

std::vector<Var> union_vars(std::span<const std::vector<Var>> groups) {
    std::set<Var> vars;
    for (const auto& g : groups) vars.insert(g.begin(), g.end());
    return {vars.begin(), vars.end()};
}

std::string render_factored(const Anf& x) {
    const auto& monos = x.monomials();
    if (monos.size() < 2) return x.to_string();
    std::vector<Var> common(monos.begin()->vars().begin(), monos.begin()->vars().end());
    for (const auto& m : monos) {
        std::erase_if(common, [&](Var v) { return !m.contains(v); });
    }
    if (common.size() != 1) return x.to_string();
    const Var v = common.front();
    std::vector<Monomial> rest;
    for (const auto& m : monos) rest.push_back(m.without(v));
    return v.name() + "&(" + Anf::from_monomials(rest).to_string() + ")";
}

}  // namespace cnq
