#include <gtest/gtest.h>

#include <random>

#include "cnq/tools/random_circuit.hpp"
#include "support.hpp"

using namespace cnq;

namespace {

Error parse_error(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return Error(ErrorCode::Syntax, "");
}

}  // namespace

TEST(Gate, CanonicalPowers) {
    auto t = Var::intern("t");
    EXPECT_EQ(make_gate(2, -1, {}, t).p, 3);
    EXPECT_EQ(make_gate(4, -1, {}, t).p, 7);
    EXPECT_EQ(make_gate(1, 3, {}, t).p, 1);
    EXPECT_TRUE(make_gate(2, 2, {}, t).is_not_family());
    EXPECT_TRUE(make_gate(4, 12, {}, t).is_not_family());
    EXPECT_FALSE(make_gate(4, 2, {}, t).is_not_family());
    EXPECT_THROW(make_gate(3, 1, {}, t), Error);
    EXPECT_THROW(make_gate(2, 4, {}, t), Error);
    EXPECT_EQ(canonical_power(4, -10), 6);
}

TEST(Parse, Sugar) {
    auto c = parse_circuit(
        "line a\nline b\nline t target\n"
        "not a\ncnot a b\nccx a b t\nv a -> t\nv* a -> t\nw b -> t\nw* b -> t\nq k=8 p=-3 a b -> t\n");
    ASSERT_EQ(c.gates.size(), 8u);
    using KP = std::pair<std::int64_t, std::int64_t>;
    auto kp = [&](std::size_t i) { return KP{c.gates[i].k, c.gates[i].p}; };
    EXPECT_EQ(kp(0), (KP{1, 1}));
    EXPECT_TRUE(c.gates[0].controls.empty());
    EXPECT_EQ(c.gates[2].controls.size(), 2u);
    EXPECT_EQ(kp(3), (KP{2, 1}));
    EXPECT_EQ(kp(4), (KP{2, 3}));
    EXPECT_EQ(kp(5), (KP{4, 1}));
    EXPECT_EQ(kp(6), (KP{4, 7}));
    EXPECT_EQ(kp(7), (KP{8, 13}));
    EXPECT_EQ(c.lines[2].role, Role::Target);
}

TEST(Parse, FixturesLoad) {
    for (auto name : {"fig1.cnq", "fig2.cnq", "fig3.cnq", "fig4.cnq", "fig4_pre.cnq", "fig5.cnq", "fig6.cnq",
                      "broken.cnq", "fig2_bad_gate4.cnq", "interaction.cnq", "lonely_v.cnq"}) {
        SCOPED_TRACE(name);
        Circuit c = test::load(name);
        EXPECT_TRUE(validate(c).empty());
        EXPECT_EQ(parse_circuit(render_circuit(c)), c);
    }
    EXPECT_EQ(test::load("fig2.cnq").gates.size(), 10u);
    EXPECT_EQ(test::load("fig3.cnq").gates.size(), 9u);
    EXPECT_EQ(test::load("fig4.cnq").gates.size(), 8u);
    EXPECT_EQ(test::load("fig4_pre.cnq").gates.size(), 10u);
}

TEST(Parse, ErrorsWithPosition) {
    auto e = parse_error("line a\nline t target\ncnot a x\n");
    EXPECT_EQ(e.code(), ErrorCode::UndeclaredLine);
    EXPECT_EQ(e.where().line, 3);
    EXPECT_EQ(e.where().column, 8);

    EXPECT_EQ(parse_error("line a\nline a\n").code(), ErrorCode::DuplicateLine);
    EXPECT_EQ(parse_error("line a\nline t target\nv t -> t\n").code(), ErrorCode::SelfControl);
    EXPECT_EQ(parse_error("line a\nline t target\nccx a a t\n").code(), ErrorCode::DuplicateControl);

    e = parse_error("line a\nline t target\nq k=3 p=1 a -> t\n");
    EXPECT_EQ(e.code(), ErrorCode::BadK);
    EXPECT_EQ(e.where().column, 3);

    EXPECT_EQ(parse_error("line a\nline t target\nq k=2 p=4 a -> t\n").code(), ErrorCode::ZeroPower);
    EXPECT_EQ(parse_error("line a\nline t target\nq k=2 p=x a -> t\n").code(), ErrorCode::Syntax);
    EXPECT_EQ(parse_error("line a\nline t target\nv a t\n").code(), ErrorCode::Syntax);
    EXPECT_EQ(parse_error("line a\nline t target\nfrob a\n").code(), ErrorCode::Syntax);
    EXPECT_EQ(parse_error("# nothing\n").code(), ErrorCode::NoLines);
    EXPECT_EQ(parse_error("line a\nline t target\nspec a = t\n").code(), ErrorCode::SpecNotTarget);
    EXPECT_EQ(parse_error("line a\nline t target\nspec t = t ^ z\n").code(), ErrorCode::UndeclaredLine);

    e = parse_error("line a\nline t target\nspec t = t a\n");
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.where().column, 12);
}

TEST(Parse, CommentsAndBlankLines) {
    auto c = parse_circuit("# header\n\nline a   # first\r\nline t target\n  cnot a t  # x\n");
    EXPECT_EQ(c.lines.size(), 2u);
    EXPECT_EQ(c.gates.size(), 1u);
}

TEST(Render, PreferredSugar) {
    auto c = parse_circuit("line a\nline b\nline t target\nnot t\ncnot a t\nccx a b t\nv a -> t\nv* a -> t\n"
                           "w a -> t\nw* a b -> t\nq k=8 p=3 a -> t\nq k=2 p=2 a -> t\nv -> t\n");
    EXPECT_EQ(render_circuit(c),
              "line a\nline b\nline t target\nnot t\ncnot a t\nccx a b t\nv a -> t\nv* a -> t\n"
              "w a -> t\nw* a b -> t\nq k=8 p=3 a -> t\nq k=2 p=2 a -> t\nv -> t\n");
}

TEST(Render, RoundTripRandomCircuits) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 200; ++it) {
        Circuit c = tools::random_circuit(rng);
        ASSERT_EQ(parse_circuit(render_circuit(c)), c) << render_circuit(c);
    }
}

TEST(Validate, FlagsHandBuiltDefects) {
    Circuit c = test::load("fig1.cnq");
    c.gates.push_back(Gate{3, 1, {Var::intern("a")}, Var::intern("t")});
    c.gates.push_back(Gate{2, 1, {Var::intern("t")}, Var::intern("t")});
    c.gates.push_back(Gate{2, 1, {Var::intern("nowhere")}, Var::intern("t")});
    auto d = validate(c);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d[0].code, ErrorCode::BadK);
    EXPECT_EQ(d[0].gate_index, 2u);
    EXPECT_EQ(d[1].code, ErrorCode::SelfControl);
    EXPECT_EQ(d[2].code, ErrorCode::UndeclaredLine);
}

TEST(GateCount, Fig2) {
    auto n = gate_count(test::load("fig2.cnq"));
    EXPECT_EQ(n.total_controlled, 10);
    EXPECT_EQ(n.categories.at("CV"), 4);
    EXPECT_EQ(n.categories.at("CV*"), 2);
    EXPECT_EQ(n.categories.at("CNOT"), 4);
    EXPECT_EQ(n.on_target, 6);
    EXPECT_EQ(n.on_control_lines, 4);
}

TEST(GateCount, Fig6) {
    auto n = gate_count(test::load("fig6.cnq"));
    EXPECT_EQ(n.total_controlled, 10);
    EXPECT_EQ(n.on_target, 8);
    EXPECT_EQ(n.on_control_lines, 2);
    EXPECT_EQ(n.categories.at("CW*"), 2);
    EXPECT_EQ(n.categories.at("CW"), 1);
    EXPECT_EQ(n.categories.at("CQ(k=4,p=6)"), 2);
}

TEST(GateCount, Uncontrolled) {
    auto n = gate_count(parse_circuit("line t target\nnot t\nv -> t\nq k=8 p=5 -> t\n"));
    EXPECT_EQ(n.total_controlled, 0);
    EXPECT_EQ(n.uncontrolled, 3);
    EXPECT_EQ(n.categories.at("NOT"), 1);
    EXPECT_EQ(n.categories.at("V"), 1);
    EXPECT_EQ(n.categories.at("Q(k=8,p=5)"), 1);
}
