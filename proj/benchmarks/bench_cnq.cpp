#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "cnq/cnq.hpp"

namespace {

// n-control Toffoli cascade realised with V gates, one target per cascade step.
cnq::Circuit v_cascade(int controls) {
    std::string text;
    for (int i = 0; i < controls; ++i) text += "line x" + std::to_string(i) + "\n";
    text += "line t target\n";
    for (int i = 0; i + 1 < controls; ++i) {
        const auto a = "x" + std::to_string(i), b = "x" + std::to_string(i + 1);
        text += "v " + a + " -> t\nv " + b + " -> t\ncnot " + a + " " + b + "\nv* " + b + " -> t\ncnot " + a + " " +
                b + "\n";
    }
    return cnq::parse_circuit(text);
}

void BM_Evaluate(benchmark::State& state) {
    const auto c = v_cascade(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cnq::evaluate(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_MergePass(benchmark::State& state) {
    const auto c = v_cascade(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cnq::merge_pass(c));
}
BENCHMARK(BM_MergePass)->RangeMultiplier(2)->Range(2, 32);

void BM_CrossCheck(benchmark::State& state) {
    const auto c = v_cascade(static_cast<int>(state.range(0)));
    const auto report = cnq::evaluate(c);
    for (auto _ : state) benchmark::DoNotOptimize(cnq::cross_check(c, report));
}
BENCHMARK(BM_CrossCheck)->DenseRange(2, 8, 2);

void BM_Mobius(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<cnq::Var> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(cnq::Var::intern("m" + std::to_string(i)));
    std::mt19937_64 rng(5);
    std::vector<cnq::BigInt> values(std::size_t{1} << n);
    for (auto& v : values) v = static_cast<long long>(rng() % 16);
    for (auto _ : state) benchmark::DoNotOptimize(cnq::mobius_from_values(values, vars));
    state.SetComplexityN(static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_Mobius)->DenseRange(4, 16, 4)->Complexity();

void BM_ToArith(benchmark::State& state) {
    std::string text = "t";
    for (int i = 0; i + 1 < state.range(0); ++i) text += " ^ x" + std::to_string(i) + "&x" + std::to_string(i + 1);
    const auto f = cnq::Anf::parse(text);
    for (auto _ : state) benchmark::DoNotOptimize(f.to_arith());
}
BENCHMARK(BM_ToArith)->DenseRange(2, 10, 2);

}  // namespace

BENCHMARK_MAIN();
