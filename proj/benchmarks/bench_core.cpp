#include <benchmark/benchmark.h>

#include "clin/evaluate.hpp"
#include "clin/parser.hpp"
#include "clin/simplify.hpp"
#include "clin/system_lin.hpp"
#include "clin/transform_lab.hpp"
#include "clin/zero_test.hpp"

using namespace clin;

namespace {

const char* const kExample2A1 = "sin(y)*cos(y)/(sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(z)^2)";

SystemCoefficients example1() {
  return {parse("-2*y/(y^2+z^2)"), parse("2*z/(y^2+z^2)"), parse("-2/x"),
          parse("0"),              parse("-2*y/x^2"),      parse("-2*z/x^2")};
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kExample2A1));
}
BENCHMARK(BM_Parse);

void BM_DifferentiateTwice(benchmark::State& state) {
  const Expr e = parse(kExample2A1);
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(differentiate(e, "y"), "z"));
}
BENCHMARK(BM_DifferentiateTwice);

void BM_SimplifyRational(benchmark::State& state) {
  const Expr e = differentiate(differentiate(parse("-2*y/(y^2+z^2) + y/(x*(y^2+z^2))"), "y"), "z");
  for (auto _ : state) benchmark::DoNotOptimize(simplify(e));
}
BENCHMARK(BM_SimplifyRational);

void BM_EvaluateExample2(benchmark::State& state) {
  const Expr e = parse(kExample2A1);
  const Bindings b{{"x", 1.5}, {"y", 0.8}, {"z", 1.1}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(e, b));
}
BENCHMARK(BM_EvaluateExample2);

void BM_IsZeroNumeric(benchmark::State& state) {
  const Expr e = parse("sin(y)^2*cosh(z)^2 + cos(y)^2*sinh(z)^2 - sinh(z)^2 - sin(y)^2");
  const Domain dom = Domain::standard();
  for (auto _ : state) benchmark::DoNotOptimize(is_zero(e, dom));
}
BENCHMARK(BM_IsZeroNumeric);

void BM_CheckSystemExample1(benchmark::State& state) {
  const SystemCoefficients s = example1();
  const Domain dom = Domain::standard();
  for (auto _ : state) benchmark::DoNotOptimize(check_system(s, dom));
}
BENCHMARK(BM_CheckSystemExample1)->Unit(benchmark::kMillisecond);

void BM_Rk4Example1(benchmark::State& state) {
  const SystemCoefficients s = example1();
  for (auto _ : state) benchmark::DoNotOptimize(integrate(s, {1, 1, 0.5, 0.2, -0.1}, 2.0, 1e-3));
}
BENCHMARK(BM_Rk4Example1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
