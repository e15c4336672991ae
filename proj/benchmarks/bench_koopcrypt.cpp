#include <benchmark/benchmark.h>

#include <complex>

#include <koopcrypt/koopcrypt.hpp>

using namespace koopcrypt;

namespace {

std::uint64_t first_generator(std::uint64_t p) {
  for (std::uint64_t m = 2; m < p; ++m)
    if (is_primitive_root(m, p)) return m;
  return 1;
}

void BM_ModPow(benchmark::State& state) {
  const std::uint64_t p = 0xFFFF'FFFF'FFFF'FFC5ULL;  // largest 64-bit prime
  std::uint64_t e = 0x1234'5678'9ABC'DEF0ULL;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mod_pow(3, e, p));
    ++e;
  }
}
BENCHMARK(BM_ModPow);

void BM_RecoverExponent(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const std::uint64_t m = first_generator(p);
  const std::uint64_t c = mod_pow(m, p / 3, p);
  for (auto _ : state) benchmark::DoNotOptimize(recover_exponent(p, m, c).exponent);
}
BENCHMARK(BM_RecoverExponent)->Arg(97)->Arg(997)->Arg(9973)->Unit(benchmark::kMillisecond);

void BM_CheckDimension(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const std::uint64_t m = first_generator(p);
  for (auto _ : state) benchmark::DoNotOptimize(check_dimension(p, m, (p - 1) / 2).feasible);
}
BENCHMARK(BM_CheckDimension)->Arg(97)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_TransformCoordinates(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto es = eigensystem(dh_companion(p));
  const auto z = lift_value_list(simulate(first_generator(p), p, 1, p - 1), 0, es.dimension() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(transform_coordinates(es, z));
}
BENCHMARK(BM_TransformCoordinates)->Arg(97)->Arg(997)->Arg(9973);

void BM_EdmdFit(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto traj = simulate(first_generator(p), p, 1, p - 1);
  const auto hd = build_hankel(traj, (p - 1) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(edmd_fit(hd).alpha.size());
}
BENCHMARK(BM_EdmdFit)->Arg(23)->Arg(47)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
