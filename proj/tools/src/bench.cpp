#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "koopcrypt/cli.hpp"
#include "koopcrypt/errors.hpp"
#include "koopcrypt/numtheory.hpp"
#include "koopcrypt/spectral.hpp"

namespace koopcrypt::cli {

std::uint64_t resolve_guard(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("KOOPCRYPT_GUARD"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::char_traits<char>::length(env)) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("KOOPCRYPT_GUARD='") + env + "' is not a nonnegative integer");
  }
  return kDefaultGuard;
}

namespace {

struct Cell {
  std::uint64_t generator;
  std::uint64_t exponent;
};

BenchRow bench_prime(std::uint64_t p, const BenchOptions& o, std::mt19937_64& rng) {
  std::vector<std::uint64_t> generators;
  for (std::uint64_t m = 1; m < p; ++m)
    if (is_primitive_root(m, p)) generators.push_back(m);
  if (o.sample && *o.sample < generators.size()) {
    std::vector<std::uint64_t> picked;
    std::sample(generators.begin(), generators.end(), std::back_inserter(picked), *o.sample, rng);
    generators = std::move(picked);
  }
  std::vector<Cell> cells;
  std::uniform_int_distribution<std::uint64_t> pick(1, std::max<std::uint64_t>(1, p - 2));
  for (std::uint64_t m : generators) cells.push_back({m, pick(rng)});

  std::vector<double> seconds(cells.size() * o.repetitions);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::string> failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < seconds.size();) {
      const Cell& c = cells[i / o.repetitions];
      const std::uint64_t ciphertext = mod_pow(c.generator, c.exponent, p);
      const auto start = std::chrono::steady_clock::now();
      std::uint64_t got = 0;
      try {
        got = recover_exponent(p, c.generator, ciphertext).exponent;
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        failure = e.what();
        return;
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (got != c.exponent % (p - 1)) {
        std::lock_guard lock(failure_mutex);
        failure = "p=" + std::to_string(p) + " m=" + std::to_string(c.generator) + ": recovered " +
                  std::to_string(got) + ", expected " + std::to_string(c.exponent);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(1, o.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) throw RecoveryFailure(*failure);

  BenchRow row{p, generators.size(), seconds.size(), 0, 0};
  if (!seconds.empty()) {
    row.worst_seconds = *std::max_element(seconds.begin(), seconds.end());
    double total = 0;
    for (double s : seconds) total += s;
    row.average_seconds = total / static_cast<double>(seconds.size());
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.repetitions == 0) throw DomainError("bench: repetitions must be positive");
  for (std::uint64_t p : options.primes) {
    if (p > options.guard) {
      throw GuardExceeded("bench: p = " + std::to_string(p) + " exceeds the memory guard " +
                          std::to_string(options.guard));
    }
    if (p < 3 || !is_prime(p)) throw DomainError("bench: " + std::to_string(p) + " is not an odd prime");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<BenchRow> rows;
  for (std::uint64_t p : options.primes) rows.push_back(bench_prime(p, options, rng));
  return rows;
}

}  // namespace koopcrypt::cli
