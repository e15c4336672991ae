#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace koopcrypt::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kRecoveryFailure = 3,
  kGuardExceeded = 4,
};

inline constexpr std::uint64_t kDefaultGuard = 100'000;

struct ExperimentReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  double timing_ms = 0;
  std::string artifact_version;

  nlohmann::json to_json() const;
};

struct BenchOptions {
  std::vector<std::uint64_t> primes;
  std::optional<std::size_t> sample;  // empty: every generator
  std::size_t repetitions = 1;
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t guard = kDefaultGuard;
};

struct BenchRow {
  std::uint64_t prime = 0;
  std::size_t generators = 0;
  std::size_t runs = 0;
  double worst_seconds = 0;
  double average_seconds = 0;
};

/// Thrown when a prime exceeds the guard; maps to exit code 4.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One row per prime: wall-clock of recover_exponent per (generator, random
/// exponent) cell, worst case and mean. Throws GuardExceeded, DomainError and
/// RecoveryFailure (wrong exponent).
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Guard in effect: explicit flag, else KOOPCRYPT_GUARD, else the default.
std::uint64_t resolve_guard(std::optional<std::uint64_t> flag);

/// Entry point shared by main() and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koopcrypt::cli
