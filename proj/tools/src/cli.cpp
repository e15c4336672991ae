#include "koopcrypt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "koopcrypt/koopcrypt.hpp"

namespace koopcrypt::cli {

nlohmann::json ExperimentReport::to_json() const {
  return {{"command", command},
          {"inputs", inputs},
          {"outputs", outputs},
          {"timing_ms", timing_ms},
          {"artifact_version", artifact_version}};
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void emit(std::ostream& out, const ExperimentReport& report) { out << report.to_json().dump(2) << '\n'; }

ExperimentReport make_report(std::string command) {
  ExperimentReport r;
  r.command = std::move(command);
  r.artifact_version = kVersion;
  return r;
}

void require_unit(std::uint64_t m, std::uint64_t p, const char* what) {
  if (m < 1 || m >= p || std::gcd(m, p) != 1) {
    throw DomainError(std::string(what) + " = " + std::to_string(m) + " is not a unit in [1, " +
                      std::to_string(p - 1) + "]");
  }
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

struct SimulateArgs {
  std::uint64_t p = 0, m = 0, x0 = 1;
  std::optional<std::size_t> steps;
  std::string format = "text";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const Modulus modulus(a.p);
  require_unit(a.m, a.p, "m");
  require_unit(a.x0 % a.p, a.p, "x0");
  const std::size_t steps = a.steps.value_or(modulus.carmichael());
  const Trajectory traj = simulate(a.m, a.p, a.x0, steps);
  if (a.format == "text") {
    write_trajectory_text(out, traj);
  } else if (a.format == "csv") {
    write_csv_row(out, {"k", "x"});
    for (std::size_t k = 0; k < traj.size(); ++k) write_csv_row(out, {std::to_string(k), std::to_string(traj.at(k))});
  } else {
    ExperimentReport r = make_report("simulate");
    r.inputs = {{"p", a.p}, {"m", a.m}, {"x0", a.x0}, {"steps", steps}};
    r.outputs = {{"trajectory", to_json(traj)}};
    r.timing_ms = elapsed_ms(start);
    emit(out, r);
  }
  return kSuccess;
}

struct RecoverArgs {
  std::string scheme = "dh";
  std::uint64_t p = 0, m = 0, c = 0;
  std::uint64_t p1 = 0, p2 = 0, e = 0;
};

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  ExperimentReport r = make_report("recover");
  RecoveryResult result;
  if (a.scheme == "dh") {
    if (a.p == 0 || a.m == 0 || a.c == 0) throw DomainError("recover --scheme dh needs --p, --m and --c");
    if (!is_prime(a.p) || a.p < 3) throw DomainError("p = " + std::to_string(a.p) + " is not an odd prime");
    require_unit(a.m, a.p, "m");
    require_unit(a.c, a.p, "c");
    r.inputs = {{"scheme", "dh"}, {"p", a.p}, {"m", a.m}, {"c", a.c}};
    result = recover_exponent(a.p, a.m, a.c);
  } else {
    if (a.p1 == 0 || a.p2 == 0 || a.e == 0) throw DomainError("recover --scheme rsa needs --p1, --p2 and --e");
    r.inputs = {{"scheme", "rsa"}, {"p1", a.p1}, {"p2", a.p2}, {"e", a.e}};
    result = recover_rsa_key(a.p1, a.p2, a.e);
  }
  r.outputs = to_json(result);
  r.timing_ms = elapsed_ms(start);
  emit(out, r);
  return kSuccess;
}

struct BenchArgs {
  std::vector<std::string> primes;
  std::string range;
  std::string sample = "all";
  std::size_t repetitions = 1;
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> guard;
  std::string out;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw ParseError(std::string(what) + ": '" + s + "' is not a nonnegative integer");
  }
  return v;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions o;
  for (const auto& item : a.primes) {
    std::stringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty()) o.primes.push_back(parse_u64(tok, "--primes"));
  }
  if (!a.range.empty()) {
    const auto colon = a.range.find(':');
    if (colon == std::string::npos) throw ParseError("--range expects LO:HI");
    const auto lo = parse_u64(a.range.substr(0, colon), "--range");
    const auto hi = parse_u64(a.range.substr(colon + 1), "--range");
    for (auto p : primes_in(lo, hi)) o.primes.push_back(p);
  }
  if (o.primes.empty()) throw ParseError("bench needs --primes or --range");
  if (a.sample != "all") o.sample = parse_u64(a.sample, "--sample");
  o.repetitions = a.repetitions;
  o.threads = a.threads;
  o.seed = a.seed;
  o.guard = resolve_guard(a.guard);

  const auto rows = run_bench(o);
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw ParseError("cannot write '" + a.out + "'");
  }
  std::ostream& sink = a.out.empty() ? out : file;
  write_csv_row(sink, {"prime", "generators", "runs", "worst_s", "average_s"});
  for (const auto& row : rows) {
    std::ostringstream worst, avg;
    worst.precision(6);
    avg.precision(6);
    worst << std::fixed << row.worst_seconds;
    avg << std::fixed << row.average_seconds;
    write_csv_row(sink, {std::to_string(row.prime), std::to_string(row.generators), std::to_string(row.runs),
                         worst.str(), avg.str()});
  }
  return kSuccess;
}

struct AnalyzeArgs {
  std::string mode;
  std::uint64_t p = 0, m = 0;
  std::optional<std::size_t> q;
  std::optional<std::size_t> q_max;
  std::string seq;
  std::string format;
};

Trajectory period_trajectory(std::uint64_t p, std::uint64_t m, std::size_t periods = 1) {
  const Modulus modulus(p);
  require_unit(m, p, "m");
  return simulate(m, p, 1, periods * period_length(m, p));
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  ExperimentReport r = make_report("analyze");
  r.inputs["mode"] = a.mode;
  const std::string format = a.format.empty() ? (a.mode == "lincomp" ? "csv" : "json") : a.format;

  if (a.mode == "dimension") {
    const Trajectory traj = period_trajectory(a.p, a.m);
    const std::size_t zeta = *traj.period();
    const std::size_t last = a.q_max.value_or(zeta > 0 ? zeta - 1 : 0);
    r.inputs.update({{"p", a.p}, {"m", a.m}, {"q_max", last}});
    auto table = nlohmann::json::array();
    std::optional<std::size_t> minimal;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t q = 0; q <= last; ++q) {
      const DimensionCheck dc = check_dimension(a.p, a.m, q);
      if (dc.feasible && !minimal) minimal = q;
      nlohmann::json row = to_json(dc);
      row["q"] = q;
      table.push_back(std::move(row));
      std::string alpha;
      for (std::size_t j = 0; j < dc.alpha.size(); ++j) alpha += (j ? " " : "") + to_string(dc.alpha[j]);
      rows.push_back({std::to_string(q), dc.feasible ? "feasible" : "infeasible", std::to_string(dc.rank_a),
                      std::to_string(dc.rank_augmented), alpha});
    }
    if (format == "csv") {
      write_csv_row(out, {"q", "status", "rank_a", "rank_augmented", "alpha"});
      for (const auto& row : rows) write_csv_row(out, row);
      return kSuccess;
    }
    r.outputs = {{"table", table}};
    r.outputs["minimal_q"] = minimal ? nlohmann::json(*minimal) : nlohmann::json(nullptr);
  } else if (a.mode == "edmd") {
    const Trajectory traj = period_trajectory(a.p, a.m);
    r.inputs.update({{"p", a.p}, {"m", a.m}});
    if (a.q) {
      r.inputs["q"] = *a.q;
      const HankelData hd = build_hankel(traj, *a.q);
      r.outputs = {{"q", *a.q}, {"rank_z", rank_exact(hd.z)}, {"system", to_json(edmd_fit(hd))}};
    } else {
      const MinimalDimension md = minimal_dimension(traj);
      r.outputs = to_json(md);
    }
  } else if (a.mode == "lincomp") {
    std::vector<Integer> seq;
    std::string id;
    if (!a.seq.empty()) {
      seq = read_sequence_file(a.seq);
      id = std::filesystem::path(a.seq).stem().string();
      r.inputs["seq"] = id;
    } else {
      // Two periods give the held-out test in berlekamp_massey enough samples.
      const Trajectory traj = period_trajectory(a.p, a.m, 2);
      for (std::uint64_t v : traj.values()) seq.emplace_back(static_cast<unsigned long>(v));
      id = "p" + std::to_string(a.p) + "_m" + std::to_string(a.m);
      r.inputs.update({{"p", a.p}, {"m", a.m}});
    }
    if (seq.empty()) throw ParseError("sequence is empty");
    const ComplexityReport rep = compare_complexity(seq);
    if (format == "csv") {
      write_csv_row(out, kComplexityCsvHeader);
      write_csv_row(out, csv_row(id, rep));
      return kSuccess;
    }
    r.outputs = to_json(rep);
    r.outputs["id"] = id;
  } else {
    throw ParseError("unknown mode '" + a.mode + "'");
  }
  r.timing_ms = elapsed_ms(start);
  emit(out, r);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koopman linear representations of modular-exponentiation cryptosystems", "koopcrypt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Print the trajectory x_{k+1} = m x_k mod p");
  s->add_option("--p", sim.p, "Modulus")->required();
  s->add_option("--m", sim.m, "Multiplier")->required();
  s->add_option("--steps", sim.steps, "Number of steps (default: Carmichael lambda(p))");
  s->add_option("--x0", sim.x0, "Initial state")->capture_default_str();
  s->add_option("--format", sim.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  RecoverArgs rec;
  auto* r = app.add_subcommand("recover", "Recover a DH exponent or an RSA secret key");
  r->add_option("--scheme", rec.scheme, "dh or rsa")->check(CLI::IsMember({"dh", "rsa"}))->capture_default_str();
  r->add_option("--p", rec.p, "DH prime");
  r->add_option("--m", rec.m, "DH generator");
  r->add_option("--c", rec.c, "DH ciphertext m^e mod p");
  r->add_option("--p1", rec.p1, "RSA prime");
  r->add_option("--p2", rec.p2, "RSA prime");
  r->add_option("--e", rec.e, "RSA public exponent");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time exponent recovery over the generators of each prime");
  b->add_option("--primes", bench.primes, "Primes, comma separated or repeated");
  b->add_option("--range", bench.range, "All primes in LO:HI");
  b->add_option("--sample", bench.sample, "Generators per prime: all or a count")->capture_default_str();
  b->add_option("--repetitions", bench.repetitions, "Timed runs per cell")->capture_default_str()
      ->check(CLI::PositiveNumber);
  b->add_option("--threads", bench.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "Seed for exponents and sampling")->capture_default_str();
  b->add_option("--guard", bench.guard, "Largest admissible prime (env KOOPCRYPT_GUARD, default 100000)");
  b->add_option("--out", bench.out, "CSV output path (default stdout)");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Lifting-dimension, EDMD and linear-complexity analyses");
  a->add_option("--mode", an.mode, "dimension, edmd or lincomp")
      ->required()
      ->check(CLI::IsMember({"dimension", "edmd", "lincomp"}));
  a->add_option("--p", an.p, "Modulus");
  a->add_option("--m", an.m, "Multiplier");
  a->add_option("--q", an.q, "Fixed lifting dimension (edmd)");
  a->add_option("--q-max", an.q_max, "Largest q in the dimension table");
  a->add_option("--seq", an.seq, "Sequence file, one integer per line (lincomp)");
  a->add_option("--format", an.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> storage{"koopcrypt"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& x : storage) argv.push_back(x.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*s) return cmd_simulate(sim, out);
    if (*r) return cmd_recover(rec, out);
    if (*b) return cmd_bench(bench, out);
    if (an.mode != "lincomp" || an.seq.empty()) {
      if (an.p == 0 || an.m == 0) throw ParseError("analyze --mode " + an.mode + " needs --p and --m");
    }
    return cmd_analyze(an, out);
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuardExceeded;
  } catch (const RecoveryFailure& e) {
    err << "recovery failed: " << e.what() << '\n';
    return kRecoveryFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace koopcrypt::cli
