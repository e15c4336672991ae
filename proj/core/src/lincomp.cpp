#include "koopcrypt/lincomp.hpp"

#include <algorithm>

#include "koopcrypt/errors.hpp"

namespace koopcrypt {

namespace {

struct BmState {
  std::vector<Rational> connection;  // C(x) = 1 + C_1 x + ... ; x_k = -sum C_i x_{k-i}
  std::size_t length = 0;
};

BmState massey(std::span<const Rational> s) {
  std::vector<Rational> c{Rational(1)}, b{Rational(1)};
  std::size_t length = 0, shift = 1;
  Rational last = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= length && i < c.size(); ++i) d += c[i] * s[n - i];
    if (sgn(d) == 0) {
      ++shift;
      continue;
    }
    const Rational f = d / last;
    std::vector<Rational> t = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= f * b[i];
    if (2 * length <= n) {
      length = n + 1 - length;
      b = std::move(t);
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  c.resize(length + 1, Rational(0));
  return {std::move(c), length};
}

Lfsr to_lfsr(const BmState& st, std::span<const Rational> s) {
  Lfsr l;
  for (std::size_t i = 1; i <= st.length; ++i) l.coefficients.push_back(-st.connection[i]);
  l.seed.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(st.length, s.size())));
  return l;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Integer step(const ReducedModel& r, const Integer& x) {
  switch (r.family) {
    case Family::root_of_unity: {
      Integer y = x + r.a;
      mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), r.modulus.get_mpz_t());
      return y;
    }
    case Family::exponential: return x + r.a;
    case Family::log_affine: return r.m * ipow(x, r.b);
    case Family::affine_augmented: return r.m * x + r.a;
  }
  return x;
}

// Replays step by step and stops at the first mismatch.
bool reproduces(const ReducedModel& r, std::span<const Integer> s) {
  if (s.empty() || r.x0 != s[0]) return false;
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    if (step(r, s[k]) != s[k + 1]) return false;
  return true;
}

std::optional<ReducedModel> fit_root_of_unity(std::span<const Integer> s) {
  if (s.size() < 3) return std::nullopt;
  std::optional<Integer> a, wrap;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const Integer d = s[k + 1] - s[k];
    if (sgn(d) > 0) {
      if (a && *a != d) return std::nullopt;
      a = d;
    } else {
      if (wrap && *wrap != d) return std::nullopt;
      wrap = d;
    }
  }
  if (!a || !wrap) return std::nullopt;
  ReducedModel r;
  r.family = Family::root_of_unity;
  r.state_dimension = 1;
  r.x0 = s[0];
  r.a = *a;
  r.modulus = *a - *wrap;
  for (const auto& v : s)
    if (sgn(v) < 0 || v >= r.modulus) return std::nullopt;
  return r;
}

std::optional<ReducedModel> fit_exponential(std::span<const Integer> s) {
  if (s.size() < 2) return std::nullopt;
  ReducedModel r;
  r.family = Family::exponential;
  r.state_dimension = 1;
  r.x0 = s[0];
  r.a = s[1] - s[0];
  return r;
}

std::optional<ReducedModel> fit_log_affine(std::span<const Integer> s) {
  if (s.size() < 3) return std::nullopt;
  if (std::any_of(s.begin(), s.end(), [](const Integer& v) { return sgn(v) <= 0; })) return std::nullopt;
  for (unsigned long b = 1; b <= 64; ++b) {
    const Integer base = ipow(s[0], b);
    if (base > s[1]) break;
    if (!mpz_divisible_p(s[1].get_mpz_t(), base.get_mpz_t())) continue;
    ReducedModel r;
    r.family = Family::log_affine;
    r.x0 = s[0];
    r.b = b;
    r.m = s[1] / base;
    r.state_dimension = r.m == 1 ? 1 : 2;
    if (reproduces(r, s)) return r;
  }
  return std::nullopt;
}

std::optional<ReducedModel> fit_affine(std::span<const Integer> s) {
  if (s.size() < 3) return std::nullopt;
  const Integer d0 = s[1] - s[0];
  const Integer d1 = s[2] - s[1];
  ReducedModel r;
  r.family = Family::affine_augmented;
  r.state_dimension = 2;
  r.x0 = s[0];
  if (sgn(d0) == 0) {
    if (sgn(d1) != 0) return std::nullopt;
    r.m = 1;
  } else {
    if (!mpz_divisible_p(d1.get_mpz_t(), d0.get_mpz_t())) return std::nullopt;
    r.m = d1 / d0;
  }
  r.a = s[1] - r.m * s[0];
  return r;
}

}  // namespace

std::vector<Rational> Lfsr::generate(std::size_t count) const {
  std::vector<Rational> out(seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(std::min(count, seed.size())));
  while (out.size() < count) {
    Rational next = 0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) next += coefficients[i] * out[out.size() - 1 - i];
    out.push_back(next);
  }
  return out;
}

Lfsr shortest_lfsr(std::span<const Rational> seq) { return to_lfsr(massey(seq), seq); }

std::optional<Lfsr> berlekamp_massey(std::span<const Rational> seq) {
  if (seq.empty()) throw DomainError("berlekamp_massey: empty sequence");
  const BmState full = massey(seq);
  if (2 * full.length < seq.size()) return to_lfsr(full, seq);
  if (seq.size() < 2) return std::nullopt;
  const auto prefix = seq.first(seq.size() - 1);
  const Lfsr held = to_lfsr(massey(prefix), prefix);
  if (held.generate(seq.size()).back() != seq.back()) return std::nullopt;
  return to_lfsr(full, seq);
}

std::vector<Rational> to_rationals(std::span<const Integer> seq) {
  std::vector<Rational> out;
  out.reserve(seq.size());
  for (const auto& v : seq) out.emplace_back(v);
  return out;
}

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::root_of_unity: return "root_of_unity";
    case Family::exponential: return "exponential";
    case Family::log_affine: return "log_affine";
    case Family::affine_augmented: return "affine_augmented";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> ReducedModel::parameters() const {
  switch (family) {
    case Family::root_of_unity:
      return {{"x0", x0.get_str()}, {"a", a.get_str()}, {"n", modulus.get_str()}};
    case Family::exponential:
      return {{"x0", x0.get_str()}, {"a", a.get_str()}};
    case Family::log_affine:
      return {{"x0", x0.get_str()}, {"m", m.get_str()}, {"b", std::to_string(b)}};
    case Family::affine_augmented:
      return {{"x0", x0.get_str()}, {"m", m.get_str()}, {"a", a.get_str()}};
  }
  return {};
}

std::vector<Integer> ReducedModel::replay(std::size_t count) const {
  std::vector<Integer> out;
  out.reserve(count);
  Integer x = x0;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(x);
    if (k + 1 < count) x = step(*this, x);
  }
  return out;
}

std::optional<ReducedModel> fit_reduced(std::span<const Integer> seq, Family family) {
  std::optional<ReducedModel> r;
  switch (family) {
    case Family::root_of_unity: r = fit_root_of_unity(seq); break;
    case Family::exponential: r = fit_exponential(seq); break;
    case Family::log_affine: r = fit_log_affine(seq); break;
    case Family::affine_augmented: r = fit_affine(seq); break;
  }
  if (!r) return std::nullopt;
  if (reproduces(*r, seq)) return r;
  return std::nullopt;
}

ComplexityReport compare_complexity(std::span<const Integer> seq) {
  ComplexityReport rep;
  rep.length = seq.size();
  if (!seq.empty()) {
    const auto q = to_rationals(seq);
    if (auto l = berlekamp_massey(q)) rep.lfsr_length = l->length();
  }
  for (Family f : kFamilies) {
    if (auto r = fit_reduced(seq, f)) {
      if (!rep.best || r->state_dimension < rep.best->state_dimension) rep.best = *r;
      rep.fits.push_back(std::move(*r));
    }
  }
  return rep;
}

std::vector<std::string> csv_row(const std::string& id, const ComplexityReport& report) {
  return {id, std::to_string(report.length), report.lfsr_length ? std::to_string(*report.lfsr_length) : "",
          report.best ? to_string(report.best->family) : "",
          report.best ? std::to_string(report.best->state_dimension) : ""};
}

}  // namespace koopcrypt
