#include "koopcrypt/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "koopcrypt/errors.hpp"

namespace koopcrypt {

namespace {

std::string_view strip(std::string_view s) {
  const auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

std::vector<Integer> parse_sequence(std::istream& in) {
  std::vector<Integer> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view token = strip(line);
    if (token.empty()) continue;
    Integer v;
    const std::string text(token);
    const bool digits = text.find_first_not_of("0123456789", text[0] == '-' || text[0] == '+' ? 1 : 0) ==
                            std::string::npos &&
                        text.size() > (text[0] == '-' || text[0] == '+' ? 1U : 0U);
    if (!digits || v.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0) {
      throw ParseError("line " + std::to_string(number) + ": '" + text + "' is not an integer");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Integer> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sequence file '" + path + "'");
  return parse_sequence(in);
}

void write_trajectory_text(std::ostream& out, const Trajectory& traj) {
  for (std::uint64_t v : traj.values()) out << v << '\n';
}

Trajectory read_trajectory_text(std::istream& in, std::uint64_t multiplier, std::uint64_t modulus) {
  const auto seq = parse_sequence(in);
  if (seq.empty()) throw ParseError("trajectory file is empty");
  std::vector<std::uint64_t> values;
  values.reserve(seq.size());
  for (const auto& v : seq) {
    if (sgn(v) < 0 || !v.fits_ulong_p() || v >= Integer(static_cast<unsigned long>(modulus))) {
      throw ParseError("trajectory value " + v.get_str() + " is not a residue modulo " + std::to_string(modulus));
    }
    values.push_back(v.get_ui());
  }
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (mod_mul(values[k], multiplier, modulus) != values[k + 1]) {
      throw ParseError("trajectory breaks the recurrence at index " + std::to_string(k + 1));
    }
  }
  return {std::move(values), multiplier % modulus, modulus, period_length(multiplier, modulus)};
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << "\r\n";
}

void write_matrix_csv(std::ostream& out, const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (const auto& v : m.row(i)) row.push_back(to_string(v));
    write_csv_row(out, row);
  }
}

void write_matrix_csv(std::ostream& out, const IntegerMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (const auto& v : m.row(i)) row.push_back(v.get_str());
    write_csv_row(out, row);
  }
}

nlohmann::json to_json(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
  return to_string(c);
}

nlohmann::json to_json(const std::vector<Rational>& v) {
  auto out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

nlohmann::json to_json(const Trajectory& traj) {
  nlohmann::json j{{"multiplier", traj.multiplier()},
                   {"modulus", traj.modulus()},
                   {"values", std::vector<std::uint64_t>(traj.values().begin(), traj.values().end())}};
  j["period"] = traj.period() ? nlohmann::json(*traj.period()) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const UnitCircleLift& z) {
  auto angles = nlohmann::json::array();
  for (std::uint64_t n : z.numerators()) angles.push_back({n, z.modulus()});
  return {{"kind", "unit_circle"}, {"multiplier", z.multiplier()}, {"modulus", z.modulus()}, {"q", z.q()},
          {"angles", angles}};
}

nlohmann::json to_json(const ValueListLift& z) {
  return {{"kind", "value_list"},
          {"q", z.q()},
          {"components", std::vector<std::uint64_t>(z.components().begin(), z.components().end())}};
}

nlohmann::json to_json(const CompanionSystem& cs) {
  nlohmann::json j{{"scheme", to_string(cs.scheme)}, {"q", cs.q()}, {"alpha", to_json(cs.alpha)}};
  if (cs.context) {
    j["modulus"] = cs.context->modulus;
    if (cs.context->multiplier != 0) j["multiplier"] = cs.context->multiplier;
  }
  return j;
}

nlohmann::json to_json(const DimensionCheck& dc) {
  nlohmann::json j{{"feasible", dc.feasible},
                   {"rank_a", dc.rank_a},
                   {"rank_augmented", dc.rank_augmented},
                   {"equations", dc.equations}};
  j["alpha"] = dc.feasible ? to_json(dc.alpha) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const EigenSystem& es) {
  auto values = nlohmann::json::array();
  for (std::size_t j = 0; j < es.dimension(); ++j) {
    nlohmann::json e{{"value", complex_json(es.eigenvalues[j])}};
    if (es.analytic()) e["turn"] = to_string(es.turns[j]);
    values.push_back(std::move(e));
  }
  nlohmann::json j{{"analytic", es.analytic()}, {"eigenvalues", values}};
  j["minus_one_index"] = es.minus_one_index ? nlohmann::json(*es.minus_one_index) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const RecoveryResult& r) {
  auto diag = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    if (!d.used) continue;
    nlohmann::json e{{"index", d.index}, {"eigenvalue", complex_json(d.eigenvalue)}, {"ratio", complex_json(d.ratio)},
                     {"candidates", d.candidates}};
    if (d.turn) e["turn"] = to_string(*d.turn);
    if (d.residue) e["residue"] = *d.residue;
    if (d.modulus) e["modulus"] = *d.modulus;
    diag.push_back(std::move(e));
  }
  nlohmann::json j{{"exponent", r.exponent},
                   {"residue_class_modulus", r.residue_class_modulus},
                   {"parity", to_string(r.parity)},
                   {"dimension", r.dimension},
                   {"scheme", to_string(r.scheme)},
                   {"verified", r.verified},
                   {"diagnostics", diag}};
  if (r.verified_key) j["verified_key"] = *r.verified_key;
  if (!r.probes.empty()) j["probes"] = r.probes;
  return j;
}

nlohmann::json to_json(const MinimalDimension& md) {
  return {{"q", md.q}, {"rank", md.rank}, {"system", to_json(md.system)}};
}

nlohmann::json to_json(const Lfsr& l) {
  return {{"length", l.length()}, {"coefficients", to_json(l.coefficients)}, {"seed", to_json(l.seed)}};
}

nlohmann::json to_json(const ReducedModel& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters()) params[k] = v;
  return {{"family", to_string(r.family)}, {"state_dimension", r.state_dimension}, {"parameters", params}};
}

nlohmann::json to_json(const ComplexityReport& r) {
  auto fits = nlohmann::json::array();
  for (const auto& f : r.fits) fits.push_back(to_json(f));
  nlohmann::json j{{"length", r.length}, {"fits", fits}};
  j["lfsr_length"] = r.lfsr_length ? nlohmann::json(*r.lfsr_length) : nlohmann::json(nullptr);
  j["best"] = r.best ? to_json(*r.best) : nlohmann::json(nullptr);
  return j;
}

}  // namespace koopcrypt
