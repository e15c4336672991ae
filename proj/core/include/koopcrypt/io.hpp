#pragma once

// Text, CSV and JSON encodings of library values.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "koopcrypt/dynsys.hpp"
#include "koopcrypt/edmd.hpp"
#include "koopcrypt/exact.hpp"
#include "koopcrypt/lifting.hpp"
#include "koopcrypt/lincomp.hpp"
#include "koopcrypt/spectral.hpp"

namespace koopcrypt {

/// One decimal integer per line; blank lines and '#' comments are skipped.
/// Throws ParseError with the offending line number.
std::vector<Integer> parse_sequence(std::istream& in);
std::vector<Integer> read_sequence_file(const std::string& path);

void write_trajectory_text(std::ostream& out, const Trajectory& traj);
/// Reads a trajectory written by write_trajectory_text: values only, the
/// multiplier and modulus come from the caller.
Trajectory read_trajectory_text(std::istream& in, std::uint64_t multiplier, std::uint64_t modulus);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

/// RFC 4180: fields with comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_matrix_csv(std::ostream& out, const RationalMatrix& m);
void write_matrix_csv(std::ostream& out, const IntegerMatrix& m);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const std::vector<Rational>& v);
nlohmann::json to_json(const Trajectory& traj);
nlohmann::json to_json(const UnitCircleLift& z);
nlohmann::json to_json(const ValueListLift& z);
nlohmann::json to_json(const CompanionSystem& cs);
nlohmann::json to_json(const DimensionCheck& dc);
nlohmann::json to_json(const EigenSystem& es);
nlohmann::json to_json(const RecoveryResult& r);
nlohmann::json to_json(const MinimalDimension& md);
nlohmann::json to_json(const Lfsr& l);
nlohmann::json to_json(const ReducedModel& r);
nlohmann::json to_json(const ComplexityReport& r);

}  // namespace koopcrypt
