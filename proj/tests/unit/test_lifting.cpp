#include <doctest.h>

#include <complex>
#include <numbers>

#include <koopcrypt/errors.hpp>
#include <koopcrypt/lifting.hpp>

#include "oracles.hpp"

using namespace koopcrypt;

namespace {

std::vector<std::uint64_t> numerators(const UnitCircleLift& z) { return {z.numerators().begin(), z.numerators().end()}; }
std::vector<std::uint64_t> components(const ValueListLift& z) { return {z.components().begin(), z.components().end()}; }

}  // namespace

TEST_CASE("lift_unit_circle angles") {
  CHECK(numerators(lift_unit_circle(1, 3, 5, 3)) == std::vector<std::uint64_t>{3, 4, 2, 1});
  CHECK(numerators(lift_unit_circle(1, 1, 5, 2)) == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(numerators(lift_unit_circle(2, 2, 19, 1)) == std::vector<std::uint64_t>{4, 8});

  const auto z = lift_unit_circle(1, 3, 5, 3);
  CHECK(z.q() == 3);
  CHECK(z.angle(0) == doctest::Approx(2 * std::numbers::pi * 3 / 5));
  for (const auto& v : z.values()) CHECK(std::abs(v) == doctest::Approx(1.0));
  CHECK(std::abs(z.value(1) - std::polar(1.0, 2 * std::numbers::pi * 4 / 5)) < 1e-15);
}

TEST_CASE("unit-circle values convert back to exact angles") {
  for (std::uint64_t p : {5ULL, 19ULL, 97ULL, 997ULL}) {
    const auto z = lift_unit_circle(3, 2, p, 10);
    const auto values = z.values();
    CHECK(UnitCircleLift::from_values(values, 2, p) == z);
  }
}

TEST_CASE("invert_unit_circle") {
  CHECK(invert_unit_circle(lift_unit_circle(7, 2, 19, 4), 0) == 7);
  CHECK(invert_unit_circle(lift_unit_circle(1, 3, 5, 3), 2) == 1);
  CHECK(invert_unit_circle(lift_unit_circle(13, 2, 19, 9), 5) == 13);
  CHECK_THROWS_AS(invert_unit_circle(lift_unit_circle(13, 2, 19, 9), 10), RangeError);
}

TEST_CASE("the preimage found by the search is the only one in range") {
  const std::uint64_t p = 19, m = 2;
  for (std::uint64_t x = 1; x < p; ++x) {
    const auto z = lift_unit_circle(x, m, p, 9);
    for (std::size_t j = 0; j <= 9; ++j) {
      int hits = 0;
      for (std::uint64_t y = 1; y < p; ++y) hits += oracle::pow(m, j + 1, p) * y % p == z.numerators()[j];
      REQUIRE(hits == 1);
      REQUIRE(invert_unit_circle(z, j) == x);
    }
  }
}

TEST_CASE("unit-circle round trip over every generator, residue and component") {
  for (std::uint64_t p : {5ULL, 19ULL, 97ULL})
    for (auto m : oracle::generators(p))
      for (std::uint64_t x = 1; x < p; ++x) {
        // Component j does not depend on q, so the widest lift covers every q <= p-2.
        const auto full = lift_unit_circle(x, m, p, p - 2);
        for (std::size_t q : {std::size_t{0}, std::size_t{1}, static_cast<std::size_t>((p - 1) / 2)}) {
          const auto part = lift_unit_circle(x, m, p, q);
          REQUIRE(std::equal(part.numerators().begin(), part.numerators().end(), full.numerators().begin()));
        }
        for (std::size_t j = 0; j <= p - 2; ++j) REQUIRE(invert_unit_circle(full, j) == x);
      }
}

TEST_CASE("a zero angle has no preimage") {
  const UnitCircleLift broken({0, 4}, 2, 19);
  CHECK_THROWS_AS(invert_unit_circle(broken, 0), InversionFailure);
  CHECK(invert_unit_circle(broken, 1) == 1);
}

TEST_CASE("unit-circle lift advances by one index per step") {
  for (std::uint64_t p : {19ULL, 23ULL})
    for (auto m : oracle::generators(p)) {
      const auto traj = simulate(m, p, 1, p);
      for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const auto now = lift_unit_circle(traj.at(k), m, p, 6);
        const auto next = lift_unit_circle(traj.at(k + 1), m, p, 6);
        for (std::size_t j = 0; j < 6; ++j) REQUIRE(next.numerators()[j] == now.numerators()[j + 1]);
      }
    }
}

TEST_CASE("unit-circle lifts are periodic in x") {
  // h_j(x) depends on x only through x mod p, i.e. lift(x) = lift(x + p).
  const auto a = lift_unit_circle(5, 2, 19, 8);
  const auto b = lift_unit_circle(5 + 19, 2, 19, 8);
  CHECK(a == b);
}

TEST_CASE("lift_value_list") {
  const auto traj = simulate(2, 19, 1, 18);
  CHECK(components(lift_value_list(traj, 0, 3)) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(components(lift_value_list(traj, 0, 0)) == std::vector<std::uint64_t>{1});
  CHECK(components(lift_value_list(traj, 17, 2)) == std::vector<std::uint64_t>{10, 1, 2});
  const Trajectory bare({1, 2, 4}, 2, 19, std::nullopt);
  CHECK_THROWS_AS(lift_value_list(bare, 1, 2), RangeError);
  CHECK_THROWS_AS(ValueListLift({}), DomainError);
}

TEST_CASE("value-list lift shifts with the trajectory") {
  const auto traj = simulate(5, 97, 1, 96);
  for (std::size_t k = 0; k < 200; ++k) {
    const auto now = lift_value_list(traj, k, 7);
    const auto next = lift_value_list(traj, k + 1, 7);
    for (std::size_t j = 0; j < 7; ++j) REQUIRE(next[j] == now[j + 1]);
    REQUIRE(now[7] == oracle::pow(5, k + 7, 97));
    for (auto v : now.components()) REQUIRE((v >= 1 && v <= 96));
  }
}

TEST_CASE("invert_value_list") {
  CHECK(invert_value_list(ValueListLift({1, 2, 4, 8})) == 1);
  CHECK(invert_value_list(ValueListLift({13, 7, 14})) == 13);
  CHECK(invert_value_list(ValueListLift({10, 1, 2})) == 10);
}
