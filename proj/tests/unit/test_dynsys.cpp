#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <koopcrypt/dynsys.hpp>
#include <koopcrypt/errors.hpp>

#include "oracles.hpp"

using namespace koopcrypt;

TEST_CASE("simulate") {
  const auto t = simulate(2, 19, 1, 5);
  CHECK(std::vector<std::uint64_t>(t.values().begin(), t.values().end()) ==
        std::vector<std::uint64_t>{1, 2, 4, 8, 16, 13});
  CHECK(t.period() == 18U);

  const auto single = simulate(2, 19, 1, 0);
  CHECK(single.size() == 1);
  CHECK(single.front() == 1);

  CHECK(simulate(2, 19, 1, 18).back() == 1);
  CHECK(simulate(CryptoInstance::dh(19, 2), 1, 18).size() == 19);
  CHECK(simulate(4, 15, 7, 3).back() == 13);

  CHECK_THROWS_AS(simulate(2, 15, 5, 3), DomainError);
  CHECK_THROWS_AS(simulate(3, 15, 1, 3), DomainError);
}

TEST_CASE("simulate matches the naive orbit") {
  for (std::uint64_t p : {7ULL, 15ULL, 19ULL, 21ULL, 97ULL})
    for (std::uint64_t m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      const auto t = simulate(m, p, 1, 2 * p);
      const auto o = oracle::orbit(m, p, 1, 2 * p);
      REQUIRE(std::equal(o.begin(), o.end(), t.values().begin(), t.values().end()));
    }
}

TEST_CASE("trajectory indexing wraps through the period") {
  const auto t = simulate(2, 19, 1, 18);
  CHECK(t.at(17) == 10);
  CHECK(t.at(18) == 1);
  CHECK(t.at(40) == 16);
  CHECK(t.covers(1000));
  const auto shorter = simulate(2, 19, 1, 5);
  CHECK_FALSE(shorter.covers(17));
  CHECK_THROWS_AS(shorter.at(17), RangeError);
  const Trajectory bare({1, 2, 4}, 2, 19, std::nullopt);
  CHECK(bare.at(2) == 4);
  CHECK_FALSE(bare.covers(3));
  CHECK_THROWS_AS(bare.at(3), RangeError);
}

TEST_CASE("trajectory rejects data that breaks the recurrence") {
  CHECK_THROWS_AS(Trajectory({1, 2, 5}, 2, 19, std::nullopt), DomainError);
  CHECK_THROWS_AS(Trajectory({1, 2, 4}, 2, 19, 5), DomainError);
}

TEST_CASE("period_length") {
  CHECK(period_length(2, 19) == 18);
  CHECK(period_length(1, 19) == 1);
  CHECK(period_length(4, 15) == 2);
  CHECK_THROWS_AS(period_length(5, 15), DomainError);
  for (std::uint64_t p = 2; p <= 200; ++p)
    for (std::uint64_t m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      const auto orbit = oracle::orbit(m, p, 1, p);
      const auto first_return = std::find(orbit.begin() + 1, orbit.end(), 1) - orbit.begin();
      REQUIRE(period_length(m, p) == static_cast<std::uint64_t>(first_return));
      REQUIRE(oracle::carmichael(p) % period_length(m, p) == 0);
    }
}

TEST_CASE("default horizon is two Carmichael periods") {
  CHECK(default_horizon(Modulus(19)) == 36);
  CHECK(default_horizon(Modulus(15)) == 8);
}

TEST_CASE("crypto instances validate their inputs") {
  const auto dh = CryptoInstance::dh(19, 2);
  CHECK(dh.scheme() == Scheme::dh);
  CHECK(dh.modulus().value() == 19);
  CHECK(dh.multiplier() == 2);
  CHECK_FALSE(dh.secret_hint().has_value());
  CHECK(dh.with_secret_hint(5).secret_hint() == 5U);
  CHECK_THROWS_AS(CryptoInstance::dh(19, 4), DomainError);
  CHECK_THROWS_AS(CryptoInstance::dh(21, 2), DomainError);
  CHECK_THROWS_AS(CryptoInstance::dh(2, 1), DomainError);

  const auto rsa = CryptoInstance::rsa(3, 5, 2);
  CHECK(rsa.scheme() == Scheme::rsa);
  CHECK(rsa.modulus().value() == 15);
  CHECK_THROWS_AS(CryptoInstance::rsa(3, 3, 2), DomainError);
  CHECK_THROWS_AS(CryptoInstance::rsa(3, 9, 2), DomainError);
  CHECK_THROWS_AS(CryptoInstance::rsa(3, 5, 5), DomainError);
  CHECK(std::string(to_string(Scheme::learned)) == "learned");
}

TEST_CASE("rsa_keygen") {
  CHECK(rsa_keygen(3, 5, 3).public_exponent == 3);
  CHECK(rsa_keygen(3, 5, 1).public_exponent == 1);
  const auto k = rsa_keygen(5, 11, 7);
  CHECK(k.public_exponent == 23);
  CHECK(k.secret_exponent == 7);
  CHECK(k.instance.modulus().value() == 55);
  CHECK_THROWS_AS(rsa_keygen(3, 5, 2), KeyError);
  CHECK_THROWS_AS(rsa_keygen(3, 3, 1), DomainError);
}

TEST_CASE("encrypt") {
  CHECK(encrypt(CryptoInstance::dh(19, 2), 5) == 13);
  CHECK(encrypt(CryptoInstance::dh(19, 2), 18) == 1);
  CHECK(encrypt(CryptoInstance::rsa(3, 5, 2), 1) == 2);
  CHECK_THROWS_AS(encrypt(CryptoInstance::dh(19, 2), 0), DomainError);
  const auto inst = CryptoInstance::dh(97, 5);
  for (std::uint64_t e = 1; e < 200; ++e) REQUIRE(encrypt(inst, e) == simulate(inst, 1, e).back());
}

TEST_CASE("RSA round trip for every small modulus, key and message") {
  const auto primes = oracle::odd_primes(3, 30);
  for (auto p1 : primes)
    for (auto p2 : primes) {
      if (p1 == p2) continue;
      const std::uint64_t p = p1 * p2, phi = (p1 - 1) * (p2 - 1);
      for (std::uint64_t d = 1; d < phi; ++d) {
        if (std::gcd(d, phi) != 1) continue;
        const auto e = rsa_keygen(p1, p2, d).public_exponent;
        REQUIRE(e * d % phi == 1);
        for (std::uint64_t m = 1; m < p; ++m) {
          if (std::gcd(m, p) != 1) continue;
          REQUIRE(oracle::pow(oracle::pow(m, e, p), d, p) == m);
        }
      }
    }
}

TEST_CASE("DH orbits visit every residue once and mirror at half period") {
  for (auto p : oracle::odd_primes(3, 200))
    for (auto m : oracle::generators(p)) {
      const auto t = simulate(m, p, 1, 2 * (p - 1));
      std::vector<std::uint64_t> first(t.values().begin(), t.values().begin() + (p - 1));
      std::sort(first.begin(), first.end());
      for (std::uint64_t i = 0; i < p - 1; ++i) REQUIRE(first[i] == i + 1);
      const std::size_t half = (p - 1) / 2;
      for (std::size_t k = 0; k + half < t.size(); ++k) REQUIRE(t.at(k + half) == p - t.at(k));
    }
}
