#include <map>

#include "chacon/triadic.hpp"
#include "doctest.h"

using namespace chacon;
using namespace chacon::triadic;

namespace {

TriadicWord w(std::string_view s) { return TriadicWord::parse(s); }

// Brute-force law of phi^(m) over the residues modulo 3^depth, every point
// drawn from the natural numbers. Residues whose orbit runs into the carry
// above `depth` digits are skipped, so this matches pi_exact only as depth
// grows; with depth large enough the skipped mass is tiny and the rest
// reproduces the exact distribution when rounded to the exact denominators.
std::map<std::uint64_t, std::uint64_t> counts_by_points(std::uint64_t m, unsigned depth) {
  std::map<std::uint64_t, std::uint64_t> counts;
  const std::uint64_t modulus = power_of_three(depth);
  for (std::uint64_t x = 0; x < modulus; ++x) {
    if (x + m >= modulus) continue;
    std::uint64_t sum = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
      std::uint64_t y = x + j;
      while (y % 3 == 2) y /= 3;
      sum += y % 3;
    }
    ++counts[sum];
  }
  return counts;
}

}  // namespace

TEST_CASE("words parse least significant digit first") {
  CHECK(w("210").digits()[0] == 2);
  CHECK(w("210").value() == 2 + 1 * 3);
  CHECK(w("").depth() == 0);
  CHECK(TriadicWord::from_value(5, 3) == w("210"));
  CHECK(w("22").all_twos());
  CHECK(w("").haar_mass() == 1);
  CHECK(w("01").haar_mass() == Rational(1, 9));
  CHECK(w("0").is_prefix_of(w("01")));
  CHECK_FALSE(w("1").is_prefix_of(w("01")));
  CHECK_THROWS_AS(w("3"), std::invalid_argument);
}

TEST_CASE("order and phi") {
  CHECK(order(w("022")) == CocycleValue::resolved(0));
  CHECK(order(w("221")) == CocycleValue::resolved(2));
  CHECK_FALSE(order(w("22")).is_resolved());
  CHECK(phi(w("2201")) == CocycleValue::resolved(0));
  CHECK(phi(w("10")) == CocycleValue::resolved(1));
  CHECK_FALSE(phi(w("22")).is_resolved());
  CHECK_FALSE(phi(w("")).is_resolved());
}

TEST_CASE("add_integer carries off the top") {
  auto r = add_integer(w("20"), 1);
  CHECK(r.word == w("01"));
  CHECK(r.carry == 0);
  r = add_integer(w("22"), 1);
  CHECK(r.word == w("00"));
  CHECK(r.carry == 1);
  r = add_integer(w("11"), 2);
  CHECK(r.word == w("02"));
  CHECK(r.carry == 0);
  r = add_integer(w("1"), 8);
  CHECK(r.word == w("0"));
  CHECK(r.carry == 3);
}

TEST_CASE("shift drops the low digit") {
  CHECK(shift(w("210")) == w("10"));
  CHECK(shift(w("0")) == w(""));
  CHECK(shift(w("1120")) == w("120"));
  CHECK_THROWS_WITH(shift(w("")), "cannot shift empty word");
}

TEST_CASE("phi_sum") {
  CHECK(phi_sum(w(""), 0) == CocycleValue::resolved(0));
  CHECK(phi_sum(w("00"), 2) == CocycleValue::resolved(1));
  CHECK(phi_sum(w("20"), 2) == CocycleValue::resolved(0));
  // x = 2,2: the second step carries past the inspected digits
  CHECK_FALSE(phi_sum(w("22"), 2).is_resolved());
}

TEST_CASE("pi_exact small cases") {
  CHECK(pi_exact(0) == MassFunction::dirac(0));
  CHECK(to_string(pi_exact(1)) == "0:1/2 1:1/2");
  CHECK(to_string(pi_exact(2)) == "0:1/6 1:2/3 2:1/6");
  CHECK(oracle_depth(0) == 0);
  CHECK(oracle_depth(1) == 1);
  CHECK(oracle_depth(2) == 1);
  CHECK(oracle_depth(3) == 2);
  CHECK(oracle_depth(26) == 3);
  CHECK(oracle_depth(27) == 4);
}

TEST_CASE("pi_exact is a symmetric probability on [0, m]") {
  for (std::uint64_t m = 0; m <= 200; ++m) {
    const auto p = pi_exact(m);
    CHECK(p.total() == 1);
    CHECK(*p.min_support() >= 0);
    CHECK(*p.max_support() <= static_cast<std::int64_t>(m));
    for (const auto& [j, mass] : p.atoms()) CHECK(p[static_cast<std::int64_t>(m) - j] == mass);
  }
}

TEST_CASE("pi_exact agrees with a point count on natural numbers") {
  // With 3^10 residues and m <= 30 the skipped fraction is below 0.1%, and
  // each exact mass is a multiple of 1/(2*3^K) with K <= 4.
  for (std::uint64_t m : {3u, 7u, 13u, 20u, 30u}) {
    const auto counts = counts_by_points(m, 10);
    std::uint64_t total = 0;
    for (const auto& [v, c] : counts) total += c;
    const auto exact = pi_exact(m);
    for (std::uint64_t v = 0; v <= m; ++v) {
      const auto it = counts.find(v);
      const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
      CHECK(freq == doctest::Approx(exact[static_cast<std::int64_t>(v)].convert_to<double>()).epsilon(0.002));
    }
  }
}

TEST_CASE("oracle budget") {
  OracleConfig tiny{9};
  CHECK_NOTHROW(pi_exact(8, tiny));
  CHECK_THROWS_WITH(pi_exact(9, tiny), doctest::Contains("oracle budget exceeded"));
}

TEST_CASE("phi window laws") {
  auto off = phi_window_distribution(1, false);
  auto on = phi_window_distribution(1, true);
  CHECK(off.at("0") == Rational(1, 2));
  CHECK(off.at("1") == Rational(1, 2));
  CHECK(off == on);
  CHECK(phi_window_distribution(2, false).at("01") == Rational(1, 3));
  for (std::size_t win = 1; win <= 6; ++win) {
    const auto a = phi_window_distribution(win, false);
    const auto b = phi_window_distribution(win, true);
    CHECK(a == b);
    Rational total(0);
    for (const auto& [word, mass] : a) {
      CHECK(word.size() == win);
      total += mass;
    }
    CHECK(total == 1);
  }
}
