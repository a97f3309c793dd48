#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "chacon/analysis.hpp"
#include "chacon/errors.hpp"
#include "chacon/polyengine.hpp"
#include "doctest.h"

using namespace chacon;
using namespace chacon::analysis;
using poly::pm;

namespace {

double naive_abs(const MassFunction& v, double t) {
  std::complex<double> sum = 0;
  for (const auto& [j, mass] : v.atoms()) {
    sum += mass.convert_to<double>() * std::polar(1.0, 2 * std::numbers::pi * t * static_cast<double>(j));
  }
  return std::abs(sum);
}

}  // namespace

TEST_CASE("delta and sup_atom examples") {
  CHECK(delta(MassFunction::dirac(0)) == 2);
  CHECK(delta(pm(1)) == 1);
  CHECK(delta(convolve(pm(1), pm(2))) == Rational(5, 6));
  CHECK(delta(pm(2)) == Rational(4, 3));
  CHECK(delta(MassFunction()) == 0);
  CHECK(sup_atom(pm(2)) == Rational(2, 3));
  CHECK(sup_atom(MassFunction::dirac(0)) == 1);
  CHECK(sup_atom(convolve(pm(1), pm(1))) == Rational(1, 2));
  // a gap counts as two jumps
  CHECK(delta(parse_mass_function("0:1/2 2:1/2")) == 2);
}

TEST_CASE("circle points") {
  CHECK(CirclePoint(2, 4).num() == 1);
  CHECK(CirclePoint(2, 4).den() == 2);
  CHECK_THROWS_AS(CirclePoint(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(CirclePoint(-1, 4), std::invalid_argument);
  CHECK_THROWS_AS(CirclePoint(0, 0), std::invalid_argument);
}

TEST_CASE("fourier examples") {
  CHECK(fourier_abs(pm(2), CirclePoint(1, 2)) == doctest::Approx(1.0 / 3));
  CHECK(fourier_abs(pm(17), CirclePoint(0, 1)) == doctest::Approx(1.0));
  CHECK(fourier_abs(pm(1), CirclePoint(1, 2)) == doctest::Approx(0.0));
  CHECK(alpha(CirclePoint(0, 1)) == doctest::Approx(1.0));
  CHECK(alpha(CirclePoint(1, 2)) == doctest::Approx(1.0 / 3));
  CHECK(beta(CirclePoint(1, 2)) == doctest::Approx(1.0 / 3));
}

TEST_CASE("fourier_abs matches a naive complex sum") {
  for (std::uint64_t m : {5u, 40u, 121u, 364u}) {
    for (std::int64_t k = 0; k < 64; ++k) {
      CHECK(fourier_abs(pm(m), CirclePoint(k, 64)) == doctest::Approx(naive_abs(pm(m), k / 64.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("check_fourier_bound small grids") {
  auto r = check_fourier_bound(2, 2);
  CHECK(r.pass);
  CHECK(r.rows.size() == 2);
  r = check_fourier_bound(1, 2);
  CHECK(r.pass);
  r = check_fourier_bound(60, 256);
  CHECK(r.pass);
  CHECK(r.violations.empty());
  for (const auto& row : r.rows) CHECK(row.worst_margin >= -1e-9);
}

TEST_CASE("decay report examples") {
  auto r = convolution_decay_report(1, 2);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].max_delta == 1);
  CHECK(r.rows[1].max_delta == 1);
  CHECK(r.rows[1].max_delta_witness == std::vector<std::uint64_t>{1, 1});
  r = convolution_decay_report(2, 1);
  CHECK(r.rows[0].max_delta == Rational(4, 3));
  CHECK(r.rows[0].tuples == 2);
  CHECK(count_nondecreasing_tuples(6, 6) == 923);
  DecayConfig tight;
  tight.tuple_budget = 10;
  CHECK_THROWS_WITH(convolution_decay_report(6, 6, tight), doctest::Contains("(M=6, R=6)"));
}

TEST_CASE("convolutions of the pi_m stay symmetric and unimodal") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, 60);
  for (int t = 0; t < 150; ++t) {
    MassFunction v = MassFunction::dirac(0);
    const int r = 1 + t % 4;
    for (int i = 0; i < r; ++i) v = convolve(v, pm(pick(rng)));
    // center the support to test symmetry about 0
    const auto lo = *v.min_support();
    const auto hi = *v.max_support();
    CHECK(is_unimodal(v));
    bool symmetric = true;
    for (const auto& [j, mass] : v.atoms()) symmetric = symmetric && v[lo + hi - j] == mass;
    CHECK(symmetric);
    CHECK(delta(v) == 2 * sup_atom(v));
  }
  CHECK(is_symmetric(parse_mass_function("-1:1/4 0:1/2 1:1/4")));
  CHECK_FALSE(is_unimodal(parse_mass_function("0:1/2 2:1/2")));
}

TEST_CASE("sup_atom along first witnesses of each degree") {
  std::vector<Rational> top{Rational(0)};
  for (unsigned d = 1; d <= 10; ++d) top.push_back(sup_atom(pm(poly::first_m_of_degree(d))));
  // not monotone in d: an even degree adds a central atom
  CHECK(top[1] == Rational(1, 2));
  CHECK(top[2] == Rational(2, 3));
  CHECK(top[3] == Rational(4, 9));
  CHECK(top[10] == Rational(6046, 19683));
  for (unsigned d = 3; d <= 10; ++d) CHECK(top[d] < top[d - 2]);
}

TEST_CASE("delta never grows under convolution") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> at(-3, 5);
  std::uniform_int_distribution<int> weight(0, 9);
  for (int t = 0; t < 300; ++t) {
    MassFunction a;
    MassFunction b;
    for (int i = 0; i < 5; ++i) {
      a.add(at(rng), Rational(weight(rng), 50));
      b.add(at(rng), Rational(weight(rng), 50));
    }
    CHECK(delta(convolve(a, b)) <= delta(a));
  }
}
