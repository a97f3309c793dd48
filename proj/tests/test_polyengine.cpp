#include "chacon/errors.hpp"
#include "chacon/polyengine.hpp"
#include "chacon/triadic.hpp"
#include "doctest.h"

using namespace chacon;
using namespace chacon::poly;

TEST_CASE("pm examples") {
  CHECK(pm(0) == MassFunction::dirac(0));
  CHECK(to_string(pm(1)) == "0:1/2 1:1/2");
  CHECK(to_string(pm(2)) == "0:1/6 1:2/3 2:1/6");
  CHECK(to_string(pm(3)) == "1:1/2 2:1/2");
}

TEST_CASE("reduced_pm examples") {
  CHECK(reduced_pm(0) == ReducedForm{0, MassFunction::dirac(0), 0});
  CHECK(reduced_pm(3).ell == 1);
  CHECK(to_string(reduced_pm(3).reduced) == "0:1/2 1:1/2");
  CHECK(reduced_pm(3).degree == 1);
  CHECK(reduced_pm(2).ell == 0);
  CHECK(to_string(reduced_pm(2).reduced) == "0:1/6 1:2/3 2:1/6");
  CHECK(reduced_pm(2).degree == 2);
}

TEST_CASE("s, degree_by_digits and first_m_of_degree") {
  CHECK(s(2) == 1);
  CHECK(s(1) == 0);
  CHECK(s(0) == 0);
  CHECK(degree_by_digits(641) == 5);
  CHECK(degree_by_digits(0) == 0);
  CHECK(degree_by_digits(5) == 3);
  CHECK(first_m_of_degree(3) == 5);
  CHECK(first_m_of_degree(1) == 1);
  CHECK(first_m_of_degree(4) == 14);
}

TEST_CASE("convolution examples") {
  CHECK(convolve(MassFunction::dirac(0), pm(7)) == pm(7));
  CHECK(to_string(convolve(pm(1), pm(1))) == "0:1/4 1:1/2 2:1/4");
  CHECK(to_string(convolve(pm(1), pm(2))) == "0:1/12 1:5/12 2:5/12 3:1/12");
}

TEST_CASE("pm agrees with the enumeration oracle") {
  for (std::uint64_t m = 0; m <= 300; ++m) CHECK(pm(m) == triadic::pi_exact(m));
}

TEST_CASE("structural identities") {
  for (std::uint64_t m = 0; m <= 1500; ++m) {
    const auto& p = pm(m);
    const auto& r = reduced_pm(m);
    CHECK(p.total() == 1);
    // reduced recurrence and full recurrence are separate code paths
    CHECK(factor_lowest_power(p) == r);
    CHECK(r.reduced[0] > 0);
    CHECK(2 * r.ell + r.degree == m);
    CHECK(r.ell == ell(m));
    CHECK(degree_by_digits(m) == r.degree);
    const std::uint64_t step = ell(m + 1) - ell(m);
    CHECK(ell(m + 1) >= ell(m));
    CHECK(step <= 1);
    CHECK(static_cast<int>(step) == s(m));
    if (m >= 3) CHECK(*p.max_support() < static_cast<std::int64_t>(m));
    if (m <= 500) CHECK(pm(3 * m) == p.shifted(static_cast<std::int64_t>(m)));
  }
}

TEST_CASE("pm_reduced_index strips factors of three") {
  PolyConfig cfg;
  cfg.coefficient_cap = 100;
  CHECK_THROWS_AS(pm(101, cfg), BudgetExceeded);
  const auto p = pm_reduced_index(81 * 5, cfg);
  CHECK(p == pm(405));
  CHECK_THROWS_WITH(pm_reduced_index(101, cfg), doctest::Contains("coefficient cap budget exceeded"));
}

TEST_CASE("combinatorics cap") {
  PolyConfig cfg;
  cfg.combinatorics_cap = 1000;
  CHECK_NOTHROW(ell(1000, cfg));
  CHECK_THROWS_AS(ell(1001, cfg), BudgetExceeded);
  CHECK(ell(999999) + ell(999999) + degree_by_digits(999999) == 999999);
}
