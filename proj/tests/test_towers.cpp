#include <random>
#include <set>

#include "chacon/errors.hpp"
#include "chacon/towers.hpp"
#include "doctest.h"

using namespace chacon;
using namespace chacon::towers;

namespace {

// Indices of the levels of tower `to` making up E_{from,i}, by iterating the
// index form of the psi formula only.
std::set<std::int64_t> stage_indices(unsigned from, std::int64_t i, unsigned to) {
  std::set<std::int64_t> cur{i};
  for (unsigned n = from; n < to; ++n) {
    const auto h = static_cast<std::int64_t>(height(n));
    std::set<std::int64_t> next;
    for (auto j : cur) {
      next.insert(j);
      next.insert(h + j);
      next.insert(2 * h + j + 1);
    }
    cur = std::move(next);
  }
  return cur;
}

// Bracket for mu(A n T^k B), k >= 0, read off the stacked column of tower
// `stage`: levels keep moving up except near the top, which is where all
// the uncertainty lies.
std::pair<Rational, Rational> stacking_bracket(const std::set<std::int64_t>& a, const std::set<std::int64_t>& b,
                                               std::int64_t k, unsigned stage) {
  const auto h = static_cast<std::int64_t>(height(stage));
  const Rational cell = Rational(2, 2 * h + 1);
  std::int64_t inside = 0;
  std::int64_t spill = 0;
  for (auto i : b) {
    if (i + k >= h) {
      ++spill;
    } else if (a.count(i + k)) {
      ++inside;
    }
  }
  return {cell * inside, cell * (inside + spill)};
}

LevelSet single_cell(unsigned n, std::string_view cyl, std::int64_t level) {
  return {n, {{{triadic::TriadicWord::parse(cyl), Tail::Free}, level}}};
}

}  // namespace

TEST_CASE("heights") {
  CHECK(height(0) == 1);
  CHECK(height(3) == 40);
  CHECK(height(5) == 364);
  for (unsigned n = 0; n < 30; ++n) {
    CHECK(height(n + 1) == 3 * height(n) + 1);
    CHECK(2 * height(n) + 1 == power_of_three(n + 1));
  }
}

TEST_CASE("measures") {
  CHECK(measure(level(1, 0)) == Rational(2, 9));
  CHECK(measure(full_space(1)) == 1);
  CHECK(measure(single_cell(1, "01", 2)) == Rational(2, 81));
  for (unsigned n = 0; n <= 6; ++n) CHECK(measure(full_space(n)) == 1);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(level(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(validate(single_cell(1, "", 4)), std::invalid_argument);  // roof needs phi = 1
  CHECK_NOTHROW(validate(single_cell(1, "1", 4)));
  LevelSet overlap{1, {{{triadic::TriadicWord::parse("0"), Tail::Free}, 2}, {{triadic::TriadicWord::parse("01"), Tail::Free}, 2}}};
  CHECK_THROWS_AS(validate(overlap), std::invalid_argument);
}

TEST_CASE("t_apply examples") {
  for (unsigned n = 0; n <= 3; ++n) {
    const auto h = static_cast<std::int64_t>(height(n));
    for (std::int64_t i = 0; i < h; ++i) {
      for (std::int64_t k = -i; i + k < h; ++k) CHECK(same_footprint(t_apply(level(n, i), k), level(n, i + k)));
    }
  }
  const auto image = t_apply(level(0, 0), 1);
  CHECK(measure(image) == measure(level(0, 0)));
  // half of E_{0,0} climbs to the spacer, the rest wraps to level 0
  CHECK(measure(intersect(image, level(0, 0))) == Rational(1, 2) * measure(level(0, 0)));
  CHECK(same_footprint(t_apply(level(2, 5), 0), level(2, 5)));
}

TEST_CASE("correlation examples") {
  CHECK(correlation(level(1, 0), level(1, 0), 0) == Rational(2, 9));
  CHECK(correlation(level(1, 1), level(1, 1), 4) == Rational(1, 9));
  for (std::int64_t k = 0; k < 13; ++k) {
    for (std::int64_t j = 0; j <= k; ++j) {
      // T^(k-j) E_j = E_k
      CHECK(correlation(level(2, k), level(2, j), k - j) == measure(level(2, k)));
      if (j < k && 2 * j >= k) CHECK(correlation(level(2, k), level(2, j), j - k) == 0);
    }
  }
}

TEST_CASE("psi embedding") {
  const auto image = psi_embed(level(0, 0));
  CHECK(image.tower == 1);
  CHECK(same_footprint(image, levels(1, {0, 1, 3})));
  CHECK(measure(image) == Rational(2, 3));
  CHECK(same_footprint(psi_embed(full_space(2)), full_space(3)));
  for (unsigned n = 0; n <= 4; ++n) {
    const auto h = static_cast<std::int64_t>(height(n));
    for (std::int64_t i = 0; i < h; ++i) {
      CHECK(same_footprint(psi_embed(level(n, i)), levels(n + 1, {i, h + i, 2 * h + i + 1})));
    }
  }
}

TEST_CASE("random sets: measure, inverse and conjugation") {
  std::mt19937_64 rng(11);
  for (unsigned n = 0; n <= 4; ++n) {
    const auto h = static_cast<std::int64_t>(height(n));
    std::uniform_int_distribution<std::int64_t> step(-2 * h - 2, 2 * h + 2);
    for (int t = 0; t < 40; ++t) {
      const auto s = random_level_set(n, rng);
      const std::int64_t k = step(rng);
      const auto image = t_apply(s, k);
      CHECK(measure(image) == measure(s));
      CHECK(same_footprint(t_apply(image, -k), s));
      CHECK(same_footprint(t_apply(psi_embed(s), 1), psi_embed(t_apply(s, 1))));
    }
  }
}

TEST_CASE("correlations sit inside the stacking bracket") {
  // A and B are levels of tower 2; the simulator works in tower 3, the
  // bracket is read at tower 9.
  const unsigned base = 2;
  const unsigned sim = 3;
  const unsigned stage = 9;
  for (std::int64_t ia : {0, 5, 12}) {
    for (std::int64_t ib : {0, 7, 12}) {
      const auto a = lift(level(base, ia), sim);
      const auto b = lift(level(base, ib), sim);
      const auto sa = stage_indices(base, ia, stage);
      const auto sb = stage_indices(base, ib, stage);
      for (std::int64_t k : {0, 1, 3, 13, 14, 40, 41, 53, 121, 200, 365}) {
        const Rational c = correlation(a, b, k);
        const auto [lo, hi] = stacking_bracket(sa, sb, k, stage);
        CHECK(lo <= c);
        CHECK(c <= hi);
        CHECK(c >= 0);
        CHECK(c <= measure(a));
      }
    }
  }
}

TEST_CASE("theta witness correlation inside the stacking bracket") {
  const std::int64_t k = static_cast<std::int64_t>(height(6) + height(4) + height(2));
  const auto a = lift(level(2, 0), 6);
  const auto sa = stage_indices(2, 0, 11);
  const Rational c = correlation(a, a, k);
  const auto [lo, hi] = stacking_bracket(sa, sa, k, 11);
  CHECK(lo <= c);
  CHECK(c <= hi);
  CHECK(hi - lo < Rational(1, 1000));
}

TEST_CASE("weak_limit_error") {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto h = static_cast<std::int64_t>(height(n));
    for (std::int64_t j = 1; j < h; ++j) CHECK(weak_limit_error(n, 1, 0, level(n, j), level(n, j)) == 0);
    for (std::uint64_t m = 1; m <= 3; ++m) {
      for (std::int64_t i : {0L, h / 2, h - 1}) {
        CHECK(weak_limit_error(n, m, 0, level(n, i), level(n, 0)) <= Rational(2 * static_cast<long>(m)) * measure(level(n, 0)));
      }
    }
  }
  CHECK_THROWS_AS(weak_limit_error(2, 1, 0, single_cell(2, "0", 0), level(2, 0)), std::invalid_argument);
}

TEST_CASE("budgets") {
  TowerConfig cfg;
  cfg.step_budget = 100;
  CHECK_THROWS_AS(t_apply(level(2, 0), 101, cfg), BudgetExceeded);
  TowerConfig shallow;
  shallow.depth_budget = 2;
  CHECK_THROWS_WITH(t_apply(level(0, 0), 30, shallow), doctest::Contains("refinement depth budget exceeded"));
}
