#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chacon/mass_function.hpp"
#include "chacon/polyengine.hpp"
#include "chacon/rational.hpp"
#include "chacon/triadic.hpp"

// Exact symbolic simulator of the integral automorphisms T_n on
//   X_n = {(x, i) : x in Z_3, 0 <= i <= h_n - 1 + phi(x)}
// with the normalized measure mu_n = lambda / (h_n + 1/2) on every level.
//
// Sets are finite unions of cells (B, i) where B is a base set: a cylinder of
// the odometer, optionally cut down by a condition on the digits above the
// cylinder. The conditions are needed because {phi = 0} is not a finite
// union of cylinders; with them every set produced by T_n, T_n^-1, psi_n and
// intersections is a finite union of cells with an exact rational measure.
namespace chacon::towers {

using triadic::TriadicWord;

/// Condition on the digits above a base set's cylinder.
enum class Tail : std::uint8_t {
  Free,
  FirstNonTwoIs0,   // digits above the cylinder read 2...2 0 *
  FirstNonTwoIs1,   // 2...2 1 *
  FirstNonZeroIs1,  // 0...0 1 *
  FirstNonZeroIs2,  // 0...0 2 *
};

std::string to_string(Tail tail);
Tail parse_tail(std::string_view text);

struct BaseSet {
  TriadicWord cylinder;
  Tail tail = Tail::Free;

  friend auto operator<=>(const BaseSet&, const BaseSet&) = default;
};

/// Haar measure: 3^(-depth), halved by any tail condition.
Rational haar_mass(const BaseSet& b);
/// phi when it is constant on the base set.
std::optional<int> phi_value(const BaseSet& b);
/// Partition into base sets one digit deeper.
std::vector<BaseSet> refine(const BaseSet& b);
/// Partition on which phi is constant, paired with that value.
std::vector<std::pair<BaseSet, int>> split_by_phi(const BaseSet& b, unsigned depth_budget);
/// S(b) and S^-1(b) as partitions.
std::vector<BaseSet> successor(const BaseSet& b, unsigned depth_budget);
std::vector<BaseSet> predecessor(const BaseSet& b, unsigned depth_budget);
std::vector<BaseSet> intersect(const BaseSet& a, const BaseSet& b);

struct Cell {
  BaseSet base;
  std::int64_t level = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Finite union of pairwise disjoint cells of X_tower.
struct LevelSet {
  unsigned tower = 0;
  std::vector<Cell> cells;
};

struct TowerConfig {
  /// Maximum cylinder depth reachable by refinement.
  unsigned depth_budget = 24;
  /// Maximum |k| accepted by t_apply.
  std::uint64_t step_budget = 1000000000000ULL;
};

/// h_n = 3 h_{n-1} + 1, h_0 = 1.
std::uint64_t height(unsigned n);

/// E_{n,i} for 0 <= i <= h_n - 1.
LevelSet level(unsigned n, std::int64_t i);
/// Union of the listed levels of tower n.
LevelSet levels(unsigned n, const std::vector<std::int64_t>& indices);
/// X_n itself, including the spacer cells over {phi = 1}.
LevelSet full_space(unsigned n);

/// Throws std::invalid_argument unless every cell lies in X_n and cells are disjoint.
void validate(const LevelSet& s);
/// True if all cells are whole levels below the roof.
bool is_union_of_levels(const LevelSet& s);

Rational measure(const LevelSet& s);

/// T_n^k(s); negative k uses the inverse map.
LevelSet t_apply(const LevelSet& s, std::int64_t k, const TowerConfig& config = {});

LevelSet intersect(const LevelSet& a, const LevelSet& b);

/// mu_n(a intersected with T_n^k b)
Rational correlation(const LevelSet& a, const LevelSet& b, std::int64_t k,
                     const TowerConfig& config = {});

/// Equality up to null sets, decided exactly through measures.
bool same_footprint(const LevelSet& a, const LevelSet& b);

/// psi_n(x, i) = (sigma x, x_0 h_n + i + [x_0 = 2]) into tower n + 1.
LevelSet psi_embed(const LevelSet& s);
/// Repeated psi_embed up to `tower`.
LevelSet lift(const LevelSet& s, unsigned tower);

/// |mu(a n T^(m h_n + u) b) - sum_i pi_m(i + u) mu(a n T^(-i) b)| for unions of levels.
Rational weak_limit_error(unsigned n, std::uint64_t m, std::uint64_t u, const LevelSet& a,
                          const LevelSet& b, const TowerConfig& config = {},
                          const poly::PolyConfig& poly_config = {});

/// Random disjoint level set of tower n for property checks: a few levels,
/// each cut into a random partition of which a random subfamily is kept.
LevelSet random_level_set(unsigned n, std::mt19937_64& rng, unsigned max_levels = 6,
                          unsigned max_depth = 3);

}  // namespace chacon::towers
