#include "chacon/towers.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "chacon/errors.hpp"

namespace chacon::towers {

namespace {

bool is_first_non_two(Tail t) { return t == Tail::FirstNonTwoIs0 || t == Tail::FirstNonTwoIs1; }

// The digit that ends the run of 2s (or 0s) above the cylinder.
std::uint8_t tail_digit(Tail t) {
  switch (t) {
    case Tail::FirstNonTwoIs0: return 0;
    case Tail::FirstNonTwoIs1: return 1;
    case Tail::FirstNonZeroIs1: return 1;
    case Tail::FirstNonZeroIs2: return 2;
    case Tail::Free: break;
  }
  throw std::logic_error("free tail has no digit");
}

TriadicWord constant_word(std::size_t depth, std::uint8_t digit) {
  return TriadicWord(std::vector<std::uint8_t>(depth, digit));
}

TriadicWord decrement(const TriadicWord& w) {
  std::vector<std::uint8_t> digits(w.digits().begin(), w.digits().end());
  for (auto& d : digits) {
    if (d > 0) {
      --d;
      break;
    }
    d = 2;
  }
  return TriadicWord(std::move(digits));
}

void check_depth(std::size_t depth, unsigned budget) {
  if (depth > budget) {
    throw BudgetExceeded("refinement depth", "cylinder depth " + std::to_string(depth) +
                                                 " exceeds " + std::to_string(budget));
  }
}

bool whole_level(const Cell& c) { return c.base.cylinder.depth() == 0 && c.base.tail == Tail::Free; }

Rational level_weight(unsigned n) {
  // 1 / (h_n + 1/2)
  return Rational(2, 2 * height(n) + 1);
}

}  // namespace

std::string to_string(Tail tail) {
  switch (tail) {
    case Tail::Free: return "free";
    case Tail::FirstNonTwoIs0: return "first-non2:0";
    case Tail::FirstNonTwoIs1: return "first-non2:1";
    case Tail::FirstNonZeroIs1: return "first-non0:1";
    case Tail::FirstNonZeroIs2: return "first-non0:2";
  }
  return "?";
}

Tail parse_tail(std::string_view text) {
  for (Tail t : {Tail::Free, Tail::FirstNonTwoIs0, Tail::FirstNonTwoIs1, Tail::FirstNonZeroIs1,
                 Tail::FirstNonZeroIs2}) {
    if (text == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown tail condition '" + std::string(text) + "'");
}

Rational haar_mass(const BaseSet& b) {
  Rational mass = b.cylinder.haar_mass();
  if (b.tail != Tail::Free) mass /= 2;
  return mass;
}

std::optional<int> phi_value(const BaseSet& b) {
  const auto v = triadic::phi(b.cylinder);
  if (v.is_resolved()) return static_cast<int>(v.value());
  if (is_first_non_two(b.tail)) return tail_digit(b.tail);
  return std::nullopt;
}

std::vector<BaseSet> refine(const BaseSet& b) {
  const TriadicWord& w = b.cylinder;
  switch (b.tail) {
    case Tail::Free:
      return {{w.extended(0), Tail::Free}, {w.extended(1), Tail::Free}, {w.extended(2), Tail::Free}};
    case Tail::FirstNonTwoIs0:
    case Tail::FirstNonTwoIs1:
      return {{w.extended(2), b.tail}, {w.extended(tail_digit(b.tail)), Tail::Free}};
    case Tail::FirstNonZeroIs1:
    case Tail::FirstNonZeroIs2:
      return {{w.extended(0), b.tail}, {w.extended(tail_digit(b.tail)), Tail::Free}};
  }
  throw std::logic_error("unreachable");
}

std::vector<std::pair<BaseSet, int>> split_by_phi(const BaseSet& b, unsigned depth_budget) {
  if (auto v = phi_value(b)) return {{b, *v}};
  // Cylinder is all 2s and the tail does not decide phi.
  if (b.tail == Tail::Free) {
    return {{{b.cylinder, Tail::FirstNonTwoIs0}, 0}, {{b.cylinder, Tail::FirstNonTwoIs1}, 1}};
  }
  check_depth(b.cylinder.depth() + 1, depth_budget);
  std::vector<std::pair<BaseSet, int>> out;
  for (const auto& child : refine(b)) {
    auto parts = split_by_phi(child, depth_budget);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

std::vector<BaseSet> successor(const BaseSet& b, unsigned depth_budget) {
  const TriadicWord& w = b.cylinder;
  if (!w.all_twos()) return {{triadic::add_integer(w, 1).word, b.tail}};
  // x + 1 carries into the digits above the cylinder.
  const TriadicWord zeros = constant_word(w.depth(), 0);
  switch (b.tail) {
    case Tail::Free: return {{zeros, Tail::Free}};
    case Tail::FirstNonTwoIs0: return {{zeros, Tail::FirstNonZeroIs1}};
    case Tail::FirstNonTwoIs1: return {{zeros, Tail::FirstNonZeroIs2}};
    default: break;
  }
  check_depth(w.depth() + 1, depth_budget);
  std::vector<BaseSet> out;
  for (const auto& child : refine(b)) {
    auto parts = successor(child, depth_budget);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

std::vector<BaseSet> predecessor(const BaseSet& b, unsigned depth_budget) {
  const TriadicWord& w = b.cylinder;
  if (!w.all_zeros()) return {{decrement(w), b.tail}};
  // x - 1 borrows from the digits above the cylinder.
  const TriadicWord twos = constant_word(w.depth(), 2);
  switch (b.tail) {
    case Tail::Free: return {{twos, Tail::Free}};
    case Tail::FirstNonZeroIs1: return {{twos, Tail::FirstNonTwoIs0}};
    case Tail::FirstNonZeroIs2: return {{twos, Tail::FirstNonTwoIs1}};
    default: break;
  }
  check_depth(w.depth() + 1, depth_budget);
  std::vector<BaseSet> out;
  for (const auto& child : refine(b)) {
    auto parts = predecessor(child, depth_budget);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

std::vector<BaseSet> intersect(const BaseSet& a, const BaseSet& b) {
  if (!a.cylinder.is_prefix_of(b.cylinder) && !b.cylinder.is_prefix_of(a.cylinder)) return {};
  if (a.cylinder.depth() != b.cylinder.depth()) {
    const bool a_shorter = a.cylinder.depth() < b.cylinder.depth();
    const BaseSet& shorter = a_shorter ? a : b;
    const BaseSet& longer = a_shorter ? b : a;
    std::vector<BaseSet> out;
    for (const auto& child : refine(shorter)) {
      auto parts = intersect(child, longer);
      out.insert(out.end(), parts.begin(), parts.end());
    }
    return out;
  }
  if (a.tail == Tail::Free) return {b};
  if (b.tail == Tail::Free || a.tail == b.tail) return {a};
  if (is_first_non_two(a.tail) == is_first_non_two(b.tail)) return {};
  // One run of 2s against one run of 0s: one more digit separates them.
  std::vector<BaseSet> out;
  for (const auto& x : refine(a)) {
    for (const auto& y : refine(b)) {
      auto parts = intersect(x, y);
      out.insert(out.end(), parts.begin(), parts.end());
    }
  }
  return out;
}

std::uint64_t height(unsigned n) {
  if (n > 38) throw std::overflow_error("tower height h_" + std::to_string(n) + " overflows");
  return (power_of_three(n + 1) - 1) / 2;
}

LevelSet level(unsigned n, std::int64_t i) { return levels(n, {i}); }

LevelSet levels(unsigned n, const std::vector<std::int64_t>& indices) {
  const auto h = static_cast<std::int64_t>(height(n));
  LevelSet s{n, {}};
  for (auto i : indices) {
    if (i < 0 || i >= h) {
      throw std::invalid_argument("level " + std::to_string(i) + " outside tower " + std::to_string(n));
    }
    s.cells.push_back({{TriadicWord(), Tail::Free}, i});
  }
  validate(s);
  return s;
}

LevelSet full_space(unsigned n) {
  const auto h = static_cast<std::int64_t>(height(n));
  LevelSet s{n, {}};
  for (std::int64_t i = 0; i < h; ++i) s.cells.push_back({{TriadicWord(), Tail::Free}, i});
  s.cells.push_back({{TriadicWord(), Tail::FirstNonTwoIs1}, h});
  return s;
}

void validate(const LevelSet& s) {
  const auto h = static_cast<std::int64_t>(height(s.tower));
  std::unordered_map<std::int64_t, std::vector<const Cell*>> by_level;
  for (const auto& c : s.cells) {
    if (c.level < 0 || c.level > h) {
      throw std::invalid_argument("cell level " + std::to_string(c.level) + " outside X_" +
                                  std::to_string(s.tower));
    }
    if (c.level == h && phi_value(c.base) != 1) {
      throw std::invalid_argument("cell at the roof level " + std::to_string(h) +
                                  " must lie over {phi = 1}");
    }
    auto& others = by_level[c.level];
    for (const Cell* other : others) {
      if (!intersect(other->base, c.base).empty()) {
        throw std::invalid_argument("cells overlap at level " + std::to_string(c.level));
      }
    }
    others.push_back(&c);
  }
}

bool is_union_of_levels(const LevelSet& s) {
  const auto h = static_cast<std::int64_t>(height(s.tower));
  return std::all_of(s.cells.begin(), s.cells.end(),
                     [h](const Cell& c) { return whole_level(c) && c.level < h; });
}

Rational measure(const LevelSet& s) {
  Rational total(0);
  for (const auto& c : s.cells) total += haar_mass(c.base);
  return total * level_weight(s.tower);
}

LevelSet t_apply(const LevelSet& s, std::int64_t k, const TowerConfig& config) {
  const std::uint64_t steps = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  if (steps > config.step_budget) {
    throw BudgetExceeded("step", "|k| = " + std::to_string(steps) + " exceeds " +
                                     std::to_string(config.step_budget));
  }
  const auto h = static_cast<std::int64_t>(height(s.tower));
  const auto budget = config.depth_budget;

  LevelSet out{s.tower, {}};
  std::vector<std::pair<Cell, std::uint64_t>> work;
  for (const auto& c : s.cells) work.emplace_back(c, steps);

  while (!work.empty()) {
    auto [cell, remaining] = std::move(work.back());
    work.pop_back();
    if (remaining == 0) {
      out.cells.push_back(std::move(cell));
      continue;
    }
    if (k > 0) {
      if (cell.level < h) {
        const auto to_top = static_cast<std::uint64_t>(h - 1 - cell.level);
        if (remaining <= to_top) {
          cell.level += static_cast<std::int64_t>(remaining);
          out.cells.push_back(std::move(cell));
          continue;
        }
        remaining -= to_top;
        // At level h - 1: climb onto the roof over {phi = 1}, wrap over {phi = 0}.
        for (auto& [part, value] : split_by_phi(cell.base, budget)) {
          if (value == 1) {
            work.push_back({{std::move(part), h}, remaining - 1});
          } else {
            for (auto& next : successor(part, budget)) work.push_back({{std::move(next), 0}, remaining - 1});
          }
        }
      } else {
        for (auto& next : successor(cell.base, budget)) work.push_back({{std::move(next), 0}, remaining - 1});
      }
    } else {
      const auto to_bottom = static_cast<std::uint64_t>(cell.level);
      if (remaining <= to_bottom) {
        cell.level -= static_cast<std::int64_t>(remaining);
        out.cells.push_back(std::move(cell));
        continue;
      }
      remaining -= to_bottom;
      // At level 0: the preimage is (S^-1 x, h - 1 + phi(S^-1 x)).
      for (auto& prev : predecessor(cell.base, budget)) {
        for (auto& [part, value] : split_by_phi(prev, budget)) {
          work.push_back({{std::move(part), h - 1 + value}, remaining - 1});
        }
      }
    }
  }
  return out;
}

LevelSet intersect(const LevelSet& a, const LevelSet& b) {
  if (a.tower != b.tower) throw std::invalid_argument("intersecting sets of different towers");
  std::unordered_map<std::int64_t, std::vector<const Cell*>> by_level;
  for (const auto& c : b.cells) by_level[c.level].push_back(&c);

  LevelSet out{a.tower, {}};
  for (const auto& x : a.cells) {
    auto it = by_level.find(x.level);
    if (it == by_level.end()) continue;
    for (const Cell* y : it->second) {
      if (whole_level(x)) {
        out.cells.push_back(*y);
        continue;
      }
      for (auto& part : intersect(x.base, y->base)) out.cells.push_back({std::move(part), x.level});
    }
  }
  return out;
}

Rational correlation(const LevelSet& a, const LevelSet& b, std::int64_t k, const TowerConfig& config) {
  return measure(intersect(a, t_apply(b, k, config)));
}

bool same_footprint(const LevelSet& a, const LevelSet& b) {
  if (a.tower != b.tower) return false;
  const Rational ma = measure(a);
  return ma == measure(b) && ma == measure(intersect(a, b));
}

LevelSet psi_embed(const LevelSet& s) {
  const auto h = static_cast<std::int64_t>(height(s.tower));
  LevelSet out{s.tower + 1, {}};
  auto place = [&](const BaseSet& b, std::int64_t i) {
    const std::uint8_t x0 = b.cylinder[0];
    out.cells.push_back({{triadic::shift(b.cylinder), b.tail}, x0 * h + i + (x0 == 2 ? 1 : 0)});
  };
  for (const auto& c : s.cells) {
    if (c.base.cylinder.depth() > 0) {
      place(c.base, c.level);
    } else {
      for (const auto& child : refine(c.base)) place(child, c.level);
    }
  }
  return out;
}

LevelSet lift(const LevelSet& s, unsigned tower) {
  if (tower < s.tower) throw std::invalid_argument("cannot lift to a lower tower");
  LevelSet out = s;
  while (out.tower < tower) out = psi_embed(out);
  return out;
}

Rational weak_limit_error(unsigned n, std::uint64_t m, std::uint64_t u, const LevelSet& a,
                          const LevelSet& b, const TowerConfig& config,
                          const poly::PolyConfig& poly_config) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (a.tower != n || b.tower != n) throw std::invalid_argument("sets must live in tower " + std::to_string(n));
  if (!is_union_of_levels(a) || !is_union_of_levels(b)) {
    throw std::invalid_argument("weak_limit_error expects unions of whole levels");
  }
  const auto shift = static_cast<std::int64_t>(m * height(n) + u);
  const Rational direct = correlation(a, b, shift, config);

  Rational predicted(0);
  for (const auto& [j, mass] : poly::pm(m, poly_config).atoms()) {
    const std::int64_t i = j - static_cast<std::int64_t>(u);
    predicted += mass * correlation(a, b, -i, config);
  }
  return abs(direct - predicted);
}

LevelSet random_level_set(unsigned n, std::mt19937_64& rng, unsigned max_levels, unsigned max_depth) {
  const auto h = static_cast<std::int64_t>(height(n));
  std::uniform_int_distribution<std::int64_t> pick_level(0, h);
  std::uniform_int_distribution<unsigned> pick_count(1, max_levels);
  std::bernoulli_distribution coin(0.5);

  std::vector<std::int64_t> chosen;
  const unsigned count = pick_count(rng);
  for (unsigned t = 0; t < count; ++t) {
    const auto i = pick_level(rng);
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }

  LevelSet s{n, {}};
  for (auto i : chosen) {
    std::vector<BaseSet> frontier;
    if (i == h) {
      frontier.push_back({TriadicWord(), Tail::FirstNonTwoIs1});
    } else if (coin(rng)) {
      frontier.push_back({TriadicWord(), coin(rng) ? Tail::FirstNonTwoIs0 : Tail::FirstNonTwoIs1});
      frontier.push_back(frontier.back().tail == Tail::FirstNonTwoIs0
                             ? BaseSet{TriadicWord(), Tail::FirstNonTwoIs1}
                             : BaseSet{TriadicWord(), Tail::FirstNonTwoIs0});
    } else {
      frontier.push_back({TriadicWord(), Tail::Free});
    }
    std::vector<BaseSet> leaves;
    while (!frontier.empty()) {
      BaseSet b = std::move(frontier.back());
      frontier.pop_back();
      if (b.cylinder.depth() < max_depth && coin(rng)) {
        for (auto& child : refine(b)) frontier.push_back(std::move(child));
      } else {
        leaves.push_back(std::move(b));
      }
    }
    bool kept_any = false;
    for (auto& leaf : leaves) {
      if (coin(rng)) {
        s.cells.push_back({std::move(leaf), i});
        kept_any = true;
      }
    }
    if (!kept_any && !leaves.empty()) s.cells.push_back({leaves.front(), i});
  }
  return s;
}

}  // namespace chacon::towers
