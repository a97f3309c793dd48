#include "chacon/polyengine.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "chacon/errors.hpp"

namespace chacon::poly {

namespace {

// Insert-once memo. Racing computations of the same key produce equal values,
// so whichever insert wins is kept.
template <class Value>
class Memo {
 public:
  const Value* find(std::uint64_t key) const {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : it->second.get();
  }

  const Value& insert(std::uint64_t key, Value value) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = table_.try_emplace(key, nullptr);
    if (inserted) it->second = std::make_unique<const Value>(std::move(value));
    return *it->second;
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, std::unique_ptr<const Value>> table_;
};

Memo<MassFunction>& pm_memo() {
  static Memo<MassFunction> memo;
  return memo;
}

Memo<ReducedForm>& reduced_memo() {
  static Memo<ReducedForm> memo;
  return memo;
}

void check_cap(std::uint64_t m, std::uint64_t cap, const char* what) {
  if (m > cap) {
    throw BudgetExceeded(what, "m = " + std::to_string(m) + " exceeds " + std::to_string(cap));
  }
}

const MassFunction& one_plus_x_over_two() {
  static const MassFunction p = [] {
    MassFunction v;
    v.add(0, Rational(1, 2));
    v.add(1, Rational(1, 2));
    return v;
  }();
  return p;
}

// (1 + X) * p
MassFunction times_one_plus_x(const MassFunction& p) { return p + p.shifted(1); }

const MassFunction& pm_unchecked(std::uint64_t m) {
  if (const auto* hit = pm_memo().find(m)) return *hit;

  MassFunction value;
  if (m == 0) {
    value = MassFunction::dirac(0);
  } else if (m == 1) {
    value = one_plus_x_over_two();
  } else {
    const std::uint64_t q = m / 3;
    const auto shift = static_cast<std::int64_t>(q);
    const MassFunction& lower = pm_unchecked(q);
    switch (m % 3) {
      case 0:
        value = lower.shifted(shift);
        break;
      case 1: {
        const MassFunction& upper = pm_unchecked(q + 1);
        value = (times_one_plus_x(lower) + upper).scaled(Rational(1, 3)).shifted(shift);
        break;
      }
      default: {
        const MassFunction& upper = pm_unchecked(q + 1);
        value = (lower.shifted(1) + times_one_plus_x(upper)).scaled(Rational(1, 3)).shifted(shift);
        break;
      }
    }
  }
  return pm_memo().insert(m, std::move(value));
}

std::uint64_t ell_unchecked(std::uint64_t m) {
  if (m <= 1) return 0;
  const std::uint64_t q = m / 3;
  return m % 3 == 2 ? q + ell_unchecked(q + 1) : q + ell_unchecked(q);
}

const ReducedForm& reduced_unchecked(std::uint64_t m) {
  if (const auto* hit = reduced_memo().find(m)) return *hit;

  ReducedForm form;
  if (m == 0) {
    form = {0, MassFunction::dirac(0), 0};
  } else if (m == 1) {
    form = {0, one_plus_x_over_two(), 1};
  } else {
    const std::uint64_t q = m / 3;
    const ReducedForm& lower = reduced_unchecked(q);
    form.ell = ell_unchecked(m);
    if (m % 3 == 0) {
      form.reduced = lower.reduced;
    } else {
      const ReducedForm& upper = reduced_unchecked(q + 1);
      const auto s_q = static_cast<std::int64_t>(upper.ell - lower.ell);
      if (m % 3 == 1) {
        form.reduced =
            (times_one_plus_x(lower.reduced) + upper.reduced.shifted(s_q)).scaled(Rational(1, 3));
      } else {
        form.reduced =
            (lower.reduced.shifted(1 - s_q) + times_one_plus_x(upper.reduced)).scaled(Rational(1, 3));
      }
    }
    form.degree = static_cast<std::uint64_t>(*form.reduced.max_support());
  }
  return reduced_memo().insert(m, std::move(form));
}

}  // namespace

const MassFunction& pm(std::uint64_t m, const PolyConfig& config) {
  check_cap(m, config.coefficient_cap, "coefficient cap");
  return pm_unchecked(m);
}

MassFunction pm_reduced_index(std::uint64_t m, const PolyConfig& config) {
  std::int64_t shift = 0;
  while (m > 0 && m % 3 == 0) {
    m /= 3;
    shift += static_cast<std::int64_t>(m);
  }
  return pm(m, config).shifted(shift);
}

const ReducedForm& reduced_pm(std::uint64_t m, const PolyConfig& config) {
  check_cap(m, config.coefficient_cap, "coefficient cap");
  return reduced_unchecked(m);
}

std::uint64_t ell(std::uint64_t m, const PolyConfig& config) {
  check_cap(m, config.combinatorics_cap, "combinatorics cap");
  return ell_unchecked(m);
}

int s(std::uint64_t m) {
  while (m % 3 == 1) m /= 3;
  return m % 3 == 2 ? 1 : 0;
}

std::uint64_t degree_by_digits(std::uint64_t m) {
  std::uint64_t ones = 0;
  std::uint64_t blocks = 0;
  bool in_block = false;
  for (; m > 0; m /= 3) {
    switch (m % 3) {
      case 1:
        ++ones;  // deleted; does not break a block of 2s
        break;
      case 2:
        if (!in_block) ++blocks;
        in_block = true;
        break;
      default:
        in_block = false;
        break;
    }
  }
  return ones + 2 * blocks;
}

std::uint64_t first_m_of_degree(unsigned d) {
  if (d == 0) throw std::invalid_argument("degree must be at least 1");
  return (power_of_three(d - 1) + 1) / 2;
}

ReducedForm factor_lowest_power(const MassFunction& p) {
  if (p.empty()) throw std::invalid_argument("the zero polynomial has no lowest power");
  const std::int64_t low = *p.min_support();
  if (low < 0) throw std::invalid_argument("negative exponent in polynomial");
  ReducedForm form;
  form.ell = static_cast<std::uint64_t>(low);
  form.reduced = p.shifted(-low);
  form.degree = static_cast<std::uint64_t>(*form.reduced.max_support());
  return form;
}

}  // namespace chacon::poly
