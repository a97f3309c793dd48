#include "chacon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "chacon/errors.hpp"

namespace chacon::analysis {

CirclePoint::CirclePoint(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den <= 0) throw std::invalid_argument("circle point denominator must be positive");
  if (num < 0 || num >= den) throw std::invalid_argument("circle point t must lie in [0, 1)");
  const std::int64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational delta(const MassFunction& v) {
  Rational total(0);
  std::optional<std::int64_t> prev_at;
  Rational prev_mass(0);
  for (const auto& [j, mass] : v.atoms()) {
    if (prev_at && *prev_at + 1 == j) {
      total += abs(mass - prev_mass);
    } else {
      // Drop to zero after the previous run and rise from zero into this one.
      total += prev_mass + mass;
    }
    prev_at = j;
    prev_mass = mass;
  }
  return total + prev_mass;
}

Rational sup_atom(const MassFunction& v) {
  Rational best(0);
  for (const auto& [j, mass] : v.atoms()) best = std::max(best, mass);
  return best;
}

double fourier_abs(const MassFunction& v, const CirclePoint& z) {
  const __int128 den = z.den();
  std::complex<double> sum(0.0, 0.0);
  for (const auto& [j, mass] : v.atoms()) {
    __int128 phase = (static_cast<__int128>(j) * z.num()) % den;
    if (phase < 0) phase += den;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(den);
    sum += mass.convert_to<double>() * std::polar(1.0, angle);
  }
  return std::abs(sum);
}

double alpha(const CirclePoint& z) {
  const double one_plus_z = 2.0 * std::abs(std::cos(std::numbers::pi * z.t()));
  return (1.0 + one_plus_z) / 3.0;
}

double beta(const CirclePoint& z) {
  return std::max({fourier_abs(poly::pm(1), z), fourier_abs(poly::pm(2), z), alpha(z)});
}

bool is_symmetric(const MassFunction& v) {
  if (v.empty()) return true;
  const std::int64_t lo = *v.min_support();
  const std::int64_t hi = *v.max_support();
  for (const auto& [j, mass] : v.atoms()) {
    if (v[lo + hi - j] != mass) return false;
  }
  return true;
}

bool is_unimodal(const MassFunction& v) {
  if (v.empty()) return true;
  const std::int64_t lo = *v.min_support();
  const std::int64_t hi = *v.max_support();
  bool descending = false;
  Rational prev(0);
  for (std::int64_t j = lo; j <= hi; ++j) {
    const Rational cur = v[j];
    if (cur == 0) return false;
    if (cur < prev) descending = true;
    if (descending && cur > prev) return false;
    prev = cur;
  }
  return true;
}

FourierReport check_fourier_bound(std::uint64_t m_max, std::int64_t grid, double tolerance,
                                  const poly::PolyConfig& config) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  if (grid < 2) throw std::invalid_argument("grid size must be at least 2");

  FourierReport report;
  report.m_max = m_max;
  report.grid = grid;
  report.tolerance = tolerance;

  std::vector<double> alphas(static_cast<std::size_t>(grid));
  for (std::int64_t k = 0; k < grid; ++k) alphas[k] = alpha(CirclePoint(k, grid));

  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const MassFunction& p = poly::pm(m, config);
    const std::uint64_t d = poly::factor_lowest_power(p).degree;
    const double exponent = (static_cast<double>(d) - 2.0) / 2.0;
    FourierRow row{m, d, INFINITY, 0, true};
    for (std::int64_t k = 0; k < grid; ++k) {
      const double value = fourier_abs(p, CirclePoint(k, grid));
      const double bound = std::pow(alphas[k], exponent);
      const double margin = bound - value;
      if (margin < row.worst_margin) {
        row.worst_margin = margin;
        row.worst_k = k;
      }
      if (value > bound + tolerance) {
        row.pass = false;
        report.violations.push_back({m, k, value, bound});
      }
    }
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

std::uint64_t count_nondecreasing_tuples(std::uint64_t max_m, unsigned max_r) {
  // multisets of size r from max_m values: C(max_m + r - 1, r)
  std::uint64_t total = 0;
  long double c = 1;
  for (unsigned r = 1; r <= max_r; ++r) {
    c = c * static_cast<long double>(max_m + r - 1) / r;
    total += static_cast<std::uint64_t>(std::llround(c));
    if (c > 1e18L) return UINT64_MAX;
  }
  return total;
}

namespace {

struct DecaySearch {
  std::uint64_t max_m;
  unsigned max_r;
  const poly::PolyConfig& poly_config;
  std::vector<DecayRow>& rows;
  std::vector<std::uint64_t> tuple;

  void extend(const MassFunction& prefix, std::uint64_t from) {
    for (std::uint64_t m = from; m <= max_m; ++m) {
      tuple.push_back(m);
      const MassFunction next = convolve(prefix, poly::pm(m, poly_config));
      DecayRow& row = rows[tuple.size() - 1];
      ++row.tuples;
      const Rational d = delta(next);
      if (row.max_delta_witness.empty() || d > row.max_delta) {
        row.max_delta = d;
        row.max_delta_witness = tuple;
      }
      const Rational top = sup_atom(next);
      if (row.max_sup_atom_witness.empty() || top > row.max_sup_atom) {
        row.max_sup_atom = top;
        row.max_sup_atom_witness = tuple;
      }
      if (tuple.size() < max_r) extend(next, m);
      tuple.pop_back();
    }
  }
};

}  // namespace

DecayReport convolution_decay_report(std::uint64_t max_m, unsigned max_r, const DecayConfig& config,
                                     const poly::PolyConfig& poly_config) {
  if (max_m < 1 || max_r < 1) throw std::invalid_argument("M and R must be at least 1");
  const std::uint64_t tuples = count_nondecreasing_tuples(max_m, max_r);
  if (tuples > config.tuple_budget) {
    throw BudgetExceeded("tuple", "(M=" + std::to_string(max_m) + ", R=" + std::to_string(max_r) +
                                      ") needs " + std::to_string(tuples) + " tuples, budget " +
                                      std::to_string(config.tuple_budget));
  }

  DecayReport report;
  report.max_m = max_m;
  report.max_r = max_r;
  report.rows.resize(max_r);
  for (unsigned r = 1; r <= max_r; ++r) report.rows[r - 1].r = r;

  DecaySearch search{max_m, max_r, poly_config, report.rows, {}};
  search.extend(MassFunction::dirac(0), 1);

  std::vector<double> betas(static_cast<std::size_t>(config.grid));
  for (std::int64_t k = 0; k < config.grid; ++k) betas[k] = beta(CirclePoint(k, config.grid));
  for (auto& row : report.rows) {
    double sum = 0;
    for (double b : betas) sum += std::pow(b, static_cast<double>(row.r));
    row.beta_integral = sum / static_cast<double>(config.grid);
  }
  return report;
}

}  // namespace chacon::analysis
