#pragma once

#include <cstdint>
#include <vector>

#include "chacon/mass_function.hpp"
#include "chacon/polyengine.hpp"
#include "chacon/rational.hpp"

// Total variation of successive differences, largest atoms, and the unit
// circle Fourier bounds used to show convolutions of the P_m flatten out.
namespace chacon::analysis {

/// z = exp(2 pi i t) with t = num/den in [0, 1).
class CirclePoint {
 public:
  CirclePoint(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double t() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// sum_j |v(j+1) - v(j)| over all integers.
Rational delta(const MassFunction& v);

/// Largest atom, 0 for the zero measure.
Rational sup_atom(const MassFunction& v);

/// |sum_j v(j) z^(-j)| in double precision. Phases are reduced exactly modulo
/// 1 before evaluation; absolute error stays below 1e-10 for supports of up to
/// 1e4 atoms.
double fourier_abs(const MassFunction& v, const CirclePoint& z);

/// (1 + |1 + z|) / 3
double alpha(const CirclePoint& z);

/// max(|P_1(z)|, |P_2(z)|, alpha(z))
double beta(const CirclePoint& z);

bool is_symmetric(const MassFunction& v);
/// Nondecreasing up to the mode and nonincreasing after it, without interior
/// zero gaps.
bool is_unimodal(const MassFunction& v);

struct FourierRow {
  std::uint64_t m = 0;
  std::uint64_t degree = 0;
  /// min over the grid of bound - |P_m(z)|
  double worst_margin = 0;
  std::int64_t worst_k = 0;
  bool pass = true;
};

struct FourierViolation {
  std::uint64_t m = 0;
  std::int64_t k = 0;
  double value = 0;
  double bound = 0;
};

struct FourierReport {
  std::uint64_t m_max = 0;
  std::int64_t grid = 0;
  double tolerance = 0;
  std::vector<FourierRow> rows;
  std::vector<FourierViolation> violations;
  bool pass = true;
};

/// Checks |P_m(z)| <= alpha(z)^((d_m - 2)/2) + tolerance for 1 <= m <= m_max
/// at every z = exp(2 pi i k / grid). Violations are collected, never thrown.
FourierReport check_fourier_bound(std::uint64_t m_max, std::int64_t grid,
                                  double tolerance = 1e-9,
                                  const poly::PolyConfig& config = {});

struct DecayRow {
  unsigned r = 0;
  Rational max_delta;
  std::vector<std::uint64_t> max_delta_witness;
  Rational max_sup_atom;
  std::vector<std::uint64_t> max_sup_atom_witness;
  /// Riemann sum of beta(z)^r over the grid.
  double beta_integral = 0;
  std::uint64_t tuples = 0;
};

struct DecayReport {
  std::uint64_t max_m = 0;
  unsigned max_r = 0;
  std::vector<DecayRow> rows;
};

struct DecayConfig {
  std::int64_t grid = 1024;
  std::uint64_t tuple_budget = 2000000;
};

/// Number of nondecreasing r-tuples over [1, max_m], summed over r <= max_r.
std::uint64_t count_nondecreasing_tuples(std::uint64_t max_m, unsigned max_r);

/// For each r <= max_r, exact maxima of delta and sup_atom over all
/// convolutions pi_{m_1} * ... * pi_{m_r} with 1 <= m_1 <= ... <= m_r <= max_m.
DecayReport convolution_decay_report(std::uint64_t max_m, unsigned max_r,
                                     const DecayConfig& config = {},
                                     const poly::PolyConfig& poly_config = {});

}  // namespace chacon::analysis
