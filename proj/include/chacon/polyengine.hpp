#pragma once

#include <cstdint>

#include "chacon/mass_function.hpp"

// Exact rational engine for the polynomial family P_m (the generating
// polynomials of the cocycle sums), their reduced forms and the integer
// combinatorics ell(m), s_m, d_m.
namespace chacon::poly {

struct PolyConfig {
  /// Largest m for which full coefficient lists are produced.
  std::uint64_t coefficient_cap = 10000;
  /// Largest m accepted by the ell/s/d recurrences.
  std::uint64_t combinatorics_cap = 1000000;
};

/// P_m = X^ell * reduced, with reduced(0) != 0 and degree = deg(reduced).
struct ReducedForm {
  std::uint64_t ell = 0;
  MassFunction reduced;
  std::uint64_t degree = 0;

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// Coefficients of P_m via the ternary recurrence (memoized, thread safe).
/// The returned reference stays valid for the lifetime of the process.
const MassFunction& pm(std::uint64_t m, const PolyConfig& config = {});

/// P_m for any m: powers of 3 are stripped with P_{3m} = X^m P_m before
/// calling pm, so only the cofactor is subject to the coefficient cap.
MassFunction pm_reduced_index(std::uint64_t m, const PolyConfig& config = {});

/// (ell(m), reduced P_m, d_m) from the reduced recurrences, independently of pm.
const ReducedForm& reduced_pm(std::uint64_t m, const PolyConfig& config = {});

/// Largest power of X dividing P_m, from its own recurrence.
std::uint64_t ell(std::uint64_t m, const PolyConfig& config = {});

/// ell(m+1) - ell(m), read off the base-3 digits of m.
int s(std::uint64_t m);

/// Degree of the reduced polynomial from the base-3 digits of m: the number of
/// 1-digits plus twice the number of blocks of 2s left once the 1s are deleted.
std::uint64_t degree_by_digits(std::uint64_t m);

/// (3^(d-1) + 1) / 2, the least m whose reduced polynomial has degree d.
std::uint64_t first_m_of_degree(unsigned d);

/// Splits any mass function as X^ell * reduced.
ReducedForm factor_lowest_power(const MassFunction& p);

}  // namespace chacon::poly
