#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chacon/mass_function.hpp"
#include "chacon/polyengine.hpp"
#include "chacon/rational.hpp"

// Weak limits of powers of the Koopman operator: greedy expansions along the
// tower heights, limit operators as atomic measures, the classifier for digit
// patterns, witness sequences, and the alpha-weak-mixing audit.
//
// Sign convention: a LimitOperator stands for L = lim U^(-k_j) written as
// L = sum_j nu(j) U^j + theta * Theta, where U is the Koopman operator and
// Theta the projection onto constants.
namespace chacon::weak {

struct LimitOperator {
  MassFunction nu;
  Rational theta_mass;

  static LimitOperator theta();
  static LimitOperator shift(std::int64_t n);
  static LimitOperator from_measure(MassFunction nu);

  bool is_theta() const { return nu.empty(); }

  friend bool operator==(const LimitOperator&, const LimitOperator&) = default;
};

/// Product of two limit operators (U^j Theta = Theta).
LimitOperator compose(const LimitOperator& a, const LimitOperator& b);
/// Adjoint: nu reflected through 0.
LimitOperator adjoint(const LimitOperator& a);

std::string to_string(const LimitOperator& op);

struct GreedyExpansion {
  /// Scale of the leading digit: h_top <= k < h_{top+1}.
  unsigned top = 0;
  /// digits[l] multiplies h_{top - l}; digits.size() == top + 1.
  std::vector<int> digits;
};

/// Greedy decomposition k = sum_l digits[l] h_{top-l}, with top the largest
/// index such that h_top <= k.
GreedyExpansion greedy_expand(std::int64_t k);
/// Same, with the leading scale given; requires h_top <= k < h_{top+1}.
GreedyExpansion greedy_expand(std::int64_t k, unsigned top);

/// Evaluates sum_l digits[l] h_{top-l}.
std::int64_t reconstruct(const std::vector<int>& digits, unsigned top);

struct MuPair {
  std::uint64_t m = 0;
  std::int64_t u = 0;

  friend bool operator==(const MuPair&, const MuPair&) = default;
};

/// For head (a_0..a_r): m = sum a_l 3^(r-l), u = sum_{l<r} a_l h_{r-l-1}, so
/// that sum a_l h_{n-l} = m h_{n-r} + u for every n >= r.
MuPair m_u_reduce(const std::vector<int>& head);

enum class TailKind { AllZero, AllTwo, Mixed };

/// Limit digit sequence (a_0, a_1, ...) of a greedy expansion.
struct DigitPattern {
  std::vector<int> head;
  TailKind tail = TailKind::AllZero;
  /// Repeating block of a Mixed tail.
  std::vector<int> period;
  /// Integer term below the head's scales, when pinned by the caller.
  /// Defaults to 0 for AllZero tails; required for AllTwo tails.
  std::optional<std::int64_t> residual;
};

/// Throws std::invalid_argument when digits are out of range, a_0 = 0, a 3 is
/// followed by nonzero digits, or a Mixed period cannot certify infinitely
/// many digits != 0 and != 2.
void validate(const DigitPattern& p);

/// "head=1,1 tail=zero", "tail=two residual=-5", "tail=mixed:1,0".
DigitPattern parse_pattern(std::string_view text);
std::string to_string(const DigitPattern& p);

/// nu = P_{m_1} * ... * P_{m_r} * delta_n, no Theta part.
LimitOperator product_limit(const std::vector<std::uint64_t>& ms, std::int64_t n,
                            const poly::PolyConfig& config = {});

/// Limit operator of a digit pattern. Throws UnderDetermined for an AllTwo
/// tail without a pinned residual.
LimitOperator classify(const DigitPattern& p, const poly::PolyConfig& config = {});

struct TermConfig {
  /// Runs of at least this many 0s or 2s separate scales.
  unsigned gap = 4;
};

/// Leading block of the greedy expansion of one sequence term k >= 1, with
/// everything below it pinned as the residual. The block ends where a run of
/// `gap` zeros or twos starts at a scale >= gap. Returns nullopt when no such
/// run exists, i.e. the expansion looks mixed at this resolution.
std::optional<DigitPattern> pattern_from_term(std::int64_t k, const TermConfig& config = {});

/// Limit operator read off a single large sequence term: terms below
/// h_gap are bounded shifts, negative terms use the adjoint, and larger terms
/// are split into separated blocks recursively.
LimitOperator classify_term(std::int64_t k, const TermConfig& config = {},
                            const poly::PolyConfig& poly_config = {});

/// k_j = m_1 h_{r j} + m_2 h_{(r-1) j} + ... + m_r h_j - n, whose powers tend
/// to P_{m_1}...P_{m_r} U^n.
std::int64_t synthesize_sequence(const std::vector<std::uint64_t>& ms, std::int64_t n, unsigned j);

struct AuditFailure {
  std::vector<std::uint64_t> ms;
  std::string reason;
};

struct AuditReport {
  unsigned max_r = 0;
  std::uint64_t max_m = 0;
  std::uint64_t checked = 0;
  Rational largest_sup_atom;
  std::vector<std::uint64_t> largest_sup_atom_witness;
  std::size_t fewest_atoms = 0;
  std::vector<AuditFailure> failures;
  /// No enumerated limit equals alpha Theta + (1 - alpha) Id with 0 < alpha < 1.
  bool no_alpha_mixing = true;
  bool pass = true;
};

struct AuditConfig {
  std::uint64_t tuple_budget = 2000000;
};

/// Enumerates product_limit over all 1 <= m_1 <= ... <= m_r <= max_m, r <= max_r
/// (shift n = 0; shifts do not change the checked properties).
AuditReport audit_alpha_weak_mixing(unsigned max_r, std::uint64_t max_m,
                                    const AuditConfig& config = {},
                                    const poly::PolyConfig& poly_config = {});

}  // namespace chacon::weak
