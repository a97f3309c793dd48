#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chacon/mass_function.hpp"
#include "chacon/rational.hpp"

// The 3-adic odometer: finite digit words standing for Haar cylinders, the
// first-non-2-digit cocycle, its Birkhoff sums, and an exhaustive oracle for
// the distribution of those sums.
namespace chacon::triadic {

/// Finite word over {0,1,2}, least significant digit first. The word of depth
/// K denotes the cylinder of all 3-adic integers with these K low digits; the
/// empty word is the whole group.
class TriadicWord {
 public:
  TriadicWord() = default;
  explicit TriadicWord(std::vector<std::uint8_t> digits);

  /// The low `depth` digits of `value`.
  static TriadicWord from_value(std::uint64_t value, std::size_t depth);
  /// Parses "2101" (least significant digit first); "" is the empty word.
  static TriadicWord parse(std::string_view text);

  std::size_t depth() const noexcept { return digits_.size(); }
  std::span<const std::uint8_t> digits() const noexcept { return digits_; }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }

  /// Integer with these digits; depth must be at most 39.
  std::uint64_t value() const;
  bool all_twos() const noexcept;
  bool all_zeros() const noexcept;
  /// True when `other` starts with this word.
  bool is_prefix_of(const TriadicWord& other) const noexcept;

  TriadicWord extended(std::uint8_t digit) const;
  /// Haar mass 3^(-depth).
  Rational haar_mass() const;

  std::string to_string() const;

  friend auto operator<=>(const TriadicWord&, const TriadicWord&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// Either a determined integer value or "not determined by the inspected digits".
class CocycleValue {
 public:
  static CocycleValue resolved(std::uint64_t v) { return CocycleValue(v); }
  static CocycleValue unresolved() { return CocycleValue(); }

  bool is_resolved() const noexcept { return value_.has_value(); }
  /// Precondition: is_resolved().
  std::uint64_t value() const { return value_.value(); }

  friend bool operator==(const CocycleValue&, const CocycleValue&) = default;

 private:
  CocycleValue() = default;
  explicit CocycleValue(std::uint64_t v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

std::string to_string(const CocycleValue& v);

struct AddResult {
  TriadicWord word;
  std::uint64_t carry = 0;
};

/// Index of the first digit different from 2.
CocycleValue order(const TriadicWord& w);

/// The first digit different from 2 (0 or 1).
CocycleValue phi(const TriadicWord& w);

/// Low digits of w + j and the carry out of the top digit; depth preserved.
AddResult add_integer(const TriadicWord& w, std::uint64_t j);

/// Drops the least significant digit. Throws std::invalid_argument on the empty word.
TriadicWord shift(const TriadicWord& w);

/// phi(w) + phi(w+1) + ... + phi(w+m-1), unresolved as soon as one summand is
/// undetermined or a carry leaves the word.
CocycleValue phi_sum(const TriadicWord& w, std::uint64_t m);

struct OracleConfig {
  /// Largest admissible number of enumerated residues 3^K.
  std::uint64_t state_budget = 1594323;  // 3^13
};

/// Smallest K with 3^K > m.
unsigned oracle_depth(std::uint64_t m);

/// Exact law of the Birkhoff sum of length m under Haar measure, by
/// enumerating all residues modulo 3^K with K = oracle_depth(m).
MassFunction pi_exact(std::uint64_t m, const OracleConfig& config = {});

/// Exact law of the 0/1 word (phi(x+j))_{0<=j<w}; with `reversed_complement`
/// the law of (1 - phi(x-j))_{0<=j<w}. Words are keyed as strings of '0'/'1'.
std::map<std::string, Rational> phi_window_distribution(std::size_t window,
                                                        bool reversed_complement,
                                                        const OracleConfig& config = {});

}  // namespace chacon::triadic
