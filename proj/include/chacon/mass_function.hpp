#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "chacon/rational.hpp"

namespace chacon {

/// Finitely supported nonnegative measure on the integers.
///
/// Serves as the coefficient list of a polynomial (atom j <-> coefficient of
/// X^j) as well as the distribution of an integer valued random variable.
/// Only strictly positive masses are stored, so two mass functions are equal
/// iff their atom maps are equal.
class MassFunction {
 public:
  using Atoms = std::map<std::int64_t, Rational>;

  MassFunction() = default;

  static MassFunction dirac(std::int64_t at, const Rational& mass = Rational(1));

  /// Adds `mass` at `at`. Zero is ignored; negative masses are rejected.
  void add(std::int64_t at, const Rational& mass);

  Rational operator[](std::int64_t at) const;
  const Atoms& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  Rational total() const;
  std::optional<std::int64_t> min_support() const;
  std::optional<std::int64_t> max_support() const;

  MassFunction shifted(std::int64_t by) const;
  /// j -> -j
  MassFunction reflected() const;
  MassFunction scaled(const Rational& factor) const;

  MassFunction& operator+=(const MassFunction& other);

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  Atoms atoms_;
};

MassFunction operator+(MassFunction a, const MassFunction& b);

/// (a*b)(j) = sum_k a(k) b(j-k); total mass multiplies, support is the sumset.
MassFunction convolve(const MassFunction& a, const MassFunction& b);

/// "j:num/den" atoms separated by single spaces, in increasing j.
std::string to_string(const MassFunction& v);

/// Inverse of to_string; also accepts commas as separators.
MassFunction parse_mass_function(std::string_view text);

}  // namespace chacon
