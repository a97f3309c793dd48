#include "chacon/rational.hpp"

#include <stdexcept>

namespace chacon {

std::string format_rational(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt n(std::string(num.front() == '+' ? num.substr(1) : num));
  BigInt d(std::string(den.front() == '+' ? den.substr(1) : den));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

Rational inverse_power_of_three(unsigned k) {
  BigInt den(1);
  for (unsigned i = 0; i < k; ++i) den *= 3;
  return Rational(BigInt(1), den);
}

std::uint64_t power_of_three(unsigned k) {
  if (k > 39) throw std::overflow_error("3^" + std::to_string(k) + " does not fit in 64 bits");
  std::uint64_t p = 1;
  for (unsigned i = 0; i < k; ++i) p *= 3;
  return p;
}

}  // namespace chacon
