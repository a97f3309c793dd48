#include "chacon/mass_function.hpp"

#include <sstream>
#include <stdexcept>

namespace chacon {

MassFunction MassFunction::dirac(std::int64_t at, const Rational& mass) {
  MassFunction v;
  v.add(at, mass);
  return v;
}

void MassFunction::add(std::int64_t at, const Rational& mass) {
  if (mass < 0) throw std::invalid_argument("negative mass " + format_rational(mass));
  if (mass == 0) return;
  auto [it, inserted] = atoms_.try_emplace(at, mass);
  if (!inserted) it->second += mass;
}

Rational MassFunction::operator[](std::int64_t at) const {
  auto it = atoms_.find(at);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational MassFunction::total() const {
  Rational sum(0);
  for (const auto& [j, mass] : atoms_) sum += mass;
  return sum;
}

std::optional<std::int64_t> MassFunction::min_support() const {
  if (atoms_.empty()) return std::nullopt;
  return atoms_.begin()->first;
}

std::optional<std::int64_t> MassFunction::max_support() const {
  if (atoms_.empty()) return std::nullopt;
  return atoms_.rbegin()->first;
}

MassFunction MassFunction::shifted(std::int64_t by) const {
  MassFunction out;
  for (const auto& [j, mass] : atoms_) out.atoms_.emplace_hint(out.atoms_.end(), j + by, mass);
  return out;
}

MassFunction MassFunction::reflected() const {
  MassFunction out;
  for (const auto& [j, mass] : atoms_) out.atoms_.emplace(-j, mass);
  return out;
}

MassFunction MassFunction::scaled(const Rational& factor) const {
  if (factor < 0) throw std::invalid_argument("negative scale factor");
  MassFunction out;
  if (factor == 0) return out;
  for (const auto& [j, mass] : atoms_) out.atoms_.emplace_hint(out.atoms_.end(), j, mass * factor);
  return out;
}

MassFunction& MassFunction::operator+=(const MassFunction& other) {
  for (const auto& [j, mass] : other.atoms_) add(j, mass);
  return *this;
}

MassFunction operator+(MassFunction a, const MassFunction& b) {
  a += b;
  return a;
}

MassFunction convolve(const MassFunction& a, const MassFunction& b) {
  MassFunction out;
  for (const auto& [i, x] : a.atoms()) {
    for (const auto& [j, y] : b.atoms()) out.add(i + j, x * y);
  }
  return out;
}

std::string to_string(const MassFunction& v) {
  std::string out;
  for (const auto& [j, mass] : v.atoms()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(j);
    out += ':';
    out += format_rational(mass);
  }
  return out;
}

MassFunction parse_mass_function(std::string_view text) {
  MassFunction v;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const auto colon = token.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw std::invalid_argument("atom '" + token + "' is not of the form j:num/den");
    }
    std::int64_t j = 0;
    try {
      std::size_t used = 0;
      j = std::stoll(token.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad atom position in '" + token + "'");
    }
    v.add(j, parse_rational(std::string_view(token).substr(colon + 1)));
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t' || c == '\n') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return v;
}

}  // namespace chacon
