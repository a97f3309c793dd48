#include "chacon/triadic.hpp"

#include <algorithm>
#include <stdexcept>

#include "chacon/errors.hpp"

namespace chacon::triadic {

TriadicWord::TriadicWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (auto d : digits_) {
    if (d > 2) throw std::invalid_argument("triadic digit out of range: " + std::to_string(d));
  }
}

TriadicWord TriadicWord::from_value(std::uint64_t value, std::size_t depth) {
  std::vector<std::uint8_t> digits(depth);
  for (auto& d : digits) {
    d = static_cast<std::uint8_t>(value % 3);
    value /= 3;
  }
  TriadicWord w;
  w.digits_ = std::move(digits);
  return w;
}

TriadicWord TriadicWord::parse(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '2') {
      throw std::invalid_argument("'" + std::string(text) + "' is not a word over {0,1,2}");
    }
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return TriadicWord(std::move(digits));
}

std::uint64_t TriadicWord::value() const {
  if (digits_.size() > 39) throw std::overflow_error("word too deep for a 64-bit value");
  std::uint64_t v = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) v = 3 * v + *it;
  return v;
}

bool TriadicWord::all_twos() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(), [](auto d) { return d == 2; });
}

bool TriadicWord::all_zeros() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(), [](auto d) { return d == 0; });
}

bool TriadicWord::is_prefix_of(const TriadicWord& other) const noexcept {
  return digits_.size() <= other.digits_.size() &&
         std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

TriadicWord TriadicWord::extended(std::uint8_t digit) const {
  if (digit > 2) throw std::invalid_argument("triadic digit out of range");
  TriadicWord w = *this;
  w.digits_.push_back(digit);
  return w;
}

Rational TriadicWord::haar_mass() const {
  return inverse_power_of_three(static_cast<unsigned>(digits_.size()));
}

std::string TriadicWord::to_string() const {
  std::string s;
  s.reserve(digits_.size());
  for (auto d : digits_) s += static_cast<char>('0' + d);
  return s;
}

std::string to_string(const CocycleValue& v) {
  return v.is_resolved() ? std::to_string(v.value()) : std::string("unresolved");
}

CocycleValue order(const TriadicWord& w) {
  for (std::size_t k = 0; k < w.depth(); ++k) {
    if (w[k] != 2) return CocycleValue::resolved(k);
  }
  return CocycleValue::unresolved();
}

CocycleValue phi(const TriadicWord& w) {
  const auto k = order(w);
  if (!k.is_resolved()) return k;
  return CocycleValue::resolved(w[k.value()]);
}

AddResult add_integer(const TriadicWord& w, std::uint64_t j) {
  std::vector<std::uint8_t> digits(w.digits().begin(), w.digits().end());
  std::uint64_t carry = 0;
  for (auto& d : digits) {
    const std::uint64_t sum = d + j % 3 + carry;
    j /= 3;
    d = static_cast<std::uint8_t>(sum % 3);
    carry = sum / 3;
  }
  return {TriadicWord(std::move(digits)), j + carry};
}

TriadicWord shift(const TriadicWord& w) {
  if (w.depth() == 0) throw std::invalid_argument("cannot shift empty word");
  return TriadicWord(std::vector<std::uint8_t>(w.digits().begin() + 1, w.digits().end()));
}

CocycleValue phi_sum(const TriadicWord& w, std::uint64_t m) {
  std::uint64_t sum = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    const auto moved = add_integer(w, j);
    if (moved.carry != 0) return CocycleValue::unresolved();
    const auto term = phi(moved.word);
    if (!term.is_resolved()) return term;
    sum += term.value();
  }
  return CocycleValue::resolved(sum);
}

unsigned oracle_depth(std::uint64_t m) {
  unsigned k = 0;
  std::uint64_t p = 1;
  while (p <= m) {
    if (p > UINT64_MAX / 3) throw std::overflow_error("oracle depth overflow");
    p *= 3;
    ++k;
  }
  return k;
}

namespace {

// phi of every residue modulo 3^K; the all-2 residue is marked with -1.
std::vector<int> residue_phi_table(unsigned depth, const OracleConfig& config) {
  const std::uint64_t states = power_of_three(depth);
  if (states > config.state_budget) {
    throw BudgetExceeded("oracle", "3^" + std::to_string(depth) + " = " + std::to_string(states) +
                                       " residues exceed " + std::to_string(config.state_budget));
  }
  std::vector<int> table(states);
  for (std::uint64_t r = 0; r < states; ++r) {
    const auto v = phi(TriadicWord::from_value(r, depth));
    table[r] = v.is_resolved() ? static_cast<int>(v.value()) : -1;
  }
  return table;
}

}  // namespace

MassFunction pi_exact(std::uint64_t m, const OracleConfig& config) {
  const unsigned depth = oracle_depth(m);
  const auto table = residue_phi_table(depth, config);
  const std::uint64_t states = table.size();

  // prefix[x] = sum of resolved phi over residues (y mod 3^K), y < x, for x <= 2*3^K.
  std::vector<std::uint64_t> prefix(2 * states + 1, 0);
  for (std::uint64_t x = 0; x < 2 * states; ++x) {
    const int v = table[x % states];
    prefix[x + 1] = prefix[x] + (v > 0 ? static_cast<std::uint64_t>(v) : 0);
  }

  // Counts in units of 3^(-K)/2.
  std::vector<std::uint64_t> halves(m + 2, 0);
  for (std::uint64_t r = 0; r < states; ++r) {
    const std::uint64_t sum = prefix[r + m] - prefix[r];
    // r + j* = 3^K - 1 for some j* < m: that summand is a fair coin on the
    // digits above K, independent of everything else in the window.
    const bool split = m > 0 && r + m - 1 >= states - 1;
    if (split) {
      halves[sum] += 1;
      halves[sum + 1] += 1;
    } else {
      halves[sum] += 2;
    }
  }

  MassFunction out;
  const Rational unit = inverse_power_of_three(depth) / 2;
  for (std::uint64_t j = 0; j < halves.size(); ++j) {
    if (halves[j] != 0) out.add(static_cast<std::int64_t>(j), unit * halves[j]);
  }
  return out;
}

std::map<std::string, Rational> phi_window_distribution(std::size_t window,
                                                        bool reversed_complement,
                                                        const OracleConfig& config) {
  if (window == 0) throw std::invalid_argument("window length must be at least 1");
  const unsigned depth = oracle_depth(window);
  const auto table = residue_phi_table(depth, config);
  const std::int64_t states = static_cast<std::int64_t>(table.size());

  std::map<std::string, std::uint64_t> halves;
  for (std::int64_t r = 0; r < states; ++r) {
    std::string word(window, '0');
    std::optional<std::size_t> coin;
    for (std::size_t j = 0; j < window; ++j) {
      const std::int64_t offset = static_cast<std::int64_t>(j);
      const std::int64_t y = reversed_complement ? r - offset : r + offset;
      // |y| stays below 3^K, so the all-2 residue is hit only at y = 3^K - 1
      // (no carry) or y = -1 (borrow); either way the digits above K decide.
      const int v = table[static_cast<std::size_t>(((y % states) + states) % states)];
      if (v < 0) {
        coin = j;
        continue;
      }
      word[j] = static_cast<char>('0' + (reversed_complement ? 1 - v : v));
    }
    if (coin) {
      word[*coin] = '0';
      halves[word] += 1;
      word[*coin] = '1';
      halves[word] += 1;
    } else {
      halves[word] += 2;
    }
  }

  std::map<std::string, Rational> out;
  const Rational unit = inverse_power_of_three(depth) / 2;
  for (const auto& [word, count] : halves) out.emplace(word, unit * count);
  return out;
}

}  // namespace chacon::triadic
