#include "chacon/weaklimits.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "chacon/analysis.hpp"
#include "chacon/errors.hpp"
#include "chacon/towers.hpp"

namespace chacon::weak {

using towers::height;

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow");
  return out;
}

std::int64_t signed_height(unsigned n) { return static_cast<std::int64_t>(height(n)); }

std::vector<int> parse_digit_list(std::string_view text) {
  std::vector<int> digits;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw std::invalid_argument("empty digit in '" + std::string(text) + "'");
    if (token.size() != 1 || token[0] < '0' || token[0] > '3') {
      throw std::invalid_argument("pattern digit '" + token + "' is not in 0..3");
    }
    digits.push_back(token[0] - '0');
    token.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return digits;
}

std::string join_digits(const std::vector<int>& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

LimitOperator polynomial_times_shift(std::uint64_t m, std::int64_t shift, const poly::PolyConfig& config) {
  return LimitOperator::from_measure(poly::pm_reduced_index(m, config).shifted(shift));
}

}  // namespace

LimitOperator LimitOperator::theta() { return {MassFunction(), Rational(1)}; }

LimitOperator LimitOperator::shift(std::int64_t n) { return {MassFunction::dirac(n), Rational(0)}; }

LimitOperator LimitOperator::from_measure(MassFunction nu) {
  Rational rest = Rational(1) - nu.total();
  if (rest < 0) throw std::invalid_argument("limit measure has total mass above 1");
  return {std::move(nu), std::move(rest)};
}

LimitOperator compose(const LimitOperator& a, const LimitOperator& b) {
  return LimitOperator::from_measure(convolve(a.nu, b.nu));
}

LimitOperator adjoint(const LimitOperator& a) { return {a.nu.reflected(), a.theta_mass}; }

std::string to_string(const LimitOperator& op) {
  if (op.is_theta()) return "Theta";
  std::string out = to_string(op.nu);
  if (op.theta_mass != 0) out += " theta:" + format_rational(op.theta_mass);
  return out;
}

GreedyExpansion greedy_expand(std::int64_t k) {
  if (k <= 0) throw std::invalid_argument("greedy expansion needs k >= 1");
  unsigned top = 0;
  while (signed_height(top + 1) <= k) ++top;
  return greedy_expand(k, top);
}

GreedyExpansion greedy_expand(std::int64_t k, unsigned top) {
  if (k <= 0) throw std::invalid_argument("greedy expansion needs k >= 1");
  if (signed_height(top) > k || signed_height(top + 1) <= k) {
    throw std::invalid_argument("k = " + std::to_string(k) + " does not have leading scale " +
                                std::to_string(top));
  }
  GreedyExpansion out{top, std::vector<int>(top + 1, 0)};
  std::int64_t rest = k;
  for (unsigned l = 0; l <= top; ++l) {
    const std::int64_t h = signed_height(top - l);
    out.digits[l] = static_cast<int>(rest / h);
    rest %= h;
  }
  return out;
}

std::int64_t reconstruct(const std::vector<int>& digits, unsigned top) {
  if (digits.size() > top + 1) throw std::invalid_argument("more digits than scales");
  std::int64_t k = 0;
  for (std::size_t l = 0; l < digits.size(); ++l) {
    k = checked_add(k, checked_mul(digits[l], signed_height(top - static_cast<unsigned>(l))));
  }
  return k;
}

MuPair m_u_reduce(const std::vector<int>& head) {
  if (head.empty()) throw std::invalid_argument("m_u_reduce needs a nonempty head");
  const std::size_t r = head.size() - 1;
  std::int64_t m = 0;
  std::int64_t u = 0;
  for (std::size_t l = 0; l <= r; ++l) {
    m = checked_add(checked_mul(m, 3), head[l]);
    if (l < r) u = checked_add(u, checked_mul(head[l], signed_height(static_cast<unsigned>(r - l - 1))));
  }
  return {static_cast<std::uint64_t>(m), u};
}

void validate(const DigitPattern& p) {
  if (p.head.empty()) throw std::invalid_argument("pattern head is empty");
  if (p.head.front() == 0) throw std::invalid_argument("leading pattern digit must be nonzero");
  for (int d : p.head) {
    if (d < 0 || d > 3) throw std::invalid_argument("pattern digit out of 0..3");
  }
  const auto three = std::find(p.head.begin(), p.head.end(), 3);
  if (three != p.head.end()) {
    if (std::any_of(three + 1, p.head.end(), [](int d) { return d != 0; }) || p.tail != TailKind::AllZero) {
      throw std::invalid_argument("a digit 3 must be followed by zeros only");
    }
  }
  if (p.tail == TailKind::Mixed) {
    if (p.period.empty()) throw std::invalid_argument("mixed tail needs a period");
    for (int d : p.period) {
      if (d < 0 || d > 2) throw std::invalid_argument("mixed period digits must be in 0..2");
    }
    const bool has_non_zero = std::any_of(p.period.begin(), p.period.end(), [](int d) { return d != 0; });
    const bool has_non_two = std::any_of(p.period.begin(), p.period.end(), [](int d) { return d != 2; });
    if (!has_non_zero || !has_non_two) {
      throw std::invalid_argument("mixed period must contain a digit != 0 and a digit != 2");
    }
    if (p.residual) throw std::invalid_argument("a mixed tail takes no residual");
  }
}

DigitPattern parse_pattern(std::string_view text) {
  DigitPattern p;
  bool have_head = false;
  bool have_tail = false;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("pattern token '" + token + "' lacks '='");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "head") {
      p.head = parse_digit_list(value);
      have_head = true;
    } else if (key == "tail") {
      have_tail = true;
      if (value == "zero") {
        p.tail = TailKind::AllZero;
      } else if (value == "two") {
        p.tail = TailKind::AllTwo;
      } else if (value.rfind("mixed:", 0) == 0) {
        p.tail = TailKind::Mixed;
        p.period = parse_digit_list(std::string_view(value).substr(6));
      } else {
        throw std::invalid_argument("unknown tail '" + value + "'");
      }
    } else if (key == "residual") {
      try {
        std::size_t used = 0;
        p.residual = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::invalid_argument("bad residual '" + value + "'");
      }
    } else {
      throw std::invalid_argument("unknown pattern key '" + key + "'");
    }
  }
  if (!have_head) throw std::invalid_argument("pattern needs head=...");
  if (!have_tail) throw std::invalid_argument("pattern needs tail=zero|two|mixed:...");
  validate(p);
  return p;
}

std::string to_string(const DigitPattern& p) {
  std::string out = "head=" + join_digits(p.head) + " tail=";
  switch (p.tail) {
    case TailKind::AllZero: out += "zero"; break;
    case TailKind::AllTwo: out += "two"; break;
    case TailKind::Mixed: out += "mixed:" + join_digits(p.period); break;
  }
  if (p.residual) out += " residual=" + std::to_string(*p.residual);
  return out;
}

LimitOperator product_limit(const std::vector<std::uint64_t>& ms, std::int64_t n,
                            const poly::PolyConfig& config) {
  MassFunction nu = MassFunction::dirac(n);
  for (auto m : ms) {
    if (m < 1) throw std::invalid_argument("product_limit needs every m_i >= 1");
    nu = convolve(nu, poly::pm_reduced_index(m, config));
  }
  return {std::move(nu), Rational(0)};
}

LimitOperator classify(const DigitPattern& p, const poly::PolyConfig& config) {
  validate(p);
  if (p.tail == TailKind::Mixed) return LimitOperator::theta();

  const MuPair mu = m_u_reduce(p.head);
  if (p.tail == TailKind::AllZero) {
    // k = m h + u + residual with residual = o(h): U^(-k) -> P_m(U) U^(-u) L'.
    const LimitOperator lead = polynomial_times_shift(mu.m, -mu.u, config);
    return p.residual ? compose(lead, classify_term(*p.residual, {}, config)) : lead;
  }
  // A run of 2s below the head adds one more copy of its last scale, up to a
  // negative residual of smaller order.
  if (!p.residual) {
    throw UnderDetermined("an all-2 tail leaves a residual of order -h at an unpinned scale; "
                          "supply residual=...");
  }
  const LimitOperator lead = polynomial_times_shift(mu.m + 1, -mu.u, config);
  return compose(lead, classify_term(*p.residual, {}, config));
}

std::optional<DigitPattern> pattern_from_term(std::int64_t k, const TermConfig& config) {
  const GreedyExpansion e = greedy_expand(k);
  const auto& d = e.digits;
  const std::size_t top = e.top;
  const std::size_t gap = std::max(1u, config.gap);

  auto value_below = [&](std::size_t from) {
    std::int64_t v = 0;
    for (std::size_t l = from; l <= top; ++l) {
      v = checked_add(v, checked_mul(d[l], signed_height(static_cast<unsigned>(top - l))));
    }
    return v;
  };

  for (std::size_t r = 0; r + gap <= top; ++r) {
    const bool zeros = std::all_of(d.begin() + r + 1, d.begin() + r + 1 + gap, [](int x) { return x == 0; });
    const bool twos = std::all_of(d.begin() + r + 1, d.begin() + r + 1 + gap, [](int x) { return x == 2; });
    if (!zeros && !twos) continue;

    DigitPattern p;
    p.head.assign(d.begin(), d.begin() + r + 1);
    if (zeros) {
      p.tail = TailKind::AllZero;
      p.residual = value_below(r + 1);
    } else {
      std::size_t run = 0;
      while (r + 1 + run <= top && d[r + 1 + run] == 2) ++run;
      const auto last_scale = static_cast<unsigned>(top - r - run);
      p.tail = TailKind::AllTwo;
      p.residual = value_below(r + 1 + run) - signed_height(last_scale) - static_cast<std::int64_t>(run);
    }
    return p;
  }
  return std::nullopt;
}

LimitOperator classify_term(std::int64_t k, const TermConfig& config, const poly::PolyConfig& poly_config) {
  const std::int64_t bound = signed_height(config.gap);
  if (k > -bound && k < bound) return LimitOperator::shift(-k);
  if (k < 0) {
    if (k == INT64_MIN) throw std::overflow_error("term too large");
    return adjoint(classify_term(-k, config, poly_config));
  }
  const auto p = pattern_from_term(k, config);
  if (!p) return LimitOperator::theta();

  const MuPair mu = m_u_reduce(p->head);
  const std::uint64_t m = p->tail == TailKind::AllTwo ? mu.m + 1 : mu.m;
  const LimitOperator lead = polynomial_times_shift(m, -mu.u, poly_config);
  return compose(lead, classify_term(*p->residual, config, poly_config));
}

std::int64_t synthesize_sequence(const std::vector<std::uint64_t>& ms, std::int64_t n, unsigned j) {
  if (j < 1) throw std::invalid_argument("sequence index j must be at least 1");
  const auto r = static_cast<unsigned>(ms.size());
  std::int64_t k = 0;
  for (unsigned i = 0; i < r; ++i) {
    if (ms[i] < 1) throw std::invalid_argument("synthesize_sequence needs every m_i >= 1");
    const unsigned scale = (r - i) * j;
    k = checked_add(k, checked_mul(static_cast<std::int64_t>(ms[i]), signed_height(scale)));
  }
  k = checked_add(k, -n);
  if (!ms.empty() && k <= 0) {
    throw std::invalid_argument("k_j = " + std::to_string(k) + " is not positive; increase j");
  }
  return k;
}

namespace {

struct AuditSearch {
  std::uint64_t max_m;
  unsigned max_r;
  const poly::PolyConfig& poly_config;
  AuditReport& report;
  std::vector<std::uint64_t> ms;

  void check(const LimitOperator& op) {
    ++report.checked;
    auto fail = [&](std::string reason) { report.failures.push_back({ms, std::move(reason)}); };
    if (op.theta_mass != 0) fail("theta mass " + format_rational(op.theta_mass));
    if (op.nu.total() != 1) fail("nu is not a probability");
    if (op.nu.size() < 2) fail("fewer than two atoms");
    const Rational top = analysis::sup_atom(op.nu);
    if (top >= 1) fail("an atom carries all the mass");
    if (report.largest_sup_atom_witness.empty() || top > report.largest_sup_atom) {
      report.largest_sup_atom = top;
      report.largest_sup_atom_witness = ms;
    }
    if (report.fewest_atoms == 0 || op.nu.size() < report.fewest_atoms) report.fewest_atoms = op.nu.size();
    // alpha Theta + (1 - alpha) Id with 0 < alpha < 1
    const bool alpha_form = op.theta_mass > 0 && op.theta_mass < 1 && op.nu.size() == 1 &&
                            op.nu[0] == Rational(1) - op.theta_mass;
    if (alpha_form) {
      report.no_alpha_mixing = false;
      fail("limit of the form alpha Theta + (1 - alpha) Id");
    }
  }

  void extend(const MassFunction& prefix, std::uint64_t from) {
    for (std::uint64_t m = from; m <= max_m; ++m) {
      ms.push_back(m);
      MassFunction next = convolve(prefix, poly::pm(m, poly_config));
      check({next, Rational(0)});
      if (ms.size() < max_r) extend(next, m);
      ms.pop_back();
    }
  }
};

}  // namespace

AuditReport audit_alpha_weak_mixing(unsigned max_r, std::uint64_t max_m, const AuditConfig& config,
                                    const poly::PolyConfig& poly_config) {
  if (max_r < 1 || max_m < 1) throw std::invalid_argument("R and M must be at least 1");
  const std::uint64_t tuples = analysis::count_nondecreasing_tuples(max_m, max_r);
  if (tuples > config.tuple_budget) {
    throw BudgetExceeded("tuple", "(R=" + std::to_string(max_r) + ", M=" + std::to_string(max_m) +
                                      ") needs " + std::to_string(tuples) + " tuples, budget " +
                                      std::to_string(config.tuple_budget));
  }
  AuditReport report;
  report.max_r = max_r;
  report.max_m = max_m;

  // r = 0: the identity, i.e. the alpha = 0 endpoint.
  const LimitOperator identity = product_limit({}, 0, poly_config);
  if (!(identity.nu == MassFunction::dirac(0) && identity.theta_mass == 0)) {
    report.failures.push_back({{}, "empty product is not the identity"});
  }

  AuditSearch search{max_m, max_r, poly_config, report, {}};
  search.extend(MassFunction::dirac(0), 1);
  report.pass = report.failures.empty() && report.no_alpha_mixing;
  return report;
}

}  // namespace chacon::weak
