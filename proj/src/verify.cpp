#include "chacon/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chacon/analysis.hpp"
#include "chacon/mass_function.hpp"
#include "chacon/weaklimits.hpp"

namespace chacon::verify {

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string list_string(const std::vector<std::uint64_t>& ms) {
  std::string out = "(";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? "," : "") + std::to_string(ms[i]);
  return out + ")";
}

Outcome oracle_equivalence(const VerifyConfig& c) {
  for (std::uint64_t m = 0; m <= 729; ++m) {
    if (poly::pm(m, c.poly) != triadic::pi_exact(m, c.oracle)) {
      return fail("pm(" + std::to_string(m) + ") != pi_exact(" + std::to_string(m) + ")");
    }
  }
  return {true, "pm = pi_exact for 0 <= m <= 729"};
}

Outcome symmetry_unimodality(const VerifyConfig& c) {
  for (std::uint64_t m = 1; m <= 2000; ++m) {
    const MassFunction& p = poly::pm(m, c.poly);
    for (const auto& [j, mass] : p.atoms()) {
      if (p[static_cast<std::int64_t>(m) - j] != mass) {
        return fail("pi_" + std::to_string(m) + " not symmetric at j=" + std::to_string(j));
      }
    }
    const poly::ReducedForm& r = poly::reduced_pm(m, c.poly);
    const auto half = static_cast<std::int64_t>(r.degree / 2);
    for (std::int64_t j = 0; j < half; ++j) {
      if (r.reduced[j] > r.reduced[j + 1]) {
        return fail("reduced P_" + std::to_string(m) + " decreases at j=" + std::to_string(j));
      }
    }
  }
  return {true, "symmetric, reduced coefficients nondecreasing to the middle, 1 <= m <= 2000"};
}

Outcome degree_combinatorics(const VerifyConfig& c) {
  constexpr std::uint64_t top = 5000;
  std::vector<std::int64_t> d(3 * top + 4);
  poly::PolyConfig wide = c.poly;
  wide.coefficient_cap = std::max<std::uint64_t>(wide.coefficient_cap, d.size());
  for (std::uint64_t m = 0; m < d.size(); ++m) d[m] = static_cast<std::int64_t>(poly::reduced_pm(m, wide).degree);
  for (std::uint64_t m = 0; m <= top; ++m) {
    const std::string at = " at m=" + std::to_string(m);
    const poly::ReducedForm lowest = poly::factor_lowest_power(poly::pm(m, c.poly));
    if (poly::degree_by_digits(m) != lowest.degree || lowest.degree != static_cast<std::uint64_t>(d[m])) {
      return fail("degree_by_digits differs from the reduced degree" + at);
    }
    if (lowest.ell != poly::ell(m, c.poly)) return fail("ell differs from the lowest power of pm" + at);
    if (2 * static_cast<std::int64_t>(poly::ell(m, c.poly)) + d[m] != static_cast<std::int64_t>(m)) {
      return fail("2 ell(m) + d_m != m" + at);
    }
    if (d[m + 1] - d[m] != 1 - 2 * poly::s(m)) return fail("d_{m+1} - d_m != 1 - 2 s(m)" + at);
    if (d[3 * m] != d[m] || d[3 * m + 1] != d[m] + 1 || d[3 * m + 2] != d[m + 1] + 1 || d[3 * m + 3] != d[m + 1]) {
      return fail("ternary degree relations" + at);
    }
  }
  return {true, "degree identities hold for 0 <= m <= 5000"};
}

Outcome first_appearance(const VerifyConfig& c) {
  const std::uint64_t scan = (power_of_three(7) + 1) / 2;
  std::map<std::uint64_t, std::uint64_t> first;
  for (std::uint64_t m = 0; m <= scan; ++m) first.try_emplace(poly::reduced_pm(m, c.poly).degree, m);
  for (unsigned deg = 1; deg <= 8; ++deg) {
    const auto it = first.find(deg);
    const std::uint64_t expected = poly::first_m_of_degree(deg);
    if (it == first.end() || it->second != expected) {
      return fail("first m with d_m=" + std::to_string(deg) + " is not " + std::to_string(expected));
    }
  }
  return {true, "first m of degree d is (3^(d-1)+1)/2 for 1 <= d <= 8"};
}

Outcome fourier_bound(const VerifyConfig& c) {
  const auto report = analysis::check_fourier_bound(500, c.grid, 1e-9, c.poly);
  if (!report.pass) {
    const auto& v = report.violations.front();
    std::ostringstream out;
    out << "|P_" << v.m << "(z)| = " << v.value << " > " << v.bound << " at t=" << v.k << "/" << c.grid;
    return fail(out.str());
  }
  return {true, "bound holds for 1 <= m <= 500 on the grid of " + std::to_string(c.grid)};
}

MassFunction random_subprobability(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<std::int64_t> at(-4, 8);
  std::uniform_int_distribution<int> weight(1, 12);
  MassFunction v;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) v.add(at(rng), Rational(weight(rng)));
  // total mass in (0, 1]
  std::uniform_int_distribution<int> num(1, 7);
  const Rational target(num(rng), 7);
  return v.scaled(target / v.total());
}

Outcome delta_monotonicity(const VerifyConfig& c) {
  for (std::uint64_t a = 1; a <= 12; ++a) {
    for (std::uint64_t b = 1; b <= 12; ++b) {
      const MassFunction& nu = poly::pm(a, c.poly);
      if (analysis::delta(convolve(nu, poly::pm(b, c.poly))) > analysis::delta(nu)) {
        return fail("delta(pi_" + std::to_string(a) + " * pi_" + std::to_string(b) + ") > delta(pi_" +
                    std::to_string(a) + ")");
      }
    }
  }
  std::mt19937_64 rng(c.seed);
  for (int i = 0; i < 200; ++i) {
    const MassFunction nu = random_subprobability(rng);
    const MassFunction other = random_subprobability(rng);
    if (analysis::delta(convolve(nu, other)) > analysis::delta(nu)) {
      return fail("random pair " + std::to_string(i) + ": nu=" + to_string(nu) + " nu'=" + to_string(other));
    }
  }
  return {true, "144 pi pairs and 200 random pairs"};
}

Outcome convolution_decay(const VerifyConfig& c) {
  analysis::DecayConfig dc;
  dc.grid = c.grid;
  const auto report = analysis::convolution_decay_report(6, 6, dc, c.poly);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].max_delta > report.rows[i - 1].max_delta) {
      return fail("max delta increases from r=" + std::to_string(report.rows[i - 1].r) + " to r=" +
                  std::to_string(report.rows[i].r) + ", witness " + list_string(report.rows[i].max_delta_witness));
    }
  }
  const Rational first = report.rows.front().max_sup_atom;
  const Rational last = report.rows.back().max_sup_atom;
  if (!(last < first)) {
    return fail("max sup_atom at r=6 (" + format_rational(last) + ") is not below r=1 (" + format_rational(first) + ")");
  }
  return {true, "max delta nonincreasing in r; max sup_atom " + format_rational(first) + " -> " +
                    format_rational(last)};
}

Outcome simulator_exactness(const VerifyConfig& c) {
  std::mt19937_64 rng(c.seed);
  for (unsigned n = 0; n <= 6; ++n) {
    const auto h = static_cast<std::int64_t>(towers::height(n));
    if (towers::measure(towers::full_space(n)) != 1) return fail("mu_" + std::to_string(n) + "(X_n) != 1");
    for (std::int64_t i = 0; i < h; ++i) {
      const auto image = towers::psi_embed(towers::level(n, i));
      const auto expected = towers::levels(n + 1, {i, h + i, 2 * h + i + 1});
      if (!towers::same_footprint(image, expected)) {
        return fail("psi_" + std::to_string(n) + "(E_{" + std::to_string(n) + "," + std::to_string(i) +
                    "}) is not the three-level union");
      }
    }
    std::uniform_int_distribution<std::int64_t> step(-3 * h - 3, 3 * h + 3);
    for (int t = 0; t < 100; ++t) {
      const auto s = towers::random_level_set(n, rng);
      const std::int64_t k = step(rng);
      if (towers::measure(towers::t_apply(s, k, c.tower)) != towers::measure(s)) {
        return fail("T_" + std::to_string(n) + "^" + std::to_string(k) + " changes the measure of random set " +
                    std::to_string(t));
      }
    }
  }
  return {true, "psi level formula, measure preservation and mu(X_n) = 1 for n <= 6"};
}

Outcome lemma1_convergence(const VerifyConfig& c) {
  constexpr unsigned base = 2;
  if (c.tower_max < 8) return fail("tower_max must be at least 8");
  const auto h = static_cast<std::int64_t>(towers::height(base));
  std::vector<std::int64_t> lemma_levels;
  for (std::int64_t i = 0; i < h; ++i) lemma_levels.push_back(i);
  Rational worst_ratio(0);
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t u = 0; u <= 2; ++u) {
      for (auto ia : lemma_levels) {
        for (auto ib : lemma_levels) {
          std::map<unsigned, Rational> err;
          for (unsigned n = 3; n <= 8; ++n) {
            const auto a = towers::lift(towers::level(base, ia), n);
            const auto b = towers::lift(towers::level(base, ib), n);
            err[n] = towers::weak_limit_error(n, m, u, a, b, c.tower, c.poly);
            const Rational bound = Rational(static_cast<long>(2 * m + u)) * towers::measure(towers::level(n, 0));
            const std::string where = "m=" + std::to_string(m) + " u=" + std::to_string(u) + " A=E_{2," +
                                      std::to_string(ia) + "} B=E_{2," + std::to_string(ib) + "} n=" +
                                      std::to_string(n);
            if (err[n] > bound) return fail("error " + format_rational(err[n]) + " above bound at " + where);
            if (err[n] / bound > worst_ratio) worst_ratio = err[n] / bound;
            if (n >= 7 && err[n] > err[n - 1]) {
              return fail("error increases from " + format_rational(err[n - 1]) + " to " + format_rational(err[n]) +
                          " at " + where);
            }
          }
        }
      }
    }
  }
  return {true, "bound and monotonicity hold; largest error/bound " + format_rational(worst_ratio)};
}

Outcome roundtrip_classification(const VerifyConfig& c) {
  constexpr unsigned j = 12;
  std::size_t checked = 0;
  std::vector<std::uint64_t> ms;
  std::function<Outcome(unsigned)> walk = [&](unsigned depth) -> Outcome {
    for (std::int64_t n = -3; n <= 3; ++n) {
      const std::int64_t k = weak::synthesize_sequence(ms, n, j);
      const auto got = weak::classify_term(k, {}, c.poly);
      const auto want = weak::product_limit(ms, n, c.poly);
      ++checked;
      if (got != want) {
        return fail("ms=" + list_string(ms) + " n=" + std::to_string(n) + " k=" + std::to_string(k) + ": got " +
                    to_string(got) + ", expected " + to_string(want));
      }
    }
    if (depth == 3) return {};
    for (std::uint64_t m = 1; m <= 4; ++m) {
      ms.push_back(m);
      auto out = walk(depth + 1);
      ms.pop_back();
      if (!out.pass) return out;
    }
    return {};
  };
  auto out = walk(0);
  if (!out.pass) return out;
  return {true, std::to_string(checked) + " (ms, n) pairs classified back to their product"};
}

Outcome theta_convergence(const VerifyConfig& c) {
  std::vector<unsigned> js;
  for (unsigned j = 1; 2 * j <= c.tower_max; ++j) js.push_back(j);
  if (js.size() < 3) return fail("tower_max too small for three terms");
  js.erase(js.begin(), js.end() - 3);

  std::vector<Rational> errs;
  std::string trace;
  for (auto j : js) {
    // digits 1,0,1,0,... down to scale 2
    std::int64_t k = 0;
    for (unsigned i = 1; i <= j; ++i) k += static_cast<std::int64_t>(towers::height(2 * i));
    const auto a = towers::lift(towers::level(2, 0), 2 * j);
    const Rational mu = towers::measure(a);
    const Rational corr = towers::correlation(a, a, k, c.tower);
    Rational e = corr - mu * mu;
    if (e < 0) e = -e;
    errs.push_back(e);
    trace += (trace.empty() ? "" : ", ") + std::string("j=") + std::to_string(j) + ": " + format_rational(e);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    if (!(errs[i] < errs[i - 1])) return fail("|corr - mu(A)mu(B)| does not decrease: " + trace);
  }
  return {true, "|corr - mu(A)mu(B)| " + trace};
}

Outcome alpha_audit(const VerifyConfig& c) {
  const auto report = weak::audit_alpha_weak_mixing(5, 9, {}, c.poly);
  if (!report.pass) {
    const auto& f = report.failures.front();
    return fail(f.reason + " for ms=" + list_string(f.ms));
  }
  return {true, std::to_string(report.checked) + " products, largest atom " + format_rational(report.largest_sup_atom) +
                    ", at least " + std::to_string(report.fewest_atoms) + " atoms"};
}

Outcome window_identity(const VerifyConfig& c) {
  for (std::size_t w = 1; w <= 6; ++w) {
    if (triadic::phi_window_distribution(w, false, c.oracle) != triadic::phi_window_distribution(w, true, c.oracle)) {
      return fail("window laws differ at w=" + std::to_string(w));
    }
  }
  return {true, "forward and reversed complemented windows agree for w <= 6"};
}

using Suite = Outcome (*)(const VerifyConfig&);

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> suites = {
      {"oracle-equivalence", oracle_equivalence},
      {"symmetry-unimodality", symmetry_unimodality},
      {"degree-combinatorics", degree_combinatorics},
      {"first-appearance", first_appearance},
      {"fourier-bound", fourier_bound},
      {"delta-monotonicity", delta_monotonicity},
      {"convolution-decay", convolution_decay},
      {"simulator-exactness", simulator_exactness},
      {"lemma1-convergence", lemma1_convergence},
      {"roundtrip-classification", roundtrip_classification},
      {"theta-convergence", theta_convergence},
      {"alpha-weak-mixing-audit", alpha_audit},
      {"window-identity", window_identity},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, suite] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& config) {
  for (const auto& [suite_name, suite] : registry()) {
    if (suite_name != name) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out = suite(config);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    return {name, out.pass, std::move(out.detail), took.count()};
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all(const VerifyConfig& config) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, config));
  return out;
}

}  // namespace chacon::verify
