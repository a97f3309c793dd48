#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chacon/analysis.hpp"
#include "chacon/errors.hpp"
#include "chacon/polyengine.hpp"
#include "chacon/serialize.hpp"
#include "chacon/towers.hpp"
#include "chacon/triadic.hpp"
#include "chacon/verify.hpp"
#include "chacon/weaklimits.hpp"

using namespace chacon;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_budget = 3;
constexpr int exit_underdetermined = 4;

const char* const env_help = R"(Environment overrides (flags take precedence):
  CHACON_ORACLE_BUDGET  max residues 3^K enumerated by the oracle (default 1594323)
  CHACON_DEPTH_BUDGET   max cylinder digits in the simulator (default 24)
  CHACON_TOWER_MAX      largest tower used by simulator suites (default 8)
  CHACON_GRID           Fourier grid size (default 1024)
  CHACON_FORMAT         csv or json (default csv)
  CHACON_SEED           seed for randomized property checks

Exit codes: 0 ok, 1 verify-all failure, 2 usage error, 3 budget exceeded,
4 pattern under-determined.)";

struct RunConfig {
  std::uint64_t oracle_budget = 1594323;
  unsigned depth_budget = 24;
  unsigned tower_max = 8;
  std::int64_t grid = 1024;
  std::string format = "csv";
  std::uint64_t seed = 20240611;

  bool json() const { return format == "json"; }
};

template <typename T>
void env_override(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  std::istringstream in(raw);
  T parsed{};
  if (!(in >> parsed) || !in.eof()) throw CLI::ValidationError(name, std::string("bad value '") + raw + "'");
  value = parsed;
}

std::vector<std::uint64_t> parse_ms(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw std::invalid_argument("bad m value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string join_args(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

void print_mass(const MassFunction& v, const RunConfig& rc) {
  if (rc.json()) {
    std::cout << io::atoms_json(v).dump() << '\n';
  } else {
    std::cout << to_string(v) << '\n';
  }
}

void print_limit(const weak::LimitOperator& op, const RunConfig& rc) {
  if (rc.json()) {
    std::cout << io::to_json(op).dump() << '\n';
  } else {
    std::cout << to_string(op) << '\n';
  }
}

void print_scalar(const std::string& key, const std::string& value, const RunConfig& rc) {
  if (rc.json()) {
    std::cout << io::json{{key, value}}.dump() << '\n';
  } else {
    std::cout << value << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  try {
    env_override("CHACON_ORACLE_BUDGET", rc.oracle_budget);
    env_override("CHACON_DEPTH_BUDGET", rc.depth_budget);
    env_override("CHACON_TOWER_MAX", rc.tower_max);
    env_override("CHACON_GRID", rc.grid);
    env_override("CHACON_FORMAT", rc.format);
    env_override("CHACON_SEED", rc.seed);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }

  CLI::App app{"Exact computations for Chacon's transformation: cocycle laws, polynomials, towers and weak limits"};
  app.footer(env_help);
  app.require_subcommand(1);
  app.add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--oracle-budget", rc.oracle_budget, "Max residues enumerated by the oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth-budget", rc.depth_budget, "Max cylinder digits")->check(CLI::PositiveNumber);
  app.add_option("--tower-max", rc.tower_max, "Largest tower for simulator suites")->check(CLI::PositiveNumber);
  app.add_option("--grid", rc.grid, "Fourier grid size")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "Seed for randomized checks");

  std::uint64_t m = 0;
  std::uint64_t u = 0;
  unsigned d = 0;
  auto* pm_cmd = app.add_subcommand("pm", "Law of the Birkhoff sum of length M via the recurrence");
  pm_cmd->add_option("M", m)->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Same law by brute-force enumeration of residues");
  oracle_cmd->add_option("M", m)->required();
  auto* reduced_cmd = app.add_subcommand("reduced", "ell(M), reduced polynomial and its degree");
  reduced_cmd->add_option("M", m)->required();
  auto* degree_cmd = app.add_subcommand("degree", "Degree d_M of the reduced polynomial");
  degree_cmd->add_option("M", m)->required();
  auto* first_cmd = app.add_subcommand("first-degree", "Smallest m with d_m = D");
  first_cmd->add_option("D", d)->required()->check(CLI::Range(1u, 40u));

  std::vector<std::string> atoms_a;
  std::string atoms_b;
  auto* delta_cmd = app.add_subcommand("delta", "delta functional and largest atom of a measure, e.g. \"0:1/2 1:1/2\"");
  delta_cmd->add_option("atoms", atoms_a)->required();
  auto* convolve_cmd = app.add_subcommand("convolve", "Convolution of two measures");
  std::string conv_a;
  convolve_cmd->add_option("A", conv_a)->required();
  convolve_cmd->add_option("B", atoms_b)->required();

  std::uint64_t m_max = 0;
  auto* fourier_cmd = app.add_subcommand("fourier-check", "Check |P_m(z)| <= alpha(z)^((d_m-2)/2) on a grid");
  fourier_cmd->add_option("--m-max", m_max)->required()->check(CLI::PositiveNumber);
  fourier_cmd->add_option("--grid", rc.grid)->check(CLI::PositiveNumber);

  std::uint64_t big_m = 0;
  unsigned big_r = 0;
  auto* decay_cmd = app.add_subcommand("decay", "Maxima of delta and sup_atom over convolution products");
  decay_cmd->add_option("--M", big_m)->required()->check(CLI::PositiveNumber);
  decay_cmd->add_option("--R", big_r)->required()->check(CLI::PositiveNumber);

  unsigned tower = 0;
  std::int64_t k = 0;
  std::optional<std::int64_t> k_max;
  std::string set_a = "E:0:0";
  std::string set_b = "E:0:0";
  auto* simulate_cmd = app.add_subcommand("simulate", "mu(A n T^k B) in tower N; sets as JSON, @file, E:n:i or X:n");
  simulate_cmd->add_option("--tower", tower)->required();
  simulate_cmd->add_option("--k", k)->required();
  simulate_cmd->add_option("--k-max", k_max, "Tabulate k..k-max");
  simulate_cmd->add_option("--set-a", set_a);
  simulate_cmd->add_option("--set-b", set_b);

  auto* weak_cmd = app.add_subcommand("weak-error", "Distance between mu(A n T^(m h_n + u) B) and its pi_m average");
  weak_cmd->add_option("--tower", tower)->required();
  weak_cmd->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  weak_cmd->add_option("--u", u);
  weak_cmd->add_option("--set-a", set_a);
  weak_cmd->add_option("--set-b", set_b);

  std::string pattern;
  std::optional<std::int64_t> term;
  unsigned gap = 4;
  auto* classify_cmd = app.add_subcommand("classify", "Weak limit of a digit pattern or of one large term");
  auto* pattern_opt = classify_cmd->add_option("--pattern", pattern, "e.g. \"head=1,1 tail=zero\"");
  auto* term_opt = classify_cmd->add_option("--term", term, "Classify a single term k");
  pattern_opt->excludes(term_opt);
  classify_cmd->add_option("--gap", gap, "Run length separating scales")->check(CLI::PositiveNumber);

  std::string ms_text;
  std::int64_t shift = 0;
  unsigned j = 12;
  auto* synth_cmd = app.add_subcommand("synthesize", "Term k_j whose powers tend to P_m1...P_mr U^n");
  synth_cmd->add_option("--ms", ms_text, "Comma separated m_i");
  synth_cmd->add_option("--n", shift);
  synth_cmd->add_option("--j", j)->check(CLI::PositiveNumber);

  auto* audit_cmd = app.add_subcommand("audit", "Check that no enumerated limit is alpha Theta + (1-alpha) Id");
  audit_cmd->add_option("--R", big_r)->required()->check(CLI::PositiveNumber);
  audit_cmd->add_option("--M", big_m)->required()->check(CLI::PositiveNumber);

  std::vector<std::string> suites;
  auto* verify_cmd = app.add_subcommand("verify-all", "Run every invariant suite");
  verify_cmd->add_option("--suite", suites, "Run only the named suites")
      ->check(CLI::IsMember(verify::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  triadic::OracleConfig oracle_cfg{rc.oracle_budget};
  towers::TowerConfig tower_cfg;
  tower_cfg.depth_budget = rc.depth_budget;
  const poly::PolyConfig poly_cfg;

  try {
    if (*pm_cmd) {
      print_mass(poly::pm(m, poly_cfg), rc);
    } else if (*oracle_cmd) {
      print_mass(triadic::pi_exact(m, oracle_cfg), rc);
    } else if (*reduced_cmd) {
      const auto& r = poly::reduced_pm(m, poly_cfg);
      if (rc.json()) {
        std::cout << io::json{{"ell", r.ell}, {"degree", r.degree}, {"reduced", io::atoms_json(r.reduced)}}.dump()
                  << '\n';
      } else {
        std::cout << "ell,degree,reduced\n" << r.ell << ',' << r.degree << ',' << to_string(r.reduced) << '\n';
      }
    } else if (*degree_cmd) {
      print_scalar("degree", std::to_string(poly::reduced_pm(m, poly_cfg).degree), rc);
    } else if (*first_cmd) {
      print_scalar("m", std::to_string(poly::first_m_of_degree(d)), rc);
    } else if (*delta_cmd) {
      const MassFunction v = parse_mass_function(join_args(atoms_a));
      if (rc.json()) {
        std::cout << io::json{{"delta", io::rational_json(analysis::delta(v))},
                              {"sup_atom", io::rational_json(analysis::sup_atom(v))}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "delta,sup_atom\n"
                  << format_rational(analysis::delta(v)) << ',' << format_rational(analysis::sup_atom(v)) << '\n';
      }
    } else if (*convolve_cmd) {
      print_mass(convolve(parse_mass_function(conv_a), parse_mass_function(atoms_b)), rc);
    } else if (*fourier_cmd) {
      const auto report = analysis::check_fourier_bound(m_max, rc.grid, 1e-9, poly_cfg);
      std::cout << (rc.json() ? io::to_json(report).dump() + "\n" : io::fourier_csv(report));
      return report.pass ? 0 : 1;
    } else if (*decay_cmd) {
      analysis::DecayConfig dc;
      dc.grid = rc.grid;
      const auto report = analysis::convolution_decay_report(big_m, big_r, dc, poly_cfg);
      std::cout << (rc.json() ? io::to_json(report).dump() + "\n" : io::decay_csv(report));
    } else if (*simulate_cmd) {
      const auto a = io::parse_set_spec(set_a, tower);
      const auto b = io::parse_set_spec(set_b, tower);
      std::vector<std::pair<std::int64_t, Rational>> rows;
      const std::int64_t last = k_max.value_or(k);
      if (last < k) throw std::invalid_argument("--k-max must be at least --k");
      for (std::int64_t step = k; step <= last; ++step) {
        rows.emplace_back(step, towers::correlation(a, b, step, tower_cfg));
      }
      std::cout << (rc.json() ? io::correlation_json(rows).dump() + "\n" : io::correlation_csv(rows));
    } else if (*weak_cmd) {
      const auto a = io::parse_set_spec(set_a, tower);
      const auto b = io::parse_set_spec(set_b, tower);
      print_scalar("error", format_rational(towers::weak_limit_error(tower, m, u, a, b, tower_cfg, poly_cfg)), rc);
    } else if (*classify_cmd) {
      if (term) {
        print_limit(weak::classify_term(*term, {gap}, poly_cfg), rc);
      } else if (!pattern.empty()) {
        print_limit(weak::classify(weak::parse_pattern(pattern), poly_cfg), rc);
      } else {
        throw std::invalid_argument("classify needs --pattern or --term");
      }
    } else if (*synth_cmd) {
      const auto ms = parse_ms(ms_text);
      const std::int64_t kj = weak::synthesize_sequence(ms, shift, j);
      const auto limit = weak::product_limit(ms, shift, poly_cfg);
      if (rc.json()) {
        std::cout << io::json{{"k", kj}, {"limit", io::to_json(limit)}}.dump() << '\n';
      } else {
        std::cout << "k,limit\n" << kj << ',' << to_string(limit) << '\n';
      }
    } else if (*audit_cmd) {
      const auto report = weak::audit_alpha_weak_mixing(big_r, big_m, {}, poly_cfg);
      if (rc.json()) {
        std::cout << io::to_json(report).dump() << '\n';
      } else {
        std::cout << "R,M,checked,largest_supatom,fewest_atoms,no_alpha_mixing,pass\n"
                  << report.max_r << ',' << report.max_m << ',' << report.checked << ','
                  << format_rational(report.largest_sup_atom) << ',' << report.fewest_atoms << ','
                  << report.no_alpha_mixing << ',' << report.pass << '\n';
        for (const auto& f : report.failures) std::cerr << "failure: " << f.reason << '\n';
      }
      return report.pass ? 0 : 1;
    } else if (*verify_cmd) {
      verify::VerifyConfig vc;
      vc.oracle = oracle_cfg;
      vc.tower = tower_cfg;
      vc.tower_max = rc.tower_max;
      vc.grid = rc.grid;
      vc.seed = rc.seed;
      if (suites.empty()) suites = verify::suite_names();
      bool all = true;
      io::json results = io::json::array();
      if (!rc.json()) std::cout << "suite,pass,seconds,detail\n";
      for (const auto& name : suites) {
        const auto r = verify::run_suite(name, vc);
        all = all && r.pass;
        if (rc.json()) {
          results.push_back({{"suite", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        } else {
          std::cout << r.name << ',' << (r.pass ? "PASS" : "FAIL") << ',' << r.seconds << ",\"" << r.detail
                    << "\"" << std::endl;
        }
        if (!r.pass) std::cerr << "failed: " << r.name << ": " << r.detail << '\n';
      }
      if (rc.json()) std::cout << results.dump() << '\n';
      return all ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_budget;
  } catch (const UnderDetermined& e) {
    std::cerr << "error: under-determined: " << e.what() << '\n';
    return exit_underdetermined;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
