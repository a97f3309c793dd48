#include "chacon/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace chacon::io {

namespace {

std::string digits_string(const triadic::TriadicWord& w) {
  std::string out;
  for (auto d : w.digits()) out += static_cast<char>('0' + d);
  return out;
}

std::string witness_string(const std::vector<std::uint64_t>& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ms[i]);
  }
  return out;
}

std::string integer_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw std::invalid_argument("expected an integer or an integer string, got " + j.dump());
}

std::vector<std::int64_t> parse_index_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw std::invalid_argument("bad level index '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty level list");
  return out;
}

unsigned parse_tower(std::string_view text) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(std::string(text), &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != text.size() || v > 39) throw std::invalid_argument("bad tower index '" + std::string(text) + "'");
  return static_cast<unsigned>(v);
}

}  // namespace

json rational_json(const Rational& q) {
  return {{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Rational rational_from_json(const json& j) {
  return parse_rational(integer_string(j.at("num")) + "/" + integer_string(j.at("den")));
}

json atoms_json(const MassFunction& v) {
  json out = json::array();
  for (const auto& [at, mass] : v.atoms()) {
    out.push_back({{"j", at}, {"num", numerator(mass).str()}, {"den", denominator(mass).str()}});
  }
  return out;
}

MassFunction atoms_from_json(const json& j) {
  MassFunction v;
  for (const auto& atom : j) v.add(atom.at("j").get<std::int64_t>(), rational_from_json(atom));
  return v;
}

json to_json(const weak::LimitOperator& op) {
  return {{"theta", rational_json(op.theta_mass)}, {"atoms", atoms_json(op.nu)}};
}

weak::LimitOperator limit_operator_from_json(const json& j) {
  weak::LimitOperator op{atoms_from_json(j.at("atoms")), rational_from_json(j.at("theta"))};
  if (op.nu.total() + op.theta_mass != 1) throw std::invalid_argument("limit operator masses must sum to 1");
  return op;
}

json to_json(const towers::LevelSet& s) {
  json cells = json::array();
  for (const auto& c : s.cells) {
    json cell = {{"cyl", digits_string(c.base.cylinder)}, {"level", c.level}};
    if (c.base.tail != towers::Tail::Free) cell["tail"] = to_string(c.base.tail);
    cells.push_back(std::move(cell));
  }
  return {{"tower", s.tower}, {"cells", std::move(cells)}};
}

towers::LevelSet level_set_from_json(const json& j) {
  towers::LevelSet s;
  s.tower = j.at("tower").get<unsigned>();
  for (const auto& cell : j.at("cells")) {
    towers::Cell c;
    c.base.cylinder = triadic::TriadicWord::parse(cell.at("cyl").get<std::string>());
    c.level = cell.at("level").get<std::int64_t>();
    if (cell.contains("tail")) c.base.tail = towers::parse_tail(cell.at("tail").get<std::string>());
    s.cells.push_back(std::move(c));
  }
  towers::validate(s);
  return s;
}

towers::LevelSet parse_set_spec(std::string_view spec, unsigned tower) {
  towers::LevelSet s;
  if (!spec.empty() && spec.front() == '@') {
    const std::string path(spec.substr(1));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file '" + path + "'");
    s = level_set_from_json(json::parse(in));
  } else if (!spec.empty() && spec.front() == '{') {
    s = level_set_from_json(json::parse(spec));
  } else if (spec.rfind("E:", 0) == 0) {
    const auto rest = spec.substr(2);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("expected E:n:i, got '" + std::string(spec) + "'");
    s = towers::levels(parse_tower(rest.substr(0, colon)), parse_index_list(rest.substr(colon + 1)));
  } else if (spec.rfind("X:", 0) == 0) {
    s = towers::full_space(parse_tower(spec.substr(2)));
  } else {
    throw std::invalid_argument("unrecognized set '" + std::string(spec) + "' (use JSON, @file, E:n:i or X:n)");
  }
  return towers::lift(s, tower);
}

std::string decay_csv(const analysis::DecayReport& report) {
  std::ostringstream out;
  out << "r,max_delta_num,max_delta_den,max_supatom_num,max_supatom_den,beta_integral_bound_float\n";
  out << std::setprecision(12);
  for (const auto& row : report.rows) {
    out << row.r << ',' << numerator(row.max_delta) << ',' << denominator(row.max_delta) << ','
        << numerator(row.max_sup_atom) << ',' << denominator(row.max_sup_atom) << ',' << row.beta_integral
        << '\n';
  }
  return out.str();
}

json to_json(const analysis::DecayReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"r", row.r},
                    {"max_delta", rational_json(row.max_delta)},
                    {"max_delta_witness", witness_string(row.max_delta_witness)},
                    {"max_supatom", rational_json(row.max_sup_atom)},
                    {"max_supatom_witness", witness_string(row.max_sup_atom_witness)},
                    {"beta_integral_bound_float", row.beta_integral},
                    {"tuples", row.tuples}});
  }
  return {{"M", report.max_m}, {"R", report.max_r}, {"rows", std::move(rows)}};
}

std::string fourier_csv(const analysis::FourierReport& report) {
  std::ostringstream out;
  out << "m,degree,worst_margin_float,worst_k,pass\n";
  out << std::setprecision(12);
  for (const auto& row : report.rows) {
    out << row.m << ',' << row.degree << ',' << row.worst_margin << ',' << row.worst_k << ','
        << (row.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

json to_json(const analysis::FourierReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"m", row.m},
                    {"degree", row.degree},
                    {"worst_margin_float", row.worst_margin},
                    {"worst_k", row.worst_k},
                    {"pass", row.pass}});
  }
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"m", v.m}, {"k", v.k}, {"value", v.value}, {"bound", v.bound}});
  }
  return {{"m_max", report.m_max},     {"grid", report.grid},
          {"tolerance", report.tolerance}, {"pass", report.pass},
          {"rows", std::move(rows)},   {"violations", std::move(violations)}};
}

std::string correlation_csv(const std::vector<std::pair<std::int64_t, Rational>>& rows) {
  std::ostringstream out;
  out << "k,num,den\n";
  for (const auto& [k, q] : rows) out << k << ',' << numerator(q) << ',' << denominator(q) << '\n';
  return out.str();
}

json correlation_json(const std::vector<std::pair<std::int64_t, Rational>>& rows) {
  json out = json::array();
  for (const auto& [k, q] : rows) out.push_back({{"k", k}, {"num", numerator(q).str()}, {"den", denominator(q).str()}});
  return out;
}

json to_json(const weak::AuditReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) failures.push_back({{"ms", witness_string(f.ms)}, {"reason", f.reason}});
  return {{"R", report.max_r},
          {"M", report.max_m},
          {"checked", report.checked},
          {"largest_supatom", rational_json(report.largest_sup_atom)},
          {"largest_supatom_witness", witness_string(report.largest_sup_atom_witness)},
          {"fewest_atoms", report.fewest_atoms},
          {"no_alpha_mixing", report.no_alpha_mixing},
          {"failures", std::move(failures)},
          {"pass", report.pass}};
}

}  // namespace chacon::io
