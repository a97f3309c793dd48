#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chacon/polyengine.hpp"
#include "chacon/towers.hpp"
#include "chacon/triadic.hpp"

// Named invariant suites run by `chacon verify-all` and the acceptance test.
namespace chacon::verify {

struct VerifyConfig {
  triadic::OracleConfig oracle;
  towers::TowerConfig tower;
  poly::PolyConfig poly;
  unsigned tower_max = 8;
  std::int64_t grid = 1024;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  /// Summary on success; failing property and witness otherwise.
  std::string detail;
  double seconds = 0;
};

/// Stable suite names, in run order.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name. Budget errors propagate.
SuiteResult run_suite(const std::string& name, const VerifyConfig& config = {});

std::vector<SuiteResult> run_all(const VerifyConfig& config = {});

}  // namespace chacon::verify
