// Runs the thirteen acceptance criteria through the named suites and prints
// one line per criterion. A criterion passes when its suite passes within
// its time allowance.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "chacon/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* suite;
  double seconds_allowed;
};

const std::vector<Criterion> criteria = {
    {1, "oracle-equivalence", 120},        {2, "symmetry-unimodality", 120},
    {3, "degree-combinatorics", 180},      {4, "first-appearance", 60},
    {5, "fourier-bound", 300},             {6, "delta-monotonicity", 60},
    {7, "convolution-decay", 300},         {8, "simulator-exactness", 180},
    {9, "lemma1-convergence", 600},        {10, "roundtrip-classification", 120},
    {11, "theta-convergence", 600},        {12, "alpha-weak-mixing-audit", 180},
    {13, "window-identity", 60},
};

}  // namespace

int main() {
  const chacon::verify::VerifyConfig config;
  int failed = 0;
  for (const auto& c : criteria) {
    bool pass = false;
    std::string detail;
    double seconds = 0;
    try {
      const auto r = chacon::verify::run_suite(c.suite, config);
      seconds = r.seconds;
      pass = r.pass && r.seconds < c.seconds_allowed;
      detail = r.detail;
      if (r.pass && !pass) detail += " (over the time allowance)";
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    if (!pass) ++failed;
    std::printf("%-4s criterion %2d %-26s %8.3fs / %4.0fs  %s\n", pass ? "PASS" : "FAIL", c.number, c.suite, seconds,
                c.seconds_allowed, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
