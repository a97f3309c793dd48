#pragma once

#include <stdexcept>
#include <string>

namespace chacon {

/// A configured resource budget (oracle states, refinement depth, step count,
/// tuple count, coefficient cap) would be exceeded by the request.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string budget, const std::string& detail)
      : std::runtime_error(budget + " budget exceeded: " + detail), budget_(std::move(budget)) {}

  const std::string& budget() const noexcept { return budget_; }

 private:
  std::string budget_;
};

/// The limit described by a digit pattern depends on data the pattern does not pin.
class UnderDetermined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chacon
