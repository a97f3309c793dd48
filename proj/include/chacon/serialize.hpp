#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chacon/analysis.hpp"
#include "chacon/mass_function.hpp"
#include "chacon/towers.hpp"
#include "chacon/weaklimits.hpp"

// JSON and CSV exporters. Rationals never go through floating point: JSON
// carries "num" and "den" as decimal strings, text and CSV use "num/den" or
// separate integer columns.
namespace chacon::io {

using json = nlohmann::ordered_json;

json rational_json(const Rational& q);
Rational rational_from_json(const json& j);

/// [{"j": .., "num": .., "den": ..}, ...] sorted by j.
json atoms_json(const MassFunction& v);
MassFunction atoms_from_json(const json& j);

/// {"theta": {"num", "den"}, "atoms": [...]}
json to_json(const weak::LimitOperator& op);
weak::LimitOperator limit_operator_from_json(const json& j);

/// {"tower": n, "cells": [{"cyl": "LSD-first digits", "level": i}, ...]}.
/// Cells with a tail condition also carry "tail".
json to_json(const towers::LevelSet& s);
towers::LevelSet level_set_from_json(const json& j);

/// Set description on the command line: a JSON object, "@path" to a JSON
/// file, "E:n:i" (one level of tower n), "E:n:i,j,.." (several levels) or
/// "X:n" (all of X_n). The result is lifted into `tower`.
towers::LevelSet parse_set_spec(std::string_view spec, unsigned tower);

std::string decay_csv(const analysis::DecayReport& report);
json to_json(const analysis::DecayReport& report);

std::string fourier_csv(const analysis::FourierReport& report);
json to_json(const analysis::FourierReport& report);

/// Columns k, num, den.
std::string correlation_csv(const std::vector<std::pair<std::int64_t, Rational>>& rows);
json correlation_json(const std::vector<std::pair<std::int64_t, Rational>>& rows);

json to_json(const weak::AuditReport& report);

}  // namespace chacon::io
