#include <cstdio>
#include <fstream>

#include "chacon/serialize.hpp"
#include "doctest.h"

using namespace chacon;
using namespace chacon::io;

TEST_CASE("rationals travel as strings") {
  const Rational big = parse_rational("123456789012345678901234567891/2");
  const auto j = rational_json(big);
  CHECK(j.at("num") == "123456789012345678901234567891");
  CHECK(j.at("den") == "2");
  CHECK(rational_from_json(j) == big);
  CHECK(rational_from_json(json{{"num", 3}, {"den", 6}}) == Rational(1, 2));
}

TEST_CASE("limit operator json") {
  const auto op = weak::product_limit({1}, 2);
  const auto j = to_json(op);
  CHECK(j.dump() ==
        R"({"theta":{"num":"0","den":"1"},"atoms":[{"j":2,"num":"1","den":"2"},{"j":3,"num":"1","den":"2"}]})");
  CHECK(limit_operator_from_json(j) == op);
  CHECK(limit_operator_from_json(to_json(weak::LimitOperator::theta())) == weak::LimitOperator::theta());
}

TEST_CASE("level set json round trip") {
  const auto s = towers::t_apply(towers::level(0, 0), 1);
  const auto j = to_json(s);
  CHECK(j.at("tower") == 0);
  const auto back = level_set_from_json(j);
  CHECK(towers::same_footprint(back, s));
  CHECK(towers::measure(back) == towers::measure(s));
  const auto plain = level_set_from_json(json::parse(R"({"tower": 1, "cells": [{"cyl": "01", "level": 2}]})"));
  CHECK(towers::measure(plain) == Rational(2, 81));
  CHECK_THROWS(level_set_from_json(json::parse(R"({"tower": 1, "cells": [{"cyl": "", "level": 9}]})")));
}

TEST_CASE("set specs") {
  CHECK(towers::same_footprint(parse_set_spec("E:1:0", 1), towers::level(1, 0)));
  CHECK(towers::same_footprint(parse_set_spec("E:0:0", 1), towers::levels(1, {0, 1, 3})));
  CHECK(towers::same_footprint(parse_set_spec("E:2:1,3", 2), towers::levels(2, {1, 3})));
  CHECK(towers::measure(parse_set_spec("X:1", 3)) == 1);
  CHECK(towers::measure(parse_set_spec(R"({"tower": 1, "cells": [{"cyl": "", "level": 0}]})", 1)) == Rational(2, 9));
  const std::string path = "chacon_set_spec_test.json";
  {
    std::ofstream out(path);
    out << R"({"tower": 0, "cells": [{"cyl": "", "level": 0}]})";
  }
  CHECK(towers::measure(parse_set_spec("@" + path, 0)) == Rational(2, 3));
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_set_spec("Q:1", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_set_spec("E:2:1", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_set_spec("@/nonexistent/file.json", 1), std::invalid_argument);
}

TEST_CASE("csv exports") {
  const auto report = analysis::convolution_decay_report(1, 2);
  const auto csv = decay_csv(report);
  CHECK(csv.rfind("r,max_delta_num,max_delta_den,max_supatom_num,max_supatom_den,beta_integral_bound_float\n", 0) == 0);
  CHECK(csv.find("\n1,1,1,1,2,") != std::string::npos);
  CHECK(correlation_csv({{4, Rational(1, 9)}, {5, Rational(0)}}) == "k,num,den\n4,1,9\n5,0,1\n");
}
