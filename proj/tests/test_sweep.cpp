// Copyright 2026 The cpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cpdc/sweep.hpp"

namespace cpdc {
namespace {

std::size_t column(const CsvTable& t, std::string_view name) {
  for (std::size_t k = 0; k < t.header.size(); ++k)
    if (t.header[k] == name) return k;
  FAIL("missing column " << name);
  return 0;
}

double cell(const CsvTable& t, std::size_t row, std::string_view name) {
  return std::stod(t.rows.at(row).at(column(t, name)));
}

SweepConfig small_length_sweep(double from, double to, int steps) {
  SweepConfig c = preset("fig2");
  c.start = from;
  c.stop = to;
  c.steps = steps;
  return c;
}

TEST_CASE("doubles print in shortest round-trip form", "[sweep]") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(20.0) == "20");
  CHECK(format_double(-0.0) == "-0");
  for (double x : {1.0 / 3, 2.0 / 7e-9, std::numbers::pi, 1e-300}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
}

TEST_CASE("grids include both end points", "[sweep]") {
  const auto g = small_length_sweep(0.01, 0.02, 2).grid();
  REQUIRE(g.size() == 2);
  CHECK(g[0] == 0.01);
  CHECK(g[1] == 0.02);
  const auto fig2 = preset("fig2").grid();
  CHECK(fig2.size() == 2000);
  CHECK(fig2.back() == 20.0);
  for (std::size_t k = 0; k < fig2.size(); ++k)
    CHECK(std::abs(fig2[k] - 0.01 * static_cast<double>(k + 1)) < 1e-12);
}

TEST_CASE("presets and validation", "[sweep]") {
  CHECK(preset("fig4").steps == 2000);
  CHECK(preset("fig6").variable == SweepVariable::Length);
  CHECK(preset("fig7").variable == SweepVariable::Psi);
  CHECK_THROWS_AS(preset("fig3"), Error);
  CHECK_THROWS_AS(small_length_sweep(1.0, 0.5, 10).validate(), Error);
  CHECK_THROWS_AS(small_length_sweep(0.0, 1.0, 1).validate(), Error);
  CHECK_THROWS_AS(small_length_sweep(-1.0, 1.0, 5).validate(), Error);
  SweepConfig psi = preset("fig7");
  psi.stop = 2.0;
  CHECK_THROWS_AS(psi.validate(), Error);
}

TEST_CASE("a trivial length sweep", "[sweep]") {
  const CsvTable t = run_sweep(small_length_sweep(0.01, 0.02, 2));
  CHECK(t.header.size() == std::size(kLengthColumns));
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) CHECK(r.size() == t.header.size());
  CHECK(t.rows[0][column(t, "status")] == "ok");
  const std::string csv = to_csv(t);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("undefined coherence leaves an empty field", "[sweep]") {
  const CsvTable t = run_sweep(small_length_sweep(0.0, 1.0, 3));
  CHECK(t.rows[0][column(t, "gamma")].empty());
  CHECK(t.rows[0][column(t, "gamma_defined")] == "0");
  CHECK(t.rows[0][column(t, "status")].find("undefined_gamma") != std::string::npos);
  CHECK(t.rows[1][column(t, "gamma_defined")] == "1");
}

TEST_CASE("column selection", "[sweep]") {
  SweepConfig c = small_length_sweep(0.5, 1.0, 3);
  c.columns = {"L", "gamma"};
  const CsvTable t = run_sweep(c);
  CHECK(t.header == std::vector<std::string>{"L", "gamma"});
  CHECK(t.rows[2][0] == "1");
  c.columns = {"nope"};
  CHECK_THROWS_AS(run_sweep(c), Error);
}

TEST_CASE("thread count does not change the output", "[sweep]") {
  SweepConfig c = small_length_sweep(0.01, 5.0, 97);
  const std::string one = to_csv(run_sweep(c));
  c.threads = 4;
  CHECK(to_csv(run_sweep(c)) == one);
  c.threads = 200;
  CHECK(to_csv(run_sweep(c)) == one);
}

TEST_CASE("the cascaded-device sweep", "[sweep]") {
  const CsvTable t = run_sweep(preset("fig7"));
  REQUIRE(t.rows.size() == 100);
  CHECK(std::abs(cell(t, 0, "gamma")) < 1e-9);
  CHECK(std::abs(std::abs(cell(t, 99, "gamma")) - 1.0) < 1e-6);
  CHECK(std::abs(cell(t, 99, "ou_g2")) < 1e-8);
}

TEST_CASE("column descriptions list every column", "[sweep]") {
  const std::string d = describe_columns();
  for (const auto& c : kLengthColumns) CHECK(d.find(c.name) != std::string::npos);
  for (const auto& c : kPsiColumns) CHECK(d.find(c.name) != std::string::npos);
}

TEST_CASE("oracle check", "[sweep]") {
  const ContinuousDevice d{0.1, 0.3, 3.0, 0.0};
  const std::vector<double> lengths{0.0, 0.5, 1.0, 1.5, 2.0};
  const OracleReport rep = oracle_check(d, lengths, 4);
  CHECK(rep.within_tolerance());
  REQUIRE(rep.points.size() == 5);
  CHECK_FALSE(rep.points[0].gamma_deviation);
  CHECK(rep.points[0].intensity_deviation == 0.0);
  for (const auto& p : rep.points) CHECK(p.leakage < 1e-4);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(oracle_check({1.0, 1.0, 0.5, 0.0}, one, 4), Error);
}

}  // namespace
}  // namespace cpdc
