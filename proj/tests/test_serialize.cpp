/*
 *   Copyright 2026 The wlpr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "experiments.hpp"
#include "serialize.hpp"

using namespace wlpr;

TEST_CASE("mask json round trip") {
  Mask m = build_mask(SchemeSpec::make(WeightKernel::tria(), 3.5, 0));
  json j = mask_to_json(m);
  CHECK(j.at("situation") == "odd-longer");
  Mask back = mask_from_json(j);
  CHECK(back.even == m.even);
  CHECK(back.odd == m.odd);
  CHECK(back.even_first == m.even_first);
  CHECK(back.odd_first == m.odd_first);
}

TEST_CASE("rational mask json round trips bit-exactly") {
  SchemeSpec spec = SchemeSpec::make(WeightKernel::tria(), 2.5, 0);
  RationalMask rm =
      build_mask_rational(WeightKernel::tria(), Rat::from_decimal("2.5"), 0);
  json j = mask_to_json(rm, spec);
  REQUIRE(j.contains("even_exact"));
  auto back = rational_mask_from_json(j);
  REQUIRE(back.has_value());
  REQUIRE(back->even.size() == rm.even.size());
  for (size_t i = 0; i < rm.even.size(); ++i) CHECK(back->even[i] == rm.even[i]);
  for (size_t i = 0; i < rm.odd.size(); ++i) CHECK(back->odd[i] == rm.odd[i]);
  CHECK_FALSE(rational_mask_from_json(mask_to_json(build_mask(spec))));
}

TEST_CASE("mask report fields") {
  json rep = mask_report(build_mask(SchemeSpec::make(WeightKernel::epan(), 4.5, 0)));
  CHECK(rep.at("even_sum").get<double>() == doctest::Approx(1.0));
  CHECK(rep.at("odd_sum").get<double>() == doctest::Approx(1.0));
  CHECK(rep.at("positive").get<bool>());
  CHECK(rep.at("symmetry_defect").get<double>() <= 1e-12);
  CHECK(rep.at("difference_norms").at("q0_l1").get<double>() < 1.0);
}

TEST_CASE("csv round trip for scalar and planar data") {
  Series planar = star_curve_samples(10);
  std::ostringstream out;
  write_series_csv(out, planar, {"meta line"});
  std::istringstream in(out.str());
  Series back = read_series_csv(in);
  CHECK(back.dim == 2);
  REQUIRE(back.values.size() == planar.values.size());
  for (size_t i = 0; i < planar.values.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(planar.values[i]).epsilon(1e-15));

  Series scalar;
  scalar.dim = 1;
  scalar.values = {1.5, -2.25, 3.75};
  std::ostringstream out2;
  write_series_csv(out2, scalar, {});
  std::istringstream in2(out2.str());
  Series back2 = read_series_csv(in2);
  CHECK(back2.dim == 1);
  CHECK(back2.values == scalar.values);
}

TEST_CASE("csv reader accepts bare value rows and headers") {
  std::istringstream in("x,y\n# comment\n 1.0, 2.0\n3;4\n5\t6\n");
  Series s = read_series_csv(in);
  CHECK(s.dim == 2);
  CHECK(s.count() == 3);
  CHECK(s.at(2, 1) == 6.0);

  std::istringstream bad("1,2\nfoo,bar\n");
  CHECK_THROWS_AS(read_series_csv(bad), Error);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_series_csv(empty), Error);
  std::istringstream wide("1,2,3,4\n");
  CHECK_THROWS_AS(read_series_csv(wide), Error);
}

TEST_CASE("json series round trip") {
  Series planar = star_curve_samples(6);
  planar.level = 2;
  json j = series_to_json(planar, {"note"});
  CHECK(j.at("step").get<double>() == 0.25);
  Series back = series_from_json(j);
  CHECK(back.dim == 2);
  CHECK(back.level == 2);
  CHECK(back.values == planar.values);

  Series scalar;
  scalar.dim = 1;
  scalar.values = {0.5, 1.5};
  Series back1 = series_from_json(series_to_json(scalar));
  CHECK(back1.dim == 1);
  CHECK(back1.values == scalar.values);

  CHECK_THROWS_AS(series_from_json(json{{"values", json::array()}}), Error);
  CHECK_THROWS_AS(
      series_from_json(json{{"dim", 2}, {"values", {1.0, 2.0}}}), Error);
}

TEST_CASE("series files dispatch on extension") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "wlpr_serialize_test";
  fs::create_directories(dir);
  Series s;
  s.dim = 1;
  s.values = {1, 2, 3};
  write_series_file((dir / "a.json").string(), s, {});
  write_series_file((dir / "a.csv").string(), s, {});
  CHECK(read_series_file((dir / "a.json").string()).values == s.values);
  CHECK(read_series_file((dir / "a.csv").string()).values == s.values);
  CHECK_THROWS_AS(read_series_file((dir / "missing.csv").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("boundary names parse") {
  CHECK(parse_boundary("periodic") == Boundary::Periodic);
  CHECK(parse_boundary("constant") == Boundary::ConstantExtend);
  CHECK(parse_boundary("reflect") == Boundary::ReflectExtend);
  CHECK_THROWS_AS(parse_boundary("wrap"), Error);
}

TEST_CASE("convergence report serialization") {
  ConvergenceReport rep = certify_rect_d3_exact(10);
  json j = convergence_report_to_json(rep, true);
  CHECK(j.at("verdict") == "convergent-direct-inspection");
  CHECK(j.at("max_norm_exact") == "29/42");
  CHECK(j.at("norms").size() == 9);
  std::string text = convergence_report_text(rep);
  CHECK(text.find("29/42") != std::string::npos);
}

TEST_CASE("experiment config round trip") {
  json j = {{"name", "star-curve"},
            {"kernel", "bisq"},
            {"lambda", 15.5},
            {"degree", 2},
            {"levels", 5},
            {"noise",
             {{"distribution", "normal"}, {"sigma", 0.5}, {"seed", 42}}}};
  ExperimentConfig cfg = experiment_config_from_json(j);
  CHECK(cfg.kernel == "bisq");
  CHECK(cfg.noise.kind == NoiseSpec::Kind::Normal);
  CHECK(cfg.noise.seed == 42);
  json back = experiment_config_to_json(cfg);
  CHECK(back.at("noise").at("rng") == kRngName);
  CHECK_THROWS_AS(
      experiment_config_from_json(json{{"name", "unknown-experiment"}}),
      Error);
}
