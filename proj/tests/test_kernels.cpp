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

#include <cmath>

#include "kernels.hpp"
#include "quadrature.hpp"
#include "oracles.hpp"

using namespace wlpr;

namespace {

std::vector<WeightKernel> all_kernels() {
  return {WeightKernel::rect(), WeightKernel::tria(), WeightKernel::epan(),
          WeightKernel::bisq(), WeightKernel::tcub(), WeightKernel::trwt(),
          WeightKernel::exponential(3.0), WeightKernel::power(4, 5)};
}

}  // namespace

TEST_CASE("phi evaluation") {
  CHECK(WeightKernel::rect()(0.7) == 1.0);
  CHECK(WeightKernel::tria()(0.0) == 1.0);
  // (1 - 0.5^2)^2 evaluated directly
  CHECK(WeightKernel::bisq()(0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(WeightKernel::exponential(1.0)(1.0) ==
        doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(WeightKernel::tria()(1.5), Error);
  CHECK_THROWS_AS(WeightKernel::tria()(-0.1), Error);
}

TEST_CASE("phi bounds and monotonicity on a fine grid") {
  for (const WeightKernel& k : all_kernels()) {
    CAPTURE(k.spec_string());
    CHECK(k(0.0) == doctest::Approx(1.0));
    double prev = k(0.0);
    for (int i = 1; i <= 400; ++i) {
      double v = k(i / 400.0);
      CHECK(v >= -1e-15);
      CHECK(v <= 1.0 + 1e-15);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("kernel spec grammar round-trips") {
  for (const char* s :
       {"rect", "tria", "epan", "bisq", "tcub", "trwt", "exp:2.5", "pq:4:5"})
    CHECK(WeightKernel::parse(s).spec_string() ==
          WeightKernel::parse(WeightKernel::parse(s).spec_string())
              .spec_string());
  CHECK_THROWS_AS(WeightKernel::parse("box"), Error);
  CHECK_THROWS_AS(WeightKernel::parse("pq:4"), Error);
  CHECK_THROWS_AS(WeightKernel::parse("exp:-1"), Error);
  CHECK_THROWS_AS(WeightKernel::parse("pq:0.5:1"), Error);  // p >= 1
}

TEST_CASE("sampled weights") {
  SampledWeights w = sample_weights(WeightKernel::tria(), 2.5);
  CHECK(w.at(0) == doctest::Approx(1.0));
  CHECK(w.at(1) == doctest::Approx(0.6));   // 1 - 1/2.5
  CHECK(w.at(2) == doctest::Approx(0.2));   // 1 - 2/2.5
  CHECK(w.at(3) == 0.0);
  CHECK(w.at(-2) == w.at(2));

  SampledWeights r = sample_weights(WeightKernel::rect(), 3.7);
  for (long l = -3; l <= 3; ++l) CHECK(r.at(l) == 1.0);
  CHECK(r.at(4) == 0.0);

  CHECK_THROWS_AS(sample_weights(WeightKernel::tria(), 3.0), Error);
  CHECK_THROWS_AS(sample_weights(WeightKernel::tria(), 0.5), Error);
  CHECK_THROWS_AS(sample_weights(WeightKernel::tria(), 1.0), Error);
  // near-integer margin
  CHECK_THROWS_AS(sample_weights(WeightKernel::tria(), 3.0 + 1e-12), Error);
}

TEST_CASE("weights grow with the bandwidth") {
  for (const WeightKernel& k : all_kernels()) {
    CAPTURE(k.spec_string());
    SampledWeights w1 = sample_weights(k, 2.5);
    SampledWeights w2 = sample_weights(k, 4.5);
    CHECK(w1.at(0) == doctest::Approx(1.0));
    for (long l = 0; l <= w1.max_index(); ++l)
      CHECK(w1.at(l) <= w2.at(l) + 1e-15);
  }
}

TEST_CASE("moment integrals against closed forms") {
  auto poly_moment = [](std::vector<std::pair<double, int>> terms, int k) {
    // integral over [0,1] of sum c x^(e+k)
    double acc = 0;
    for (auto [c, e] : terms) acc += c / (e + k + 1);
    return acc;
  };
  // rect: x^k
  CHECK(WeightKernel::rect().moment(2) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  // tria: 1 - x
  CHECK(WeightKernel::tria().moment(0) ==
        doctest::Approx(poly_moment({{1, 0}, {-1, 1}}, 0)).epsilon(1e-13));
  // epan: 1 - x^2 -> I0 = 2/3
  CHECK(WeightKernel::epan().moment(0) == doctest::Approx(2.0 / 3).epsilon(1e-13));
  // bisq: 1 - 2x^2 + x^4
  CHECK(WeightKernel::bisq().moment(3) ==
        doctest::Approx(poly_moment({{1, 0}, {-2, 2}, {1, 4}}, 3)).epsilon(1e-13));
  // trwt: 1 - 3x^2 + 3x^4 - x^6
  CHECK(WeightKernel::trwt().moment(4) ==
        doctest::Approx(poly_moment({{1, 0}, {-3, 2}, {3, 4}, {-1, 6}}, 4))
            .epsilon(1e-13));
  // tcub: 1 - 3x^3 + 3x^6 - x^9
  CHECK(WeightKernel::tcub().moment(2) ==
        doctest::Approx(poly_moment({{1, 0}, {-3, 3}, {3, 6}, {-1, 9}}, 2))
            .epsilon(1e-13));
  // exp(1): antiderivative oracle for I0 = 1 - e^-1
  CHECK(WeightKernel::exponential(1.0).moment(0, 1e-10) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(WeightKernel::rect().moment(-1), Error);
}

TEST_CASE("derivative moments by parts match direct quadrature") {
  for (const WeightKernel& k : all_kernels()) {
    if (k.family() == KernelFamily::Rect) continue;
    CAPTURE(k.spec_string());
    for (int m : {2, 4}) {
      double direct = oracle::composite_simpson(
          [&](double x) { return k.derivative(x) * std::pow(x, m); }, 1e-9,
          1.0 - 1e-9, 40000);
      CHECK(k.derivative_moment(m) == doctest::Approx(direct).epsilon(5e-6));
    }
  }
}

TEST_CASE("Schwartz positivity of the moment matrix") {
  for (const WeightKernel& k : all_kernels()) {
    CAPTURE(k.spec_string());
    double d = k.moment(0) * k.moment(4) - k.moment(2) * k.moment(2);
    CHECK(d > 0.0);
  }
}

TEST_CASE("rational weight sampling") {
  CHECK(WeightKernel::rect().rational_exact());
  CHECK(WeightKernel::tria().rational_exact());
  CHECK(WeightKernel::power(4, 5).rational_exact());
  CHECK_FALSE(WeightKernel::exponential(2).rational_exact());
  CHECK_FALSE(WeightKernel::power(2.5, 1).rational_exact());

  std::vector<Rat> w =
      sample_weights_rational(WeightKernel::tria(), Rat::from_decimal("2.5"));
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Rat(1));
  CHECK(w[1] == Rat(3, 5));
  CHECK(w[2] == Rat(1, 5));
  CHECK_THROWS_AS(
      sample_weights_rational(WeightKernel::tria(), Rat::from_decimal("3")),
      Error);
}

TEST_CASE("quadrature reports an exhausted budget") {
  QuadratureOptions opts;
  opts.tol = 1e-15;
  opts.max_evals = 60;
  CHECK_THROWS_AS(
      integrate([](double x) { return std::sin(50.0 / (x + 0.01)); }, 0.0,
                1.0, opts),
      Error);
}

TEST_CASE("rational decimals parse exactly") {
  CHECK(Rat::from_decimal("3.7") == Rat(37, 10));
  CHECK(Rat::from_decimal("-0.25") == Rat(-1, 4));
  CHECK(Rat::from_decimal("15") == Rat(15));
  CHECK_THROWS_AS(Rat::from_decimal("1.2.3"), Error);
  CHECK(Rat::from_strings("-3", "7") == Rat(-3, 7));
}
