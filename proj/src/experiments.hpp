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

#ifndef WLPR_EXPERIMENTS_HPP
#define WLPR_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "serialize.hpp"

namespace wlpr {

/// Deterministic noise source used by the experiments; the generator name is
/// recorded in output metadata so runs stay reproducible across builds.
inline constexpr const char* kRngName = "mt19937_64/box-muller-v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    // 53-bit mantissa from the top bits, identical on every platform.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  double normal(double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform01();
    double u2 = uniform01();
    double m = std::sqrt(-2.0 * std::log(u1));
    spare_ = m * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return m * std::cos(2.0 * M_PI * u2) * sigma;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct NoiseSpec {
  enum class Kind { None, Normal, Uniform };
  Kind kind = Kind::None;
  double sigma = 0.0;       // Normal
  double a = 0.0, b = 0.0;  // Uniform
  std::uint64_t seed = 0;
};

enum class ExperimentName {
  StarCurve,
  LambdaScaling,
  Gibbs,
  Staircase,
  BasicLimits,
};

struct ExperimentConfig {
  ExperimentName name = ExperimentName::StarCurve;
  std::string kernel = "rect";
  double lambda = 3.7;
  int degree = 0;
  int levels = 5;
  int scaling_index = 1;  // LambdaScaling: k with h = 10^-k, lambda = 3.5 + 0.1/h
  NoiseSpec noise;
  std::string out_dir;  // empty: no files written
};

ExperimentConfig experiment_config_from_json(const json& j);
json experiment_config_to_json(const ExperimentConfig& cfg);

/// Runs the experiment, writes CSV outputs under cfg.out_dir (when set) and
/// returns the summary (error norms, variance ratios, golden comparisons).
json run_experiment(const ExperimentConfig& cfg);

// Built-in data generators (also used by the test suites).
std::array<double, 2> star_curve_point(double t);
Series star_curve_samples(int count = 50);           // t_j = j pi/25
Series gibbs_step_samples();                          // 33 samples on [0,1]
Series staircase_samples();                           // monotone staircase
Series cosine_samples(double h, long half_width);     // cos(pi x) around 0

}  // namespace wlpr

#endif  // WLPR_EXPERIMENTS_HPP
