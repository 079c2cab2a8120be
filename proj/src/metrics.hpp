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

#ifndef WLPR_METRICS_HPP
#define WLPR_METRICS_HPP

#include <string>
#include <vector>

#include "masks.hpp"

namespace wlpr {

/// Even-normalized degree: the d and d+1 schemes coincide for even d, so
/// capability metrics are computed at d' = 2 floor(d/2).
inline int even_degree(int d) { return d - d % 2; }

/// Finite-bandwidth approximation constant
/// max(|sum a0_l l^(d+1)|, |sum a1_l (l-1/2)^(d+1)|).
double eta_constant(const Mask& mask, int degree);

/// Asymptotic normalized mask shape H(t) = lim n a_{tn}; even in t.
/// d = 0,1: phi(|t|)/(2 I0); d = 2,3: phi(|t|) (I4 - t^2 I2)/(2(I0 I4 - I2^2)).
struct HProfile {
  WeightKernel kernel;
  int degree;
  double I0, I2, I4, D;
  double operator()(double t) const;
};
HProfile h_profile(const WeightKernel& kernel, int degree, double tol = 1e-12);

/// (approx_const, h_l2sq) = (2 |I_m(H)| with m = d'+2, 2 integral of H^2
/// over [0,1] doubled). Lower approx_const means better approximation,
/// lower h_l2sq better asymptotic denoising.
std::pair<double, double> approx_denoise_scores(const WeightKernel& kernel,
                                                int degree,
                                                double tol = 1e-11);

/// max of the squared l2 norms of the sub-masks: per-step variance factor
/// on white noise.
double denoise_factor(const Mask& mask);

struct ParetoPoint {
  double p = 0, q = 0;
  double approx_const = 0, h_l2sq = 0;
  bool dominated = false;
  std::string label;  // set for the named reference kernels
};

/// Evaluates the two objectives over a (p, q) grid (p linear, q log-spaced)
/// plus the named reference kernels (rect as the q->0 limit, the classic
/// power aliases, and pq:4:5); marks non-dominated points. Ranges must stay
/// inside p in [1,20], q in [1/2,20].
std::vector<ParetoPoint> pareto_front(int degree, double p_min, double p_max,
                                      double q_min, double q_max, int steps);

/// Leading approximation error term for data F sampled at spacing h and a
/// scheme of half-width n: approx_const * deriv_bound * (h n)^m / m!.
double predicted_approx_error(const WeightKernel& kernel, int degree, double h,
                              double n, double deriv_bound);

}  // namespace wlpr

#endif  // WLPR_METRICS_HPP
