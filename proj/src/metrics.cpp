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

#include "metrics.hpp"

#include <cmath>

#include "quadrature.hpp"

namespace wlpr {

double eta_constant(const Mask& mask, int degree) {
  if (degree < 0) fail(ErrorCode::InvalidArgument, "degree must be >= 0");
  long double se = 0, so = 0;
  for (size_t i = 0; i < mask.even.size(); ++i) {
    long double l = mask.even_first + static_cast<long>(i);
    se += mask.even[i] * std::pow(l, degree + 1);
  }
  for (size_t i = 0; i < mask.odd.size(); ++i) {
    long double l = mask.odd_first + static_cast<long>(i);
    so += mask.odd[i] * std::pow(l - 0.5L, degree + 1);
  }
  return std::max(std::abs(static_cast<double>(se)),
                  std::abs(static_cast<double>(so)));
}

HProfile h_profile(const WeightKernel& kernel, int degree, double tol) {
  if (degree < 0 || degree > 3)
    fail(ErrorCode::InvalidArgument, "H profile covers d = 0..3");
  HProfile h{kernel, degree, 0, 0, 0, 0};
  h.I0 = kernel.moment(0, tol);
  if (even_degree(degree) == 2) {
    h.I2 = kernel.moment(2, tol);
    h.I4 = kernel.moment(4, tol);
    h.D = h.I0 * h.I4 - h.I2 * h.I2;
    if (!(h.D > 0))
      fail(ErrorCode::InvalidArgument, "moment matrix not positive");
  }
  return h;
}

double HProfile::operator()(double t) const {
  double a = std::abs(t);
  if (a > 1.0) return 0.0;
  if (even_degree(degree) == 0) return kernel(a) / (2.0 * I0);
  return kernel(a) * 0.5 * (I4 - t * t * I2) / D;
}

std::pair<double, double> approx_denoise_scores(const WeightKernel& kernel,
                                                int degree, double tol) {
  HProfile h = h_profile(kernel, degree);
  const int m = even_degree(degree) + 2;
  QuadratureOptions opts;
  opts.tol = tol;
  double im = integrate(
      [&](double t) { return std::pow(t, m) * h(t); }, 0.0, 1.0, opts);
  double l2 = integrate([&](double t) { return h(t) * h(t); }, 0.0, 1.0, opts);
  return {2.0 * std::abs(im), 2.0 * l2};
}

double denoise_factor(const Mask& mask) {
  double s0 = 0, s1 = 0;
  for (double v : mask.even) s0 += v * v;
  for (double v : mask.odd) s1 += v * v;
  return std::max(s0, s1);
}

std::vector<ParetoPoint> pareto_front(int degree, double p_min, double p_max,
                                      double q_min, double q_max, int steps) {
  if (!(p_min >= 1.0 && p_max <= 20.0 && p_min <= p_max))
    fail(ErrorCode::InvalidArgument, "p range must lie in [1, 20]");
  if (!(q_min >= 0.5 && q_max <= 20.0 && q_min <= q_max))
    fail(ErrorCode::InvalidArgument, "q range must lie in [1/2, 20]");
  if (steps < 2) fail(ErrorCode::InvalidArgument, "steps must be >= 2");

  std::vector<ParetoPoint> pts;
  pts.reserve(static_cast<size_t>(steps) * steps + 8);
  for (int i = 0; i < steps; ++i) {
    double p = p_min + (p_max - p_min) * i / (steps - 1);
    for (int j = 0; j < steps; ++j) {
      double q = q_min * std::pow(q_max / q_min,
                                  static_cast<double>(j) / (steps - 1));
      auto [ac, h2] = approx_denoise_scores(WeightKernel::power(p, q), degree);
      pts.push_back({p, q, ac, h2, false, ""});
    }
  }
  // Named references: rect is the q->0 limit of the family.
  auto add_named = [&](const WeightKernel& k, const std::string& label,
                       double p, double q) {
    auto [ac, h2] = approx_denoise_scores(k, degree);
    pts.push_back({p, q, ac, h2, false, label});
  };
  add_named(WeightKernel::rect(), "rect", 0, 0);
  add_named(WeightKernel::tria(), "tria", 1, 1);
  add_named(WeightKernel::epan(), "epan", 2, 1);
  add_named(WeightKernel::bisq(), "bisq", 2, 2);
  add_named(WeightKernel::trwt(), "trwt", 2, 3);
  add_named(WeightKernel::tcub(), "tcub", 3, 3);
  add_named(WeightKernel::power(4, 5), "p4q5", 4, 5);

  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      bool leq = pts[j].approx_const <= pts[i].approx_const &&
                 pts[j].h_l2sq <= pts[i].h_l2sq;
      bool strict = pts[j].approx_const < pts[i].approx_const ||
                    pts[j].h_l2sq < pts[i].h_l2sq;
      if (leq && strict) {
        pts[i].dominated = true;
        break;
      }
    }
  }
  return pts;
}

double predicted_approx_error(const WeightKernel& kernel, int degree, double h,
                              double n, double deriv_bound) {
  if (!(h > 0)) fail(ErrorCode::InvalidArgument, "h must be > 0");
  if (!(n >= 2)) fail(ErrorCode::InvalidArgument, "n must be >= 2");
  const int m = even_degree(degree) + 2;
  double factorial = 1;
  for (int i = 2; i <= m; ++i) factorial *= i;
  auto [ac, h2] = approx_denoise_scores(kernel, degree);
  (void)h2;
  return ac * deriv_bound * std::pow(h * n, m) / factorial;
}

}  // namespace wlpr
