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

#ifndef WLPR_QUADRATURE_HPP
#define WLPR_QUADRATURE_HPP

#include <cmath>
#include <cstdint>

#include "error.hpp"

namespace wlpr {

struct QuadratureOptions {
  double tol = 1e-12;        // absolute error target
  int max_depth = 52;        // bisection depth; handles endpoint kinks
  std::int64_t max_evals = 4'000'000;
};

namespace detail {

template <class F>
double simpson_adaptive(const F& f, double a, double m, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth, const QuadratureOptions& opts,
                        std::int64_t& evals) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  evals += 2;
  if (evals > opts.max_evals)
    fail(ErrorCode::QuadratureFailure, "quadrature evaluation budget exhausted");
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol || depth >= opts.max_depth) {
    if (depth >= opts.max_depth && std::abs(err) > 15.0 * tol &&
        std::abs(err) > 1e-6)
      fail(ErrorCode::QuadratureFailure, "quadrature did not converge");
    return left + right + err / 15.0;
  }
  return simpson_adaptive(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                          opts, evals) +
         simpson_adaptive(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                          opts, evals);
}

}  // namespace detail

/// Adaptive Simpson with interval bisection. Absolute tolerance.
template <class F>
double integrate(const F& f, double a, double b, QuadratureOptions opts = {}) {
  if (!(opts.tol > 0)) fail(ErrorCode::InvalidArgument, "tol must be > 0");
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  std::int64_t evals = 3;
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_adaptive(f, a, m, b, fa, fm, fb, whole, opts.tol, 0,
                                  opts, evals);
}

}  // namespace wlpr

#endif  // WLPR_QUADRATURE_HPP
