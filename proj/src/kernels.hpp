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

#ifndef WLPR_KERNELS_HPP
#define WLPR_KERNELS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace wlpr {

enum class KernelFamily { Rect, Tria, Epan, Bisq, Tcub, Trwt, Exp, Power };

/// A weight profile phi : [0,1] -> [0,1], non-increasing with phi(0) = 1.
/// The window function on [-1,1] is omega(x) = phi(|x|), zero outside.
///
/// The named families tria/epan/bisq/tcub/trwt are aliases of the power
/// form (1-x^p)^q so golden tests read like the usual kernel tables;
/// rect is phi = 1 and exp(xi) is e^(-xi*x).
class WeightKernel {
 public:
  static WeightKernel rect();
  static WeightKernel tria();
  static WeightKernel epan();
  static WeightKernel bisq();
  static WeightKernel tcub();
  static WeightKernel trwt();
  static WeightKernel exponential(double xi);   // xi > 0
  static WeightKernel power(double p, double q);  // p >= 1, q > 0

  /// Grammar: rect | tria | epan | bisq | tcub | trwt | exp:<xi> | pq:<p>:<q>
  static WeightKernel parse(std::string_view spec);
  std::string spec_string() const;

  KernelFamily family() const { return family_; }
  bool has_power_form() const;  // pq and its named aliases
  double power_p() const { return p_; }
  double power_q() const { return q_; }
  double exp_xi() const { return xi_; }

  /// Rect is flat; admissible but flagged in reports.
  bool strictly_decreasing() const { return family_ != KernelFamily::Rect; }

  /// phi(x) for x in [0,1]; domain error outside.
  double operator()(double x) const;
  /// phi'(x); analytic per family, valid on (0,1) (one-sided at the ends).
  double derivative(double x) const;
  double at_one() const;

  /// I_k(phi) = integral of phi(x) x^k over [0,1], adaptive quadrature.
  double moment(int k, double tol = 1e-12) const;
  /// I_k(phi') via integration by parts: phi(1)*1 - k I_{k-1}(phi) for k>=1,
  /// phi(1) - phi(0) for k = 0. Exact given the phi moments.
  double derivative_moment(int k, double tol = 1e-12) const;

  /// True when sampled weights are exactly rational for rational abscissae
  /// (rect always; power form with integer p and q).
  bool rational_exact() const;
  /// phi(x) as an exact rational; requires rational_exact().
  Rat eval_rational(const Rat& x) const;

 private:
  WeightKernel(KernelFamily f, double p, double q, double xi)
      : family_(f), p_(p), q_(q), xi_(xi) {}
  KernelFamily family_;
  double p_ = 0, q_ = 0;  // power form parameters
  double xi_ = 0;         // exp decay rate
};

/// Weights w_l = phi(|l|/lambda) for integer |l| < lambda.
struct SampledWeights {
  double lambda = 0;
  std::vector<double> w;  // w[i] = w_i for i = 0 .. floor(lambda)

  long max_index() const { return static_cast<long>(w.size()) - 1; }
  /// w_l with even symmetry; zero outside the window.
  double at(long l) const {
    long a = l < 0 ? -l : l;
    return a < static_cast<long>(w.size()) ? w[static_cast<size_t>(a)] : 0.0;
  }
};

/// Throws IntegerBandwidth / BandwidthTooSmall. The integrality test uses a
/// 1e-9 margin since lambda typically arrives through config files.
void validate_bandwidth(double lambda);

SampledWeights sample_weights(const WeightKernel& kernel, double lambda);

/// Exact path: w_l = phi(|l|/lambda) as rationals. Requires
/// kernel.rational_exact() and non-integer rational lambda > 1.
std::vector<Rat> sample_weights_rational(const WeightKernel& kernel,
                                         const Rat& lambda);

}  // namespace wlpr

#endif  // WLPR_KERNELS_HPP
