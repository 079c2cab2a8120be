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

#ifndef WLPR_CONVERGENCE_HPP
#define WLPR_CONVERGENCE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "masks.hpp"

namespace wlpr {

/// Difference scheme q with a(z) = (1+z) q(z): q_even[j] = q_{2j},
/// q_odd[j] = q_{2j+1}, both over j = 1-n .. L of the normalized mask.
/// max(|q_even|_1, |q_odd|_1) < 1 certifies uniform convergence.
struct DifferenceMask {
  int n = 0;
  int L = 0;
  std::vector<double> q_even, q_odd;
  double q0_l1 = 0, q1_l1 = 0;

  double max_norm() const { return q0_l1 > q1_l1 ? q0_l1 : q1_l1; }
};

DifferenceMask difference_mask(const Mask& mask);
DifferenceMask difference_from_normalized(const NormalizedMask& nm);

/// Coefficient sequence q_m of the difference symbol, first index 2(1-n).
/// The cumulative-sum vectors interleave as q_{2j} = q_odd[j],
/// q_{2j+1} = q_even[j]; with that placement (1+z) q(z) reproduces the
/// normalized mask symbol exactly.
std::pair<std::vector<double>, int> difference_symbol(const DifferenceMask& dm);

struct RationalDifferenceMask {
  int n = 0;
  int L = 0;
  std::vector<Rat> q_even, q_odd;
  Rat q0_l1, q1_l1;

  Rat max_norm() const { return q0_l1 > q1_l1 ? q0_l1 : q1_l1; }
};

RationalDifferenceMask difference_mask_rational(const RationalMask& mask);

/// Positive-mask sufficient criterion: every coefficient of the interleaved
/// mask positive, contiguous support of length >= 4, both sub-sums 1.
/// Returns false (not an error) when inapplicable.
bool positive_mask_verdict(const Mask& mask);

/// Numeric evidence for the C1 criterion at d = 0,1: positivity of the
/// difference mask plus monotonicity of p0(l) = phi((2l+1)/lambda) /
/// phi(2l/lambda) on [0, n-1].
struct C1Report {
  bool in_scope = false;       // rect or (1-x^p)^q with p >= 1
  bool verdict = false;
  bool q_positive = false;
  bool p0_nonincreasing = false;
  double p0_max_increase = 0.0;
};

/// Requires d in {0,1} semantics, 2n-1 < lambda < 2n, n >= 2. Never throws
/// OutOfScope; inspect in_scope.
C1Report c1_report(const WeightKernel& kernel, double lambda);

/// Same, but claims a verdict only for the kernel classes the theory covers;
/// OutOfScope otherwise (message carries the numeric report).
bool c1_criterion_d01(const WeightKernel& kernel, double lambda);

/// Asymptotic machinery: r(t) = lim n^2 (a^{n,0}_{tn} - a^{n,1}_{tn}),
/// R its antiderivative with R(-1) = 0, and the threshold n0 beyond which
/// |q|_1 < 1 is guaranteed.
struct AsymptoticProfile {
  std::function<double(double)> r;
  std::function<double(double)> R;
  double r_l1 = 0;       // integral of |R| over [-1,1]
  double r_inf = 0;      // sup |r|
  double rprime_inf = 0; // sup |r'|
  double alpha = 3;
  double mu = 0;         // epsilon bound constant paired with alpha
  double n0 = 0;
};

/// Threshold from the alpha = 3 bound; second_longer_by_one selects the
/// L = n case (normalized second sub-mask one tap longer than n + L).
double n0_threshold(double r_inf, double rprime_inf, double r_l1, double mu,
                    bool l_equals_n);

/// Epsilon bound constant for the rect d=3 family, valid for every n >= m.
double rect_d3_mu(int m);

/// Exact profile of the rect d=3 family:
/// r(t) = -45t^2/16 - 15t/8 + 9/16, |R|_1 = (3 sqrt 15 - 5)/10,
/// |r|_inf = 33/8, |r'|_inf = 15/2. n0 is produced for a direct-inspection
/// range 2..n1: the bound constant used is mu(n1+1), the sharpest valid on
/// the uncovered range n >= n1+1.
AsymptoticProfile asymptotic_profile_rect_d3(int n1 = 188);

/// Finite-n probe of r(t): (a^{n,0}_{tn} - a^{n,1}_{tn}) n^2 from the d=2,3
/// coefficient formulas evaluated at real index tn; O(1/n) away from r(t).
/// Family convention: lambda_n = 2n - delta (odd-longer).
double estimate_r_numeric(const WeightKernel& kernel, double t, long n_probe,
                          double delta = 0.5);

/// The closed r(t) expression in the moments I_k(phi), I_k(phi'), phi(1);
/// cached per kernel.
struct RProfile {
  double I0, I1, I2, I3, I4, I2p, I4p, phi1, D;
  WeightKernel kernel;
  double operator()(double t) const;
};
RProfile make_r_profile(const WeightKernel& kernel, double tol = 1e-12);

/// |R|_1 for the d=2,3 family of the kernel: r from the closed expression,
/// R by accumulation, sign changes located by dense sampling + bisection.
double r_l1_norm(const WeightKernel& kernel, double tol = 1e-8);

enum class Verdict {
  ConvergentPositiveMask,
  ConvergentDirectInspection,
  ConvergentAsymptotic,
  Inconclusive,
};

const char* verdict_name(Verdict v);

struct ConvergenceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string kernel;
  int degree = 0;
  SupportSituation situation = SupportSituation::OddLonger;
  double delta = 0.5;
  int n_min = 2, n_max = 2;
  double max_norm = 0;
  int argmax_n = 0;
  std::optional<double> r_l1;
  std::optional<double> n0;
  bool exact = false;          // rational arithmetic route
  std::string max_norm_exact;  // num/den when exact
  double slack = 0;            // float certification margin
  std::string route;
  std::vector<std::pair<int, double>> norms;
};

/// Sweeps the family lambda_n = 2n-1+delta (odd-longer) or 2n+delta
/// (even-longer) for n = 2..n_max. A user-supplied (mu, alpha=3) enables the
/// n0 step for families the built-ins do not cover.
ConvergenceReport certify_family(const WeightKernel& kernel, int degree,
                                 SupportSituation situation, double delta,
                                 int n_max,
                                 std::optional<double> mu = std::nullopt,
                                 std::optional<double> alpha = std::nullopt);

/// Exact rational sweep of the rect d=2,3 family plus the asymptotic bound.
ConvergenceReport certify_rect_d3_exact(int n_max);

/// Flip identity: |q^0|_1 of the mask equals |q^1|_1 of its
/// index-flipped version.
bool flip_equivalence_check(const Mask& mask, double tol = 1e-12);

}  // namespace wlpr

#endif  // WLPR_CONVERGENCE_HPP
