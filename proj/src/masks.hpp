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

#ifndef WLPR_MASKS_HPP
#define WLPR_MASKS_HPP

#include <vector>

#include "kernels.hpp"

namespace wlpr {

/// Which refinement rule has the longer support: for 2n-1 < lambda < 2n the
/// odd rule is longer (2n vs 2n-1 taps); for 2n < lambda < 2n+1 the even one
/// (2n+1 vs 2n).
enum class SupportSituation { OddLonger, EvenLonger };

/// Full identity of a scheme: weight kernel, bandwidth, regression degree.
struct SchemeSpec {
  WeightKernel kernel;
  double lambda;
  int degree;

  static SchemeSpec make(WeightKernel kernel, double lambda, int degree);

  int n() const;  // 2n-1 < lambda < 2n+1
  SupportSituation situation() const;
  /// Largest admissible degree, 2n-1; the odd rule is underdetermined beyond.
  int max_degree() const { return 2 * n() - 1; }
};

/// Refinement stencils in natural labeling: out[2j] = sum_l even[l] in[j+l],
/// out[2j+1] = sum_l odd[l] in[j+l]. Index l of even (odd) runs from
/// even_first (odd_first).
struct Mask {
  SchemeSpec spec;
  std::vector<double> even;
  int even_first = 0;
  std::vector<double> odd;
  int odd_first = 0;
  /// Set when the scheme coincides with the interpolatory Deslauriers-Dubuc
  /// scheme of the same support.
  bool dd_coincident = false;

  double even_at(long l) const {
    long i = l - even_first;
    return i >= 0 && i < static_cast<long>(even.size())
               ? even[static_cast<size_t>(i)]
               : 0.0;
  }
  double odd_at(long l) const {
    long i = l - odd_first;
    return i >= 0 && i < static_cast<long>(odd.size())
               ? odd[static_cast<size_t>(i)]
               : 0.0;
  }
};

/// Relabeled sub-masks with the second one the longer: first covers
/// l = 1-n .. L, second l = 1-n .. L+1, with L = n-1 (odd-longer) or n
/// (even-longer). This is the normal form the difference-scheme analysis
/// operates on.
struct NormalizedMask {
  int n = 0;
  int L = 0;
  std::vector<double> first;   // size L+n
  std::vector<double> second;  // size L+n+1
};

NormalizedMask normalized(const Mask& mask);

/// Interleaved full mask a_m (even[l] at m=2l, odd[l] at m=2l-1).
/// Returns coefficients plus the index of the first entry.
std::pair<std::vector<double>, int> interleave(const Mask& mask);

/// Builds the refinement stencils. Degrees 0..3 go through the explicit
/// solutions of the normal equations (numerically robust even for extreme
/// weight decay); higher degrees use the pivoted dense solver. When the
/// even problem turns interpolatory (d+1 >= number of even nodes) the even
/// rule degenerates to the identity; when d reaches 2n-1 the odd rule is
/// the Deslauriers-Dubuc interpolation stencil.
Mask build_mask(const SchemeSpec& spec);

/// The normal-equations route for any degree (partial-pivot solve of the
/// (d+1)x(d+1) moment system per rule); cross-validates the explicit path.
Mask build_mask_general(const SchemeSpec& spec);

/// The explicit d<=3 formulas: d=0,1 normalize the sampled weights;
/// d=2,3 evaluate the weighted even-quadratic.
Mask build_mask_closed_form(const SchemeSpec& spec);

struct ReproductionCheck {
  bool pass = false;
  double max_residual = 0.0;
};

/// Moment conditions sum_l a0_l (2l)^t = delta_{0,t} and
/// sum_l a1_l (2l-1)^t = delta_{0,t} for t = 0..d.
ReproductionCheck verify_reproduction(const Mask& mask, int degree,
                                      double tol = 1e-10);

/// Degree-d and degree-(d+1) schemes coincide for even d (the fitted
/// polynomial has no odd powers); requires d even, d <= 2n-2.
bool equivalent_even_odd_degree(const SchemeSpec& spec, double tol = 1e-12);

/// Deviation from odd symmetry of the interleaved mask, max |a_j - a_{-j}|.
double symmetry_defect(const Mask& mask);

// ---- exact rational path (rect / integer-power kernels, d <= 3) ----------

struct RationalMask {
  int n = 0;
  SupportSituation situation = SupportSituation::OddLonger;
  std::vector<Rat> even;
  int even_first = 0;
  std::vector<Rat> odd;
  int odd_first = 0;
};

RationalMask build_mask_rational(const WeightKernel& kernel, const Rat& lambda,
                                 int degree);

/// The rect d=2,3 family member for 2n-1 < lambda < 2n, directly from the
/// simplified rational coefficients (independent of the generic solver).
RationalMask rect_d3_family_mask(int n);

Mask to_double_mask(const RationalMask& mask, const SchemeSpec& spec);

}  // namespace wlpr

#endif  // WLPR_MASKS_HPP
