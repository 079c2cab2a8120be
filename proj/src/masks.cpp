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

#include "masks.hpp"

#include <algorithm>
#include <cmath>

namespace wlpr {

SchemeSpec SchemeSpec::make(WeightKernel kernel, double lambda, int degree) {
  validate_bandwidth(lambda);
  if (degree < 0) fail(ErrorCode::InvalidArgument, "degree must be >= 0");
  SchemeSpec spec{std::move(kernel), lambda, degree};
  if (degree > spec.max_degree())
    fail(ErrorCode::DegreeTooHigh,
         "degree " + std::to_string(degree) + " exceeds " +
             std::to_string(spec.max_degree()) + " for bandwidth " +
             std::to_string(lambda) + "; the odd rule is underdetermined");
  return spec;
}

int SchemeSpec::n() const {
  return static_cast<int>(std::floor((lambda + 1.0) / 2.0));
}

SupportSituation SchemeSpec::situation() const {
  return lambda < 2.0 * n() ? SupportSituation::OddLonger
                            : SupportSituation::EvenLonger;
}

namespace {

// Dense symmetric solve, partial pivoting, long double accumulation.
// Systems here are (d+1)x(d+1) moment matrices.
std::vector<long double> solve_pivoted(std::vector<long double> m, int dim,
                                       std::vector<long double> rhs) {
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::abs(m[r * dim + col]) > std::abs(m[piv * dim + col])) piv = r;
    if (std::abs(m[piv * dim + col]) < 1e-300)
      fail(ErrorCode::SingularNormalEquations,
           "singular normal equations (kernel vanishes on the window?)");
    if (piv != col) {
      for (int c = 0; c < dim; ++c)
        std::swap(m[piv * dim + c], m[col * dim + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = col + 1; r < dim; ++r) {
      long double f = m[r * dim + col] / m[col * dim + col];
      for (int c = col; c < dim; ++c) m[r * dim + c] -= f * m[col * dim + c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<long double> x(dim);
  for (int r = dim - 1; r >= 0; --r) {
    long double s = rhs[r];
    for (int c = r + 1; c < dim; ++c) s -= m[r * dim + c] * x[c];
    x[r] = s / m[r * dim + r];
  }
  return x;
}

// One refinement rule by weighted LS: nodes x_j with weights w_j, polynomial
// degree d, fitted value taken at 0. Returns the stencil in node order.
std::vector<double> wls_rule(const std::vector<double>& nodes,
                             const std::vector<double>& weights, int d,
                             bool contains_zero_node) {
  const int m = static_cast<int>(nodes.size());
  if (d + 1 >= m && contains_zero_node) {
    // Interpolatory regime: any minimizer passes through the data, so the
    // value at the node 0 is the centre sample itself.
    std::vector<double> a(nodes.size(), 0.0);
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == 0.0) a[i] = 1.0;
    return a;
  }
  if (d + 1 == m) {
    // Square case: the stencil is pinned by the moment conditions
    // sum_j a_j x_j^t = delta_{0,t} alone (Lagrange evaluation at 0).
    std::vector<long double> vt(static_cast<size_t>(m) * m);
    std::vector<long double> rhs(m, 0.0L);
    rhs[0] = 1.0L;
    for (int t = 0; t < m; ++t)
      for (int j = 0; j < m; ++j)
        vt[t * m + j] = std::pow(static_cast<long double>(nodes[j]), t);
    auto a = solve_pivoted(std::move(vt), m, std::move(rhs));
    return std::vector<double>(a.begin(), a.end());
  }
  if (d + 1 > m)
    fail(ErrorCode::DegreeTooHigh, "rule underdetermined");  // unreachable
  const int dim = d + 1;
  std::vector<long double> mom(static_cast<size_t>(dim) * dim, 0.0L);
  for (int s = 0; s < dim; ++s)
    for (int t = s; t < dim; ++t) {
      long double acc = 0.0L;
      for (int j = 0; j < m; ++j)
        acc += weights[j] *
               std::pow(static_cast<long double>(nodes[j]), s + t);
      mom[s * dim + t] = mom[t * dim + s] = acc;
    }
  std::vector<long double> rhs(dim, 0.0L);
  rhs[0] = 1.0L;
  auto alpha = solve_pivoted(std::move(mom), dim, std::move(rhs));
  std::vector<double> a(nodes.size());
  for (int j = 0; j < m; ++j) {
    long double p = 0.0L;
    for (int t = dim - 1; t >= 0; --t) p = p * nodes[j] + alpha[t];
    a[j] = static_cast<double>(weights[j] * p);
  }
  return a;
}

struct Grids {
  std::vector<double> even_nodes, odd_nodes;  // positions 2l and 2l-1
  std::vector<double> even_w, odd_w;
  int even_first, odd_first;
};

Grids make_grids(const SchemeSpec& spec) {
  Grids g;
  const int n = spec.n();
  const int e = static_cast<int>(std::floor(spec.lambda / 2.0));
  SampledWeights w = sample_weights(spec.kernel, spec.lambda);
  g.even_first = -e;
  for (int l = -e; l <= e; ++l) {
    g.even_nodes.push_back(2.0 * l);
    g.even_w.push_back(w.at(2L * l));
  }
  g.odd_first = 1 - n;
  for (int l = 1 - n; l <= n; ++l) {
    g.odd_nodes.push_back(2.0 * l - 1.0);
    g.odd_w.push_back(w.at(2L * l - 1));
  }
  return g;
}

bool dd_flag(const SchemeSpec& spec) {
  // Full coincidence with Deslauriers-Dubuc needs the short-even situation
  // and d in {2n-2, 2n-1} (even d lifts to d+1).
  return spec.situation() == SupportSituation::OddLonger &&
         spec.degree >= 2 * spec.n() - 2;
}

}  // namespace

Mask build_mask(const SchemeSpec& spec) {
  return spec.degree <= 3 ? build_mask_closed_form(spec)
                          : build_mask_general(spec);
}

Mask build_mask_general(const SchemeSpec& spec) {
  Grids g = make_grids(spec);
  Mask mask{spec, {}, g.even_first, {}, g.odd_first, dd_flag(spec)};
  mask.even = wls_rule(g.even_nodes, g.even_w, spec.degree, true);
  mask.odd = wls_rule(g.odd_nodes, g.odd_w, spec.degree, false);
  return mask;
}

Mask build_mask_closed_form(const SchemeSpec& spec) {
  if (spec.degree > 3)
    fail(ErrorCode::InvalidArgument, "closed form covers d = 0..3 only");
  Grids g = make_grids(spec);
  Mask mask{spec, {}, g.even_first, {}, g.odd_first, dd_flag(spec)};
  auto rule = [&](const std::vector<double>& nodes,
                  const std::vector<double>& w) {
    std::vector<double> a(nodes.size());
    if (spec.degree <= 1) {
      double s0 = 0;
      for (double v : w) s0 += v;
      for (size_t j = 0; j < w.size(); ++j) a[j] = w[j] / s0;
      return a;
    }
    // a_j = w_j (S4 - S2 x_j^2) / (S0 S4 - S2^2), evaluated in the pairwise
    // Gram form: the denominator is sum_{i<l} w_i w_l (x_l^2 - x_i^2)^2
    // (no cancellation even when the weights collapse onto two symmetric
    // nodes) and the numerator terms vanish exactly at x_l = x_j. Covers the
    // interpolatory degenerations (3-node even rule -> identity, 4-node odd
    // rule -> DD).
    const size_t m = w.size();
    std::vector<long double> x2(m);
    for (size_t j = 0; j < m; ++j)
      x2[j] = static_cast<long double>(nodes[j]) * nodes[j];
    long double den = 0;
    for (size_t i = 0; i < m; ++i)
      for (size_t l = i + 1; l < m; ++l) {
        long double diff = x2[l] - x2[i];
        den += static_cast<long double>(w[i]) * w[l] * diff * diff;
      }
    if (den <= 0)
      fail(ErrorCode::SingularNormalEquations, "degenerate moment matrix");
    for (size_t j = 0; j < m; ++j) {
      long double num = 0;
      for (size_t l = 0; l < m; ++l)
        num += static_cast<long double>(w[l]) * x2[l] * (x2[l] - x2[j]);
      a[j] = static_cast<double>(w[j] * num / den);
    }
    return a;
  };
  mask.even = rule(g.even_nodes, g.even_w);
  mask.odd = rule(g.odd_nodes, g.odd_w);
  return mask;
}

NormalizedMask normalized(const Mask& mask) {
  const int n = mask.spec.n();
  NormalizedMask nm;
  nm.n = n;
  const bool odd_longer =
      mask.spec.situation() == SupportSituation::OddLonger;
  nm.L = odd_longer ? n - 1 : n;
  nm.first.resize(static_cast<size_t>(nm.L + n));
  nm.second.resize(static_cast<size_t>(nm.L + n + 1));
  for (int l = 1 - n; l <= nm.L; ++l)
    nm.first[static_cast<size_t>(l - (1 - n))] =
        odd_longer ? mask.even_at(l) : mask.odd_at(l);
  for (int l = 1 - n; l <= nm.L + 1; ++l)
    nm.second[static_cast<size_t>(l - (1 - n))] =
        odd_longer ? mask.odd_at(l) : mask.even_at(l - 1);
  return nm;
}

std::pair<std::vector<double>, int> interleave(const Mask& mask) {
  int lo = std::min(2 * mask.even_first, 2 * mask.odd_first - 1);
  int hi = std::max(
      2 * (mask.even_first + static_cast<int>(mask.even.size()) - 1),
      2 * (mask.odd_first + static_cast<int>(mask.odd.size()) - 1) - 1);
  std::vector<double> full(static_cast<size_t>(hi - lo + 1), 0.0);
  for (size_t i = 0; i < mask.even.size(); ++i)
    full[static_cast<size_t>(2 * (mask.even_first + static_cast<int>(i)) -
                             lo)] = mask.even[i];
  for (size_t i = 0; i < mask.odd.size(); ++i)
    full[static_cast<size_t>(2 * (mask.odd_first + static_cast<int>(i)) - 1 -
                             lo)] = mask.odd[i];
  return {std::move(full), lo};
}

ReproductionCheck verify_reproduction(const Mask& mask, int degree,
                                      double tol) {
  ReproductionCheck chk;
  for (int t = 0; t <= degree; ++t) {
    long double se = 0, so = 0;
    for (size_t i = 0; i < mask.even.size(); ++i) {
      long double node = 2.0L * (mask.even_first + static_cast<int>(i));
      se += mask.even[i] * std::pow(node, t);
    }
    for (size_t i = 0; i < mask.odd.size(); ++i) {
      long double node = 2.0L * (mask.odd_first + static_cast<int>(i)) - 1.0L;
      so += mask.odd[i] * std::pow(node, t);
    }
    long double target = t == 0 ? 1.0L : 0.0L;
    chk.max_residual = std::max(
        {chk.max_residual, std::abs(static_cast<double>(se - target)),
         std::abs(static_cast<double>(so - target))});
  }
  chk.pass = chk.max_residual <= tol;
  return chk;
}

bool equivalent_even_odd_degree(const SchemeSpec& spec, double tol) {
  if (spec.degree % 2 != 0)
    fail(ErrorCode::InvalidArgument, "needs an even degree");
  if (spec.degree > 2 * spec.n() - 2)
    fail(ErrorCode::DegreeTooHigh, "needs degree <= 2n-2");
  Mask a = build_mask(spec);
  Mask b = build_mask(
      SchemeSpec::make(spec.kernel, spec.lambda, spec.degree + 1));
  if (a.even.size() != b.even.size() || a.odd.size() != b.odd.size())
    return false;
  for (size_t i = 0; i < a.even.size(); ++i)
    if (std::abs(a.even[i] - b.even[i]) > tol) return false;
  for (size_t i = 0; i < a.odd.size(); ++i)
    if (std::abs(a.odd[i] - b.odd[i]) > tol) return false;
  return true;
}

double symmetry_defect(const Mask& mask) {
  auto [full, lo] = interleave(mask);
  double defect = 0.0;
  auto at = [&](int m) {
    int i = m - lo;
    return i >= 0 && i < static_cast<int>(full.size())
               ? full[static_cast<size_t>(i)]
               : 0.0;
  };
  int hi = lo + static_cast<int>(full.size()) - 1;
  for (int m = lo; m <= hi; ++m)
    defect = std::max(defect, std::abs(at(m) - at(-m)));
  return defect;
}

RationalMask build_mask_rational(const WeightKernel& kernel, const Rat& lambda,
                                 int degree) {
  if (degree < 0 || degree > 3)
    fail(ErrorCode::InvalidArgument, "rational path covers d = 0..3");
  if (!kernel.rational_exact())
    fail(ErrorCode::InvalidArgument,
         "kernel has no exact rational form: " + kernel.spec_string());
  const double lam = lambda.to_double();
  SchemeSpec probe = SchemeSpec::make(kernel, lam, degree);
  const int n = probe.n();
  const int e = static_cast<int>(std::floor(lam / 2.0));

  auto weight = [&](long m) {
    Rat x = Rat(m < 0 ? -m : m) / lambda;
    return x < Rat(1) ? kernel.eval_rational(x) : Rat(0);
  };
  auto rule = [&](int first, int last, bool odd_nodes) {
    std::vector<long> nodes;
    std::vector<Rat> w;
    for (int l = first; l <= last; ++l) {
      nodes.push_back(odd_nodes ? 2L * l - 1 : 2L * l);
      w.push_back(weight(nodes.back()));
    }
    std::vector<Rat> a(nodes.size());
    if (degree <= 1) {
      Rat s0(0);
      for (const Rat& v : w) s0 += v;
      for (size_t j = 0; j < w.size(); ++j) a[j] = w[j] / s0;
      return a;
    }
    Rat s0(0), s2(0), s4(0);
    for (size_t j = 0; j < w.size(); ++j) {
      Rat x2 = Rat(nodes[j]) * Rat(nodes[j]);
      s0 += w[j];
      s2 += w[j] * x2;
      s4 += w[j] * x2 * x2;
    }
    Rat den = s0 * s4 - s2 * s2;
    if (den.sign() <= 0)
      fail(ErrorCode::SingularNormalEquations, "degenerate moment matrix");
    for (size_t j = 0; j < w.size(); ++j) {
      Rat x2 = Rat(nodes[j]) * Rat(nodes[j]);
      a[j] = w[j] * (s4 - s2 * x2) / den;
    }
    return a;
  };

  RationalMask mask;
  mask.n = n;
  mask.situation = probe.situation();
  mask.even_first = -e;
  mask.even = rule(-e, e, false);
  mask.odd_first = 1 - n;
  mask.odd = rule(1 - n, n, true);
  return mask;
}

RationalMask rect_d3_family_mask(int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "family starts at n = 2");
  RationalMask mask;
  mask.n = n;
  mask.situation = SupportSituation::OddLonger;
  mask.even_first = 1 - n;
  mask.odd_first = 1 - n;
  long long nn = n;
  Rat den_even(8 * nn * nn * nn - 12 * nn * nn - 2 * nn + 3);
  Rat den_odd(8 * nn - 8 * nn * nn * nn);
  for (long long j = 1 - n; j <= n - 1; ++j)
    mask.even.push_back(Rat(-3 * (5 * j * j - 3 * nn * nn + 3 * nn + 1)) /
                        den_even);
  for (long long j = 1 - n; j <= n; ++j)
    mask.odd.push_back(Rat(15 * (j - 1) * j - 9 * nn * nn + 9) / den_odd);
  return mask;
}

Mask to_double_mask(const RationalMask& rm, const SchemeSpec& spec) {
  Mask mask{spec, {}, rm.even_first, {}, rm.odd_first, dd_flag(spec)};
  mask.even.reserve(rm.even.size());
  for (const Rat& r : rm.even) mask.even.push_back(r.to_double());
  mask.odd.reserve(rm.odd.size());
  for (const Rat& r : rm.odd) mask.odd.push_back(r.to_double());
  return mask;
}

}  // namespace wlpr
