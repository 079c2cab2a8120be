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

#include "convergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadrature.hpp"

namespace wlpr {

namespace {

void require_pi0(double sum_first, double sum_second) {
  if (std::abs(sum_first - 1.0) > 1e-12 || std::abs(sum_second - 1.0) > 1e-12)
    fail(ErrorCode::NotPi0Reproducing,
         "difference scheme needs sub-mask sums 1, got " +
             std::to_string(sum_first) + " and " + std::to_string(sum_second));
}

}  // namespace

DifferenceMask difference_from_normalized(const NormalizedMask& nm) {
  double s0 = 0, s1 = 0;
  for (double v : nm.first) s0 += v;
  for (double v : nm.second) s1 += v;
  require_pi0(s0, s1);

  DifferenceMask dm;
  dm.n = nm.n;
  dm.L = nm.L;
  const int count = nm.L + nm.n;  // j = 1-n .. L
  dm.q_even.resize(static_cast<size_t>(count));
  dm.q_odd.resize(static_cast<size_t>(count));
  double acc = 0;
  for (int i = 0; i < count; ++i) {
    acc += nm.first[static_cast<size_t>(i)] - nm.second[static_cast<size_t>(i)];
    dm.q_even[static_cast<size_t>(i)] = acc;
  }
  for (int i = count - 1; i >= 0; --i) {
    double tail = i + 1 < count ? dm.q_odd[static_cast<size_t>(i + 1)] : 0.0;
    dm.q_odd[static_cast<size_t>(i)] =
        tail + nm.first[static_cast<size_t>(i)] -
        nm.second[static_cast<size_t>(i + 1)];
  }
  for (double v : dm.q_even) dm.q0_l1 += std::abs(v);
  for (double v : dm.q_odd) dm.q1_l1 += std::abs(v);
  return dm;
}

DifferenceMask difference_mask(const Mask& mask) {
  return difference_from_normalized(normalized(mask));
}

std::pair<std::vector<double>, int> difference_symbol(const DifferenceMask& dm) {
  const int count = dm.L + dm.n;
  std::vector<double> q(static_cast<size_t>(2 * count), 0.0);
  const int first = 2 * (1 - dm.n);
  for (int i = 0; i < count; ++i) {
    int j = 1 - dm.n + i;
    q[static_cast<size_t>(2 * j - first)] = dm.q_odd[static_cast<size_t>(i)];
    q[static_cast<size_t>(2 * j + 1 - first)] =
        dm.q_even[static_cast<size_t>(i)];
  }
  return {std::move(q), first};
}

RationalDifferenceMask difference_mask_rational(const RationalMask& mask) {
  // Normalize exactly as the double path does.
  const int n = mask.n;
  const int L = mask.situation == SupportSituation::OddLonger ? n - 1 : n;
  const bool odd_longer = mask.situation == SupportSituation::OddLonger;
  auto even_at = [&](int l) -> Rat {
    int i = l - mask.even_first;
    return i >= 0 && i < static_cast<int>(mask.even.size())
               ? mask.even[static_cast<size_t>(i)]
               : Rat(0);
  };
  auto odd_at = [&](int l) -> Rat {
    int i = l - mask.odd_first;
    return i >= 0 && i < static_cast<int>(mask.odd.size())
               ? mask.odd[static_cast<size_t>(i)]
               : Rat(0);
  };
  auto first = [&](int l) { return odd_longer ? even_at(l) : odd_at(l); };
  auto second = [&](int l) { return odd_longer ? odd_at(l) : even_at(l - 1); };

  Rat s0(0), s1(0);
  for (int l = 1 - n; l <= L; ++l) s0 += first(l);
  for (int l = 1 - n; l <= L + 1; ++l) s1 += second(l);
  if (s0 != Rat(1) || s1 != Rat(1))
    fail(ErrorCode::NotPi0Reproducing, "sub-mask sums are not exactly 1");

  RationalDifferenceMask dm;
  dm.n = n;
  dm.L = L;
  Rat acc(0);
  for (int l = 1 - n; l <= L; ++l) {
    acc += first(l) - second(l);
    dm.q_even.push_back(acc);
  }
  Rat tail(0);
  dm.q_odd.resize(static_cast<size_t>(L + n));
  for (int l = L; l >= 1 - n; --l) {
    tail += first(l) - second(l + 1);
    dm.q_odd[static_cast<size_t>(l - (1 - n))] = tail;
  }
  for (const Rat& v : dm.q_even) dm.q0_l1 += v.abs();
  for (const Rat& v : dm.q_odd) dm.q1_l1 += v.abs();
  return dm;
}

bool positive_mask_verdict(const Mask& mask) {
  auto [full, lo] = interleave(mask);
  (void)lo;
  if (full.size() < 4) return false;  // support length >= 4 required
  for (double v : full)
    if (!(v > 0.0)) return false;
  double s0 = 0, s1 = 0;
  for (double v : mask.even) s0 += v;
  for (double v : mask.odd) s1 += v;
  return std::abs(s0 - 1.0) <= 1e-12 && std::abs(s1 - 1.0) <= 1e-12;
}

C1Report c1_report(const WeightKernel& kernel, double lambda) {
  SchemeSpec spec = SchemeSpec::make(kernel, lambda, 0);
  const int n = spec.n();
  if (spec.situation() != SupportSituation::OddLonger || n < 2)
    fail(ErrorCode::InvalidArgument,
         "C1 criterion needs 2n-1 < lambda < 2n with n >= 2");
  C1Report rep;
  rep.in_scope = kernel.family() == KernelFamily::Rect ||
                 kernel.has_power_form();

  DifferenceMask dm = difference_mask(build_mask_closed_form(spec));
  rep.q_positive = true;
  for (double v : dm.q_even) rep.q_positive = rep.q_positive && v > 0.0;
  for (double v : dm.q_odd) rep.q_positive = rep.q_positive && v > 0.0;

  // p0(l) = phi((2l+1)/lambda) / phi(2l/lambda) on real l in [0, n-1].
  const int samples = 512;
  double prev = 0;
  rep.p0_nonincreasing = true;
  for (int i = 0; i <= samples; ++i) {
    double l = (n - 1) * static_cast<double>(i) / samples;
    double p0 = kernel((2 * l + 1) / lambda) / kernel(2 * l / lambda);
    if (i > 0) {
      rep.p0_max_increase = std::max(rep.p0_max_increase, p0 - prev);
      if (p0 > prev + 1e-12) rep.p0_nonincreasing = false;
    }
    prev = p0;
  }
  rep.verdict = rep.in_scope && rep.q_positive;
  return rep;
}

bool c1_criterion_d01(const WeightKernel& kernel, double lambda) {
  C1Report rep = c1_report(kernel, lambda);
  if (!rep.in_scope) {
    std::ostringstream os;
    os << "C1 verdict not claimed for kernel " << kernel.spec_string()
       << "; numeric evidence: q_positive=" << rep.q_positive
       << " p0_nonincreasing=" << rep.p0_nonincreasing
       << " p0_max_increase=" << rep.p0_max_increase;
    fail(ErrorCode::OutOfScope, os.str());
  }
  return rep.verdict;
}

double n0_threshold(double r_inf, double rprime_inf, double r_l1, double mu,
                    bool l_equals_n) {
  if (!(r_l1 < 1.0))
    fail(ErrorCode::InvalidArgument, "n0 undefined: |R|_1 >= 1");
  double a = r_inf + 2.0 * (mu + rprime_inf);
  double disc = l_equals_n ? a * a + 4.0 * (1.0 - r_l1) * mu
                           : a * a + 4.0 * (r_l1 - 1.0) * (mu + rprime_inf);
  return (std::sqrt(disc) + a) / (2.0 * (1.0 - r_l1));
}

double rect_d3_mu(int m) {
  if (m < 3) fail(ErrorCode::InvalidArgument, "mu constant needs m >= 3");
  double q = static_cast<double>(m) / (m - 2);
  return 21.0 * q * q * q * q * q * q;
}

AsymptoticProfile asymptotic_profile_rect_d3(int n1) {
  AsymptoticProfile p;
  p.r = [](double t) { return -45.0 * t * t / 16.0 - 15.0 * t / 8.0 + 9.0 / 16.0; };
  p.R = [](double t) {
    return (-15.0 * t * t * t - 15.0 * t * t + 9.0 * t + 9.0) / 16.0;
  };
  p.r_l1 = (3.0 * std::sqrt(15.0) - 5.0) / 10.0;
  p.r_inf = 33.0 / 8.0;
  p.rprime_inf = 15.0 / 2.0;
  p.alpha = 3;
  // Direct inspection covers 2..n1; the constant below bounds the epsilon
  // term on the remaining range n >= n1+1.
  p.mu = rect_d3_mu(n1 + 1);
  p.n0 = n0_threshold(p.r_inf, p.rprime_inf, p.r_l1, p.mu, false);
  return p;
}

double estimate_r_numeric(const WeightKernel& kernel, double t, long n_probe,
                          double delta) {
  if (n_probe < 2) fail(ErrorCode::InvalidArgument, "probe needs n >= 2");
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::InvalidArgument, "delta must lie in (0,1)");
  const double lambda = 2.0 * static_cast<double>(n_probe) - delta;
  const long n = n_probe;
  auto w = [&](double node) {
    double x = std::abs(node) / lambda;
    return x <= 1.0 ? kernel(x) : 0.0;
  };
  auto rule_at = [&](bool odd, double x) {
    long last = odd ? n : n - 1;
    long double s0 = 0, s2 = 0, s4 = 0;
    for (long l = 1 - n; l <= last; ++l) {
      double node = odd ? 2.0 * l - 1.0 : 2.0 * l;
      long double x2 = static_cast<long double>(node) * node;
      double wl = w(node);
      s0 += wl;
      s2 += wl * x2;
      s4 += wl * x2 * x2;
    }
    double node = odd ? 2.0 * x - 1.0 : 2.0 * x;
    long double x2 = static_cast<long double>(node) * node;
    return static_cast<double>(w(node) * (s4 - s2 * x2) / (s0 * s4 - s2 * s2));
  };
  double x = t * static_cast<double>(n_probe);
  return (rule_at(false, x) - rule_at(true, x)) * static_cast<double>(n_probe) *
         static_cast<double>(n_probe);
}

RProfile make_r_profile(const WeightKernel& kernel, double tol) {
  RProfile p{0, 0, 0, 0, 0, 0, 0, 0, 0, kernel};
  p.I0 = kernel.moment(0, tol);
  p.I1 = kernel.moment(1, tol);
  p.I2 = kernel.moment(2, tol);
  p.I3 = kernel.moment(3, tol);
  p.I4 = kernel.moment(4, tol);
  p.I2p = kernel.derivative_moment(2, tol);
  p.I4p = kernel.derivative_moment(4, tol);
  p.phi1 = kernel.at_one();
  p.D = p.I0 * p.I4 - p.I2 * p.I2;
  if (!(p.D > 0))
    fail(ErrorCode::InvalidArgument,
         "moment matrix not positive (I0 I4 - I2^2 <= 0)");
  return p;
}

double RProfile::operator()(double t) const {
  const double a = std::abs(t);
  const double sgn = t >= 0 ? 1.0 : -1.0;
  const double ph = kernel(a);
  const double dph = sgn * kernel.derivative(a);
  const double num1 = I4 - t * t * I2;
  const double t1 = 0.25 * dph * num1 / D;
  const double t2 =
      -0.25 * ph * (I4p + 4.0 * I3 + 2.0 * t * I2 - t * t * (I2p + 2.0 * I1)) /
      D;
  const double t3 = -0.25 * ph * num1 *
                    ((-phi1) * I4 - I0 * (I4p + 4.0 * I3) +
                     2.0 * I2 * (I2p + 2.0 * I1)) /
                    (D * D);
  return t1 + t2 + t3;
}

double r_l1_norm(const WeightKernel& kernel, double tol) {
  RProfile r = make_r_profile(kernel);
  // R on a dense grid by segment accumulation; |t| = 0 is a grid point so
  // the kink of r never sits inside a quadrature panel.
  const int cells = 1024;
  std::vector<double> ts(cells + 1), Rv(cells + 1, 0.0);
  QuadratureOptions seg;
  seg.tol = 1e-13;
  for (int i = 0; i <= cells; ++i) ts[static_cast<size_t>(i)] = -1.0 + 2.0 * i / cells;
  for (int i = 1; i <= cells; ++i)
    Rv[static_cast<size_t>(i)] =
        Rv[static_cast<size_t>(i - 1)] +
        integrate(r, ts[static_cast<size_t>(i - 1)], ts[static_cast<size_t>(i)], seg);
  auto R = [&](double t) {
    int i = static_cast<int>(std::floor((t + 1.0) / 2.0 * cells));
    i = std::clamp(i, 0, cells - 1);
    return Rv[static_cast<size_t>(i)] + integrate(r, ts[static_cast<size_t>(i)], t, seg);
  };
  // Sign changes of R, bisected to ~1e-13.
  std::vector<double> cuts{-1.0, 0.0, 1.0};
  for (int i = 0; i < cells; ++i) {
    double ra = Rv[static_cast<size_t>(i)], rb = Rv[static_cast<size_t>(i + 1)];
    if (ra == 0.0 || ra * rb >= 0.0) continue;
    double a = ts[static_cast<size_t>(i)], b = ts[static_cast<size_t>(i + 1)];
    double fa = ra;
    while (b - a > 1e-13) {
      double m = 0.5 * (a + b);
      double fm = R(m);
      if (fa * fm <= 0.0)
        b = m;
      else {
        a = m;
        fa = fm;
      }
    }
    cuts.push_back(0.5 * (a + b));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  QuadratureOptions piece;
  piece.tol = tol / static_cast<double>(cuts.size());
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += std::abs(integrate(R, cuts[i], cuts[i + 1], piece));
  return total;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConvergentPositiveMask: return "convergent-positive-mask";
    case Verdict::ConvergentDirectInspection:
      return "convergent-direct-inspection";
    case Verdict::ConvergentAsymptotic: return "convergent-asymptotic";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConvergenceReport certify_family(const WeightKernel& kernel, int degree,
                                 SupportSituation situation, double delta,
                                 int n_max, std::optional<double> mu,
                                 std::optional<double> alpha) {
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::InvalidArgument, "delta must lie in (0,1)");
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "n_max must be >= 2");
  if (alpha && *alpha != 3.0)
    fail(ErrorCode::InvalidArgument, "only the alpha = 3 bound is implemented");

  ConvergenceReport rep;
  rep.kernel = kernel.spec_string();
  rep.degree = degree;
  rep.situation = situation;
  rep.delta = delta;
  rep.n_min = 2;
  rep.n_max = n_max;
  rep.slack = 1e-9;

  bool all_positive = true;
  bool all_below_one = true;
  for (int n = 2; n <= n_max; ++n) {
    double lambda = situation == SupportSituation::OddLonger
                        ? 2.0 * n - 1.0 + delta
                        : 2.0 * n + delta;
    SchemeSpec spec = SchemeSpec::make(kernel, lambda, degree);
    Mask mask =
        degree <= 3 ? build_mask_closed_form(spec) : build_mask(spec);
    all_positive = all_positive && positive_mask_verdict(mask);
    DifferenceMask dm = difference_mask(mask);
    double norm = dm.max_norm();
    rep.norms.emplace_back(n, norm);
    if (norm > rep.max_norm) {
      rep.max_norm = norm;
      rep.argmax_n = n;
    }
    all_below_one = all_below_one && norm < 1.0 - rep.slack;
  }

  if (degree >= 2 && situation == SupportSituation::OddLonger) {
    try {
      rep.r_l1 = r_l1_norm(kernel);
    } catch (const Error&) {
      // profile unavailable (e.g. no usable moments); report without it
    }
  }

  double mu_used = 0;
  bool have_mu = false;
  if (mu) {
    mu_used = *mu;
    have_mu = true;
  } else if (kernel.family() == KernelFamily::Rect && degree >= 2 &&
             degree <= 3 && situation == SupportSituation::OddLonger) {
    mu_used = rect_d3_mu(n_max + 1);
    have_mu = true;
  }
  if (have_mu && rep.r_l1 && *rep.r_l1 < 1.0) {
    RProfile r = make_r_profile(kernel);
    double r_inf = 0, rp_inf = 0;
    const int scan = 4096;
    double prev = r(-1.0);
    for (int i = 0; i <= scan; ++i) {
      double t = -1.0 + 2.0 * i / scan;
      double v = r(t);
      r_inf = std::max(r_inf, std::abs(v));
      if (i > 0)
        rp_inf = std::max(rp_inf, std::abs(v - prev) * scan / 2.0);
      prev = v;
    }
    // sampled suprema can undershoot; pad them before they enter the bound
    rep.n0 = n0_threshold(1.005 * r_inf, 1.005 * rp_inf, *rep.r_l1, mu_used,
                          situation == SupportSituation::EvenLonger);
  }

  if (degree <= 1 && all_positive) {
    rep.verdict = Verdict::ConvergentPositiveMask;
    rep.route = "positive-mask criterion (applies to every bandwidth)";
  } else if (all_below_one && rep.n0 && *rep.n0 <= n_max + 1) {
    rep.verdict = Verdict::ConvergentAsymptotic;
    rep.route =
        "direct inspection for n <= n_max combined with the asymptotic "
        "bound for n > n_max";
  } else if (all_below_one) {
    rep.verdict = Verdict::ConvergentDirectInspection;
    rep.route = "direct inspection of difference-scheme norms";
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.route = "sufficient condition failed for at least one n";
  }
  return rep;
}

ConvergenceReport certify_rect_d3_exact(int n_max) {
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "n_max must be >= 2");
  ConvergenceReport rep;
  rep.kernel = "rect";
  rep.degree = 3;
  rep.situation = SupportSituation::OddLonger;
  rep.n_min = 2;
  rep.n_max = n_max;
  rep.exact = true;
  rep.slack = 0;

  Rat max_norm(0);
  bool all_below_one = true;
  for (int n = 2; n <= n_max; ++n) {
    RationalDifferenceMask dm =
        difference_mask_rational(rect_d3_family_mask(n));
    Rat norm = dm.max_norm();
    rep.norms.emplace_back(n, norm.to_double());
    if (norm > max_norm) {
      max_norm = norm;
      rep.argmax_n = n;
    }
    all_below_one = all_below_one && norm < Rat(1);
  }
  rep.max_norm = max_norm.to_double();
  rep.max_norm_exact = max_norm.to_string();

  AsymptoticProfile prof = asymptotic_profile_rect_d3(n_max);
  rep.r_l1 = prof.r_l1;
  rep.n0 = prof.n0;
  if (all_below_one && prof.n0 <= n_max + 1) {
    rep.verdict = Verdict::ConvergentAsymptotic;
    rep.route =
        "exact rational direct inspection for n <= n_max combined with the "
        "asymptotic bound for n > n_max";
  } else if (all_below_one) {
    rep.verdict = Verdict::ConvergentDirectInspection;
    rep.route = "exact rational direct inspection";
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.route = "norm >= 1 for at least one n";
  }
  return rep;
}

bool flip_equivalence_check(const Mask& mask, double tol) {
  NormalizedMask nm = normalized(mask);
  NormalizedMask flipped = nm;
  std::reverse(flipped.first.begin(), flipped.first.end());
  std::reverse(flipped.second.begin(), flipped.second.end());
  DifferenceMask dm = difference_from_normalized(nm);
  DifferenceMask fl = difference_from_normalized(flipped);
  return std::abs(dm.q0_l1 - fl.q1_l1) <= tol;
}

}  // namespace wlpr
