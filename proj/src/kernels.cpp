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

#include "kernels.hpp"

#include <cmath>
#include <cstdio>

#include "quadrature.hpp"

namespace wlpr {

WeightKernel WeightKernel::rect() {
  return WeightKernel(KernelFamily::Rect, 0, 0, 0);
}
WeightKernel WeightKernel::tria() {
  return WeightKernel(KernelFamily::Tria, 1, 1, 0);
}
WeightKernel WeightKernel::epan() {
  return WeightKernel(KernelFamily::Epan, 2, 1, 0);
}
WeightKernel WeightKernel::bisq() {
  return WeightKernel(KernelFamily::Bisq, 2, 2, 0);
}
WeightKernel WeightKernel::tcub() {
  return WeightKernel(KernelFamily::Tcub, 3, 3, 0);
}
WeightKernel WeightKernel::trwt() {
  return WeightKernel(KernelFamily::Trwt, 2, 3, 0);
}

WeightKernel WeightKernel::exponential(double xi) {
  if (!(xi > 0))
    fail(ErrorCode::InvalidArgument, "exp kernel needs xi > 0");
  return WeightKernel(KernelFamily::Exp, 0, 0, xi);
}

WeightKernel WeightKernel::power(double p, double q) {
  if (!(p >= 1))
    fail(ErrorCode::InvalidArgument, "power kernel needs p >= 1");
  if (!(q > 0))
    fail(ErrorCode::InvalidArgument, "power kernel needs q > 0");
  return WeightKernel(KernelFamily::Power, p, q, 0);
}

WeightKernel WeightKernel::parse(std::string_view spec) {
  if (spec == "rect") return rect();
  if (spec == "tria") return tria();
  if (spec == "epan") return epan();
  if (spec == "bisq") return bisq();
  if (spec == "tcub") return tcub();
  if (spec == "trwt") return trwt();
  auto num = [&](std::string_view s) {
    try {
      size_t used = 0;
      double v = std::stod(std::string(s), &used);
      if (used != s.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument,
           "bad kernel parameter: " + std::string(s));
    }
  };
  if (spec.size() > 4 && spec.substr(0, 4) == "exp:")
    return exponential(num(spec.substr(4)));
  if (spec.size() > 3 && spec.substr(0, 3) == "pq:") {
    std::string_view rest = spec.substr(3);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      fail(ErrorCode::InvalidArgument,
           "kernel spec pq:<p>:<q>, got: " + std::string(spec));
    return power(num(rest.substr(0, colon)), num(rest.substr(colon + 1)));
  }
  fail(ErrorCode::InvalidArgument,
       "unknown kernel spec: " + std::string(spec) +
           " (expected rect|tria|epan|bisq|tcub|trwt|exp:<xi>|pq:<p>:<q>)");
}

std::string WeightKernel::spec_string() const {
  char buf[64];
  switch (family_) {
    case KernelFamily::Rect: return "rect";
    case KernelFamily::Tria: return "tria";
    case KernelFamily::Epan: return "epan";
    case KernelFamily::Bisq: return "bisq";
    case KernelFamily::Tcub: return "tcub";
    case KernelFamily::Trwt: return "trwt";
    case KernelFamily::Exp:
      std::snprintf(buf, sizeof buf, "exp:%.17g", xi_);
      return buf;
    case KernelFamily::Power:
      std::snprintf(buf, sizeof buf, "pq:%.17g:%.17g", p_, q_);
      return buf;
  }
  return "?";
}

bool WeightKernel::has_power_form() const {
  return family_ != KernelFamily::Rect && family_ != KernelFamily::Exp;
}

double WeightKernel::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorCode::InvalidArgument, "phi argument outside [0,1]");
  switch (family_) {
    case KernelFamily::Rect:
      return 1.0;
    case KernelFamily::Exp:
      return std::exp(-xi_ * x);
    default:
      return std::pow(1.0 - std::pow(x, p_), q_);
  }
}

double WeightKernel::derivative(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorCode::InvalidArgument, "phi' argument outside [0,1]");
  switch (family_) {
    case KernelFamily::Rect:
      return 0.0;
    case KernelFamily::Exp:
      return -xi_ * std::exp(-xi_ * x);
    default:
      // -p q x^(p-1) (1-x^p)^(q-1); one-sided limits at the endpoints
      return -p_ * q_ * std::pow(x, p_ - 1.0) *
             std::pow(1.0 - std::pow(x, p_), q_ - 1.0);
  }
}

double WeightKernel::at_one() const {
  switch (family_) {
    case KernelFamily::Rect: return 1.0;
    case KernelFamily::Exp: return std::exp(-xi_);
    default: return 0.0;
  }
}

double WeightKernel::moment(int k, double tol) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "moment order must be >= 0");
  QuadratureOptions opts;
  opts.tol = tol;
  return integrate(
      [this, k](double x) { return (*this)(x)*std::pow(x, k); }, 0.0, 1.0,
      opts);
}

double WeightKernel::derivative_moment(int k, double tol) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "moment order must be >= 0");
  if (k == 0) return at_one() - 1.0;
  return at_one() - k * moment(k - 1, tol);
}

bool WeightKernel::rational_exact() const {
  if (family_ == KernelFamily::Rect) return true;
  if (!has_power_form()) return false;
  return p_ == std::floor(p_) && q_ == std::floor(q_);
}

Rat WeightKernel::eval_rational(const Rat& x) const {
  if (family_ == KernelFamily::Rect) return Rat(1);
  if (!rational_exact())
    fail(ErrorCode::InvalidArgument,
         "kernel has no exact rational form: " + spec_string());
  Rat one(1);
  return pow(one - pow(x, static_cast<int>(p_)), static_cast<int>(q_));
}

void validate_bandwidth(double lambda) {
  if (!(lambda > 1.0))
    fail(ErrorCode::BandwidthTooSmall,
         "bandwidth must exceed 1, got " + std::to_string(lambda));
  if (std::abs(lambda - std::round(lambda)) < 1e-9)
    fail(ErrorCode::IntegerBandwidth,
         "bandwidth must not be an integer, got " + std::to_string(lambda));
}

SampledWeights sample_weights(const WeightKernel& kernel, double lambda) {
  validate_bandwidth(lambda);
  SampledWeights out;
  out.lambda = lambda;
  long last = static_cast<long>(std::floor(lambda));
  out.w.reserve(static_cast<size_t>(last) + 1);
  for (long l = 0; l <= last; ++l)
    out.w.push_back(kernel(static_cast<double>(l) / lambda));
  return out;
}

std::vector<Rat> sample_weights_rational(const WeightKernel& kernel,
                                         const Rat& lambda) {
  validate_bandwidth(lambda.to_double());
  if (lambda.is_integer())
    fail(ErrorCode::IntegerBandwidth, "bandwidth must not be an integer");
  long last = static_cast<long>(std::floor(lambda.to_double()));
  std::vector<Rat> w;
  w.reserve(static_cast<size_t>(last) + 1);
  for (long l = 0; l <= last; ++l)
    w.push_back(kernel.eval_rational(Rat(l) / lambda));
  return w;
}

}  // namespace wlpr
