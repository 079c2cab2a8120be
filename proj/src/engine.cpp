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

#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wlpr {

namespace {

long resolve(long idx, long n, Boundary boundary) {
  switch (boundary) {
    case Boundary::Periodic: {
      long m = idx % n;
      return m < 0 ? m + n : m;
    }
    case Boundary::ConstantExtend:
      return std::clamp(idx, 0L, n - 1);
    case Boundary::ReflectExtend: {
      if (n == 1) return 0;
      long period = 2 * (n - 1);
      long m = idx % period;
      if (m < 0) m += period;
      return m < n ? m : period - m;
    }
  }
  return 0;
}

}  // namespace

Series refine_once(const Series& data, const Mask& mask, Boundary boundary) {
  const long n = static_cast<long>(data.count());
  const int dim = data.dim;
  long support = static_cast<long>(
      std::max(mask.even.size(), mask.odd.size()));
  if (n < 2 || (boundary == Boundary::Periodic && n < support))
    fail(ErrorCode::DataTooShort,
         "need at least " + std::to_string(std::max(2L, support)) +
             " samples, got " + std::to_string(n));

  const size_t out_count =
      boundary == Boundary::Periodic ? 2 * static_cast<size_t>(n)
                                     : 2 * static_cast<size_t>(n) - 1;
  Series out;
  out.dim = dim;
  out.level = data.level + 1;
  out.values.assign(out_count * static_cast<size_t>(dim), 0.0);

  auto apply = [&](const std::vector<double>& coeffs, int first, long j,
                   size_t out_idx) {
    for (int c = 0; c < dim; ++c) {
      double acc = 0.0;
      for (size_t i = 0; i < coeffs.size(); ++i) {
        long src = resolve(j + first + static_cast<long>(i), n, boundary);
        acc += coeffs[i] * data.at(static_cast<size_t>(src), c);
      }
      out.values[out_idx * static_cast<size_t>(dim) +
                 static_cast<size_t>(c)] = acc;
    }
  };

  for (long j = 0; j < n; ++j) {
    apply(mask.even, mask.even_first, j, static_cast<size_t>(2 * j));
    if (static_cast<size_t>(2 * j + 1) < out_count)
      apply(mask.odd, mask.odd_first, j, static_cast<size_t>(2 * j + 1));
  }
  return out;
}

Series refine(const Series& data, const Mask& mask, Boundary boundary,
              int levels, size_t sample_cap) {
  if (levels < 0) fail(ErrorCode::InvalidArgument, "levels must be >= 0");
  size_t projected = data.count();
  for (int k = 0; k < levels; ++k) {
    projected = boundary == Boundary::Periodic ? 2 * projected
                                               : 2 * projected - 1;
    if (projected > sample_cap)
      fail(ErrorCode::LevelBudgetExceeded,
           "refinement would produce " + std::to_string(projected) +
               " samples, cap is " + std::to_string(sample_cap));
  }
  Series cur = data;
  for (int k = 0; k < levels; ++k) cur = refine_once(cur, mask, boundary);
  return cur;
}

LimitSamples basic_limit_samples(const Mask& mask, int levels) {
  if (levels < 1) fail(ErrorCode::InvalidArgument, "levels must be >= 1");
  // The limit of delta data is supported inside the full mask support; two
  // extra samples keep the constant extension out of reach.
  long reach = 0;
  auto [full, lo] = interleave(mask);
  reach = std::max(std::labs(static_cast<long>(lo)),
                   std::labs(static_cast<long>(lo) +
                             static_cast<long>(full.size()) - 1));
  long half = reach + 2;
  Series delta;
  delta.dim = 1;
  delta.values.assign(static_cast<size_t>(2 * half + 1), 0.0);
  delta.values[static_cast<size_t>(half)] = 1.0;
  Series fine = refine(delta, mask, Boundary::ConstantExtend, levels,
                       std::numeric_limits<size_t>::max());
  LimitSamples out;
  const double scale = std::ldexp(1.0, -levels);
  out.t.reserve(fine.count());
  out.v = fine.values;
  for (size_t j = 0; j < fine.count(); ++j)
    out.t.push_back((static_cast<double>(j) - std::ldexp(half, levels)) * scale);
  return out;
}

bool check_no_overshoot(const Series& data, const Mask& mask,
                        Boundary boundary, int levels) {
  for (double v : mask.even)
    if (v < 0.0) fail(ErrorCode::MaskNotPositive, "mask has negative entries");
  for (double v : mask.odd)
    if (v < 0.0) fail(ErrorCode::MaskNotPositive, "mask has negative entries");
  double lo = *std::min_element(data.values.begin(), data.values.end());
  double hi = *std::max_element(data.values.begin(), data.values.end());
  Series fine = refine(data, mask, boundary, levels);
  // Affine combinations with nonnegative coefficients stay in [lo, hi];
  // allow accumulated roundoff only.
  double slack =
      1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  for (double v : fine.values)
    if (v < lo - slack || v > hi + slack) return false;
  return true;
}

bool check_monotone_preserved(const Series& data, const Mask& mask,
                              Boundary boundary, int levels) {
  if (data.dim != 1)
    fail(ErrorCode::InvalidArgument, "monotonicity check is for scalar data");
  double slack = 0.0;
  for (double v : data.values)
    slack = std::max(slack, std::abs(v));
  slack = 1e-12 * std::max(1.0, slack);
  Series cur = data;
  for (int k = 0; k < levels; ++k) {
    cur = refine_once(cur, mask, boundary);
    for (size_t j = 1; j < cur.count(); ++j)
      if (cur.values[j] < cur.values[j - 1] - slack) return false;
  }
  return true;
}

}  // namespace wlpr
