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

#ifndef WLPR_ENGINE_HPP
#define WLPR_ENGINE_HPP

#include <cstddef>
#include <vector>

#include "masks.hpp"

namespace wlpr {

enum class Boundary { Periodic, ConstantExtend, ReflectExtend };

/// A refinable sequence of scalar (dim=1) or planar (dim=2) samples,
/// stored flat (sample j occupies values[j*dim .. j*dim+dim-1]).
struct Series {
  std::vector<double> values;
  int dim = 1;
  int level = 0;

  size_t count() const { return values.size() / static_cast<size_t>(dim); }
  double at(size_t j, int c) const {
    return values[j * static_cast<size_t>(dim) + static_cast<size_t>(c)];
  }
};

/// Default cap on total output samples across a refine() call.
inline constexpr size_t kDefaultSampleCap = size_t{1} << 22;

/// One binary refinement step. Periodic output has 2N samples (indices
/// 2j+i, j = 0..N-1); the extension policies produce 2N-1 samples covering
/// positions 0, 1/2, ..., N-1 of the input grid.
Series refine_once(const Series& data, const Mask& mask, Boundary boundary);

Series refine(const Series& data, const Mask& mask, Boundary boundary,
              int levels, size_t sample_cap = kDefaultSampleCap);

/// delta-data refinement on a window wide enough that the truncation never
/// touches the limit support; returns abscissae 2^-k j and values.
struct LimitSamples {
  std::vector<double> t;
  std::vector<double> v;
};
LimitSamples basic_limit_samples(const Mask& mask, int levels);

/// min(data) <= refined <= max(data) after k levels, up to roundoff slack.
/// Only meaningful for nonnegative masks; MaskNotPositive otherwise.
bool check_no_overshoot(const Series& data, const Mask& mask,
                        Boundary boundary, int levels);

/// Every refinement level stays non-decreasing (scalar data).
bool check_monotone_preserved(const Series& data, const Mask& mask,
                              Boundary boundary, int levels);

}  // namespace wlpr

#endif  // WLPR_ENGINE_HPP
