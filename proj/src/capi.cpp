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

#include "wlpr/wlpr.h"

#include <cstring>
#include <sstream>
#include <string>

#include "convergence.hpp"
#include "engine.hpp"
#include "experiments.hpp"
#include "masks.hpp"
#include "metrics.hpp"
#include "serialize.hpp"

using namespace wlpr;

struct wlpr_scheme {
  SchemeSpec spec;
};
struct wlpr_mask {
  Mask mask;
};

namespace {

thread_local std::string g_last_error;

wlpr_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return WLPR_ERR_INVALID_ARGUMENT;
    case ErrorCode::IntegerBandwidth: return WLPR_ERR_INTEGER_BANDWIDTH;
    case ErrorCode::BandwidthTooSmall: return WLPR_ERR_BANDWIDTH_TOO_SMALL;
    case ErrorCode::DegreeTooHigh: return WLPR_ERR_DEGREE_TOO_HIGH;
    case ErrorCode::SingularNormalEquations: return WLPR_ERR_SINGULAR;
    case ErrorCode::QuadratureFailure: return WLPR_ERR_QUADRATURE;
    case ErrorCode::DataTooShort: return WLPR_ERR_DATA_TOO_SHORT;
    case ErrorCode::LevelBudgetExceeded: return WLPR_ERR_LEVEL_BUDGET;
    case ErrorCode::MaskNotPositive: return WLPR_ERR_MASK_NOT_POSITIVE;
    case ErrorCode::NotPi0Reproducing: return WLPR_ERR_NOT_PI0;
    case ErrorCode::OutOfScope: return WLPR_ERR_OUT_OF_SCOPE;
    case ErrorCode::IoFailure: return WLPR_ERR_IO;
  }
  return WLPR_ERR_INTERNAL;
}

template <class Fn>
wlpr_status guarded(Fn&& fn) {
  try {
    fn();
    return WLPR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WLPR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WLPR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wlpr_status require(bool cond, const char* what) {
  if (cond) return WLPR_OK;
  g_last_error = what;
  return WLPR_ERR_INVALID_ARGUMENT;
}

Boundary to_boundary(wlpr_boundary b) {
  switch (b) {
    case WLPR_BOUNDARY_PERIODIC: return Boundary::Periodic;
    case WLPR_BOUNDARY_CONSTANT: return Boundary::ConstantExtend;
    case WLPR_BOUNDARY_REFLECT: return Boundary::ReflectExtend;
  }
  fail(ErrorCode::InvalidArgument, "bad boundary enum");
}

// Exact mask JSON when the kernel/bandwidth admit the rational path; the
// bandwidth is recovered as an exact decimal with up to 9 fractional digits.
json mask_json_with_exact(const Mask& mask) {
  const WeightKernel& k = mask.spec.kernel;
  if (k.rational_exact() && mask.spec.degree <= 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", mask.spec.lambda);
    try {
      RationalMask rm =
          build_mask_rational(k, Rat::from_decimal(buf), mask.spec.degree);
      json j = mask_to_json(rm, mask.spec);
      j["report"] = mask_report(mask);
      return j;
    } catch (const Error&) {
      // fall through to the float form
    }
  }
  json j = mask_to_json(mask);
  j["report"] = mask_report(mask);
  return j;
}

}  // namespace

extern "C" {

const char* wlpr_strerror(wlpr_status status) {
  switch (status) {
    case WLPR_OK: return "ok";
    case WLPR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WLPR_ERR_INTEGER_BANDWIDTH: return "bandwidth must not be an integer";
    case WLPR_ERR_BANDWIDTH_TOO_SMALL: return "bandwidth must exceed 1";
    case WLPR_ERR_DEGREE_TOO_HIGH: return "degree too high for bandwidth";
    case WLPR_ERR_SINGULAR: return "singular normal equations";
    case WLPR_ERR_QUADRATURE: return "quadrature failure";
    case WLPR_ERR_DATA_TOO_SHORT: return "data too short";
    case WLPR_ERR_LEVEL_BUDGET: return "level budget exceeded";
    case WLPR_ERR_MASK_NOT_POSITIVE: return "mask not positive";
    case WLPR_ERR_NOT_PI0: return "mask does not reproduce constants";
    case WLPR_ERR_OUT_OF_SCOPE: return "outside the certified scope";
    case WLPR_ERR_IO: return "i/o failure";
    case WLPR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wlpr_last_error(void) { return g_last_error.c_str(); }

void wlpr_string_free(char* s) { delete[] s; }
void wlpr_buffer_free(double* buf) { delete[] buf; }

wlpr_status wlpr_scheme_create(const char* kernel, double lambda, int degree,
                               wlpr_scheme** out) {
  if (wlpr_status s = require(kernel && out, "null argument")) return s;
  return guarded([&] {
    *out = new wlpr_scheme{
        SchemeSpec::make(WeightKernel::parse(kernel), lambda, degree)};
  });
}

void wlpr_scheme_destroy(wlpr_scheme* scheme) { delete scheme; }

int wlpr_scheme_n(const wlpr_scheme* scheme) {
  return scheme ? scheme->spec.n() : 0;
}

int wlpr_scheme_situation(const wlpr_scheme* scheme) {
  return scheme && scheme->spec.situation() == SupportSituation::EvenLonger
             ? 1
             : 0;
}

wlpr_status wlpr_mask_build(const wlpr_scheme* scheme, wlpr_mask** out) {
  if (wlpr_status s = require(scheme && out, "null argument")) return s;
  return guarded([&] { *out = new wlpr_mask{build_mask(scheme->spec)}; });
}

void wlpr_mask_destroy(wlpr_mask* mask) { delete mask; }

size_t wlpr_mask_even_count(const wlpr_mask* mask) {
  return mask ? mask->mask.even.size() : 0;
}
size_t wlpr_mask_odd_count(const wlpr_mask* mask) {
  return mask ? mask->mask.odd.size() : 0;
}
int wlpr_mask_even_first_index(const wlpr_mask* mask) {
  return mask ? mask->mask.even_first : 0;
}
int wlpr_mask_odd_first_index(const wlpr_mask* mask) {
  return mask ? mask->mask.odd_first : 0;
}
int wlpr_mask_dd_coincident(const wlpr_mask* mask) {
  return mask && mask->mask.dd_coincident ? 1 : 0;
}

wlpr_status wlpr_mask_even(const wlpr_mask* mask, double* buf,
                           size_t capacity) {
  if (wlpr_status s = require(mask && buf, "null argument")) return s;
  if (wlpr_status s =
          require(capacity >= mask->mask.even.size(), "buffer too small"))
    return s;
  std::memcpy(buf, mask->mask.even.data(),
              mask->mask.even.size() * sizeof(double));
  return WLPR_OK;
}

wlpr_status wlpr_mask_odd(const wlpr_mask* mask, double* buf,
                          size_t capacity) {
  if (wlpr_status s = require(mask && buf, "null argument")) return s;
  if (wlpr_status s =
          require(capacity >= mask->mask.odd.size(), "buffer too small"))
    return s;
  std::memcpy(buf, mask->mask.odd.data(),
              mask->mask.odd.size() * sizeof(double));
  return WLPR_OK;
}

wlpr_status wlpr_mask_to_json(const wlpr_mask* mask, char** out_json) {
  if (wlpr_status s = require(mask && out_json, "null argument")) return s;
  return guarded([&] {
    *out_json = dup_string(mask_json_with_exact(mask->mask).dump(2));
  });
}

wlpr_status wlpr_refine(const wlpr_mask* mask, const double* values,
                        size_t count, size_t dim, wlpr_boundary boundary,
                        int levels, double** out_values, size_t* out_count) {
  if (wlpr_status s =
          require(mask && values && out_values && out_count, "null argument"))
    return s;
  if (wlpr_status s = require(dim == 1 || dim == 2, "dim must be 1 or 2"))
    return s;
  return guarded([&] {
    Series in;
    in.dim = static_cast<int>(dim);
    in.values.assign(values, values + count * dim);
    Series out = refine(in, mask->mask, to_boundary(boundary), levels);
    *out_count = out.count();
    double* buf = new double[out.values.size()];
    std::memcpy(buf, out.values.data(), out.values.size() * sizeof(double));
    *out_values = buf;
  });
}

wlpr_status wlpr_refine_file(const wlpr_mask* mask, const char* in_csv_path,
                             const char* out_csv_path, wlpr_boundary boundary,
                             int levels) {
  if (wlpr_status s =
          require(mask && in_csv_path && out_csv_path, "null argument"))
    return s;
  return guarded([&] {
    Series in = read_series_file(in_csv_path);
    Series out = refine(in, mask->mask, to_boundary(boundary), levels);
    std::ostringstream meta;
    meta << "wlpr refine kernel=" << mask->mask.spec.kernel.spec_string()
         << " lambda=" << mask->mask.spec.lambda
         << " degree=" << mask->mask.spec.degree << " levels=" << levels
         << " boundary=" << boundary_name(to_boundary(boundary));
    write_series_file(out_csv_path, out, {meta.str()});
  });
}

wlpr_status wlpr_mask_difference_norms(const wlpr_mask* mask, double* q0_l1,
                                       double* q1_l1) {
  if (wlpr_status s = require(mask && q0_l1 && q1_l1, "null argument"))
    return s;
  return guarded([&] {
    DifferenceMask dm = difference_mask(mask->mask);
    *q0_l1 = dm.q0_l1;
    *q1_l1 = dm.q1_l1;
  });
}

wlpr_status wlpr_mask_positive_verdict(const wlpr_mask* mask, int* verdict) {
  if (wlpr_status s = require(mask && verdict, "null argument")) return s;
  return guarded(
      [&] { *verdict = positive_mask_verdict(mask->mask) ? 1 : 0; });
}

wlpr_status wlpr_certify_family(const char* kernel, int degree, int situation,
                                double delta, int n_max, const double* mu,
                                const double* alpha, int exact,
                                int include_norm_table, char** out_json) {
  if (wlpr_status s = require(kernel && out_json, "null argument")) return s;
  return guarded([&] {
    ConvergenceReport rep;
    if (exact) {
      if (std::string(kernel) != "rect" || degree < 2 || degree > 3)
        fail(ErrorCode::InvalidArgument,
             "exact certification covers the rect d=2,3 family");
      rep = certify_rect_d3_exact(n_max);
    } else {
      rep = certify_family(
          WeightKernel::parse(kernel), degree,
          situation ? SupportSituation::EvenLonger
                    : SupportSituation::OddLonger,
          delta, n_max,
          mu ? std::optional<double>(*mu) : std::nullopt,
          alpha ? std::optional<double>(*alpha) : std::nullopt);
    }
    *out_json =
        dup_string(convergence_report_to_json(rep, include_norm_table != 0)
                       .dump(2));
  });
}

wlpr_status wlpr_r_l1_norm(const char* kernel, double tol, double* out) {
  if (wlpr_status s = require(kernel && out, "null argument")) return s;
  return guarded([&] { *out = r_l1_norm(WeightKernel::parse(kernel), tol); });
}

wlpr_status wlpr_mask_eta(const wlpr_mask* mask, int degree, double* out) {
  if (wlpr_status s = require(mask && out, "null argument")) return s;
  return guarded([&] { *out = eta_constant(mask->mask, degree); });
}

wlpr_status wlpr_mask_denoise_factor(const wlpr_mask* mask, double* out) {
  if (wlpr_status s = require(mask && out, "null argument")) return s;
  return guarded([&] { *out = denoise_factor(mask->mask); });
}

wlpr_status wlpr_capability_scores(const char* kernel, int degree,
                                   double* approx_const, double* h_l2sq) {
  if (wlpr_status s =
          require(kernel && approx_const && h_l2sq, "null argument"))
    return s;
  return guarded([&] {
    auto [ac, h2] = approx_denoise_scores(WeightKernel::parse(kernel), degree);
    *approx_const = ac;
    *h_l2sq = h2;
  });
}

wlpr_status wlpr_pareto_csv(int degree, double p_min, double p_max,
                            double q_min, double q_max, int steps,
                            char** out_csv) {
  if (wlpr_status s = require(out_csv != nullptr, "null argument")) return s;
  return guarded([&] {
    std::ostringstream os;
    os.precision(12);
    os << "p,q,approx_const,h_l2sq,dominated,label\n";
    for (const ParetoPoint& pt :
         pareto_front(degree, p_min, p_max, q_min, q_max, steps))
      os << pt.p << "," << pt.q << "," << pt.approx_const << "," << pt.h_l2sq
         << "," << (pt.dominated ? 1 : 0) << "," << pt.label << "\n";
    *out_csv = dup_string(os.str());
  });
}

wlpr_status wlpr_experiment_run(const char* config_json,
                                char** out_summary_json) {
  if (wlpr_status s =
          require(config_json && out_summary_json, "null argument"))
    return s;
  return guarded([&] {
    json cfg_json;
    try {
      cfg_json = json::parse(config_json);
    } catch (const json::exception& e) {
      fail(ErrorCode::InvalidArgument,
           std::string("bad experiment config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
      cfg = experiment_config_from_json(cfg_json);
    } catch (const json::exception& e) {
      fail(ErrorCode::InvalidArgument,
           std::string("bad experiment config: ") + e.what());
    }
    *out_summary_json = dup_string(run_experiment(cfg).dump(2));
  });
}

}  // extern "C"
