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

// wlpr command line: build/inspect schemes, refine data files, certify
// convergence, compute capability scores, trace the Pareto front and run the
// built-in experiments. Everything goes through the public C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wlpr/wlpr.h"

namespace {

// Exit codes: 0 ok, 2 validation, 3 numerical failure.
int exit_code_for(wlpr_status status) {
  switch (status) {
    case WLPR_OK:
      return 0;
    case WLPR_ERR_SINGULAR:
    case WLPR_ERR_QUADRATURE:
    case WLPR_ERR_INTERNAL:
      return 3;
    default:
      return 2;
  }
}

[[noreturn]] void die(wlpr_status status) {
  std::cerr << "error: " << wlpr_strerror(status);
  const char* detail = wlpr_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  std::exit(exit_code_for(status));
}

void check(wlpr_status status) {
  if (status != WLPR_OK) die(status);
}

struct SchemeArgs {
  std::string kernel = "rect";
  double lambda = 3.7;
  int degree = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kernel", kernel,
                    "rect|tria|epan|bisq|tcub|trwt|exp:<xi>|pq:<p>:<q>")
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "bandwidth (non-integer, > 1)")
        ->capture_default_str();
    cmd->add_option("--degree", degree, "regression degree (>= 0)")
        ->capture_default_str();
  }
};

std::string slurp_string(char* owned) {
  std::string s = owned ? owned : "";
  wlpr_string_free(owned);
  return s;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(2);
  }
  out << text << "\n";
}

wlpr_boundary parse_boundary_flag(const std::string& name) {
  if (name == "periodic") return WLPR_BOUNDARY_PERIODIC;
  if (name == "constant") return WLPR_BOUNDARY_CONSTANT;
  if (name == "reflect") return WLPR_BOUNDARY_REFLECT;
  std::cerr << "error: boundary must be periodic|constant|reflect\n";
  std::exit(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Subdivision schemes from weighted local polynomial regression"};
  app.require_subcommand(1);

  // ---- mask -------------------------------------------------------------
  SchemeArgs mask_args;
  std::string mask_out;
  CLI::App* cmd_mask =
      app.add_subcommand("mask", "build a scheme's mask and report");
  mask_args.attach(cmd_mask);
  cmd_mask->add_option("--out", mask_out, "write JSON here instead of stdout");

  // ---- refine -----------------------------------------------------------
  SchemeArgs refine_args;
  std::string refine_in, refine_out, refine_boundary = "periodic";
  int refine_levels = 5;
  CLI::App* cmd_refine =
      app.add_subcommand("refine", "refine a CSV data file k times");
  refine_args.attach(cmd_refine);
  cmd_refine->add_option("input", refine_in, "input CSV (columns x[,y])")
      ->required();
  cmd_refine->add_option("--out", refine_out, "output CSV path")->required();
  cmd_refine->add_option("--levels", refine_levels, "refinement levels")
      ->capture_default_str();
  cmd_refine
      ->add_option("--boundary", refine_boundary,
                   "periodic|constant|reflect")
      ->capture_default_str();

  // ---- certify ----------------------------------------------------------
  std::string cert_kernel = "rect", cert_out;
  int cert_degree = 3, cert_nmax = 200;
  double cert_delta = 0.5;
  std::string cert_situation = "odd-longer";
  bool cert_exact = false, cert_norms = false;
  std::optional<double> cert_mu, cert_alpha;
  CLI::App* cmd_certify = app.add_subcommand(
      "certify", "convergence certification for a scheme family over n");
  cmd_certify->add_option("--kernel", cert_kernel, "kernel spec")
      ->capture_default_str();
  cmd_certify->add_option("--degree", cert_degree, "regression degree")
      ->capture_default_str();
  cmd_certify->add_option("--nmax", cert_nmax, "sweep n = 2..nmax")
      ->capture_default_str();
  cmd_certify
      ->add_option("--delta", cert_delta,
                   "bandwidth offset within the unit interval")
      ->capture_default_str();
  cmd_certify
      ->add_option("--situation", cert_situation, "odd-longer|even-longer")
      ->capture_default_str();
  cmd_certify->add_flag("--exact", cert_exact,
                        "exact rational route (rect, d = 2,3)");
  cmd_certify->add_flag("--norms", cert_norms, "include the per-n norm table");
  bool cert_text = false;
  cmd_certify->add_flag("--text", cert_text, "human-readable report");
  double mu_val = 0, alpha_val = 0;
  CLI::Option* mu_opt =
      cmd_certify->add_option("--mu", mu_val, "epsilon bound constant");
  CLI::Option* alpha_opt =
      cmd_certify->add_option("--alpha", alpha_val, "epsilon bound exponent");
  cmd_certify->add_option("--out", cert_out, "write JSON here");

  // ---- metrics ----------------------------------------------------------
  SchemeArgs metrics_args;
  std::string metrics_out;
  bool metrics_no_mask = false;
  CLI::App* cmd_metrics = app.add_subcommand(
      "metrics", "approximation / denoising capability scores");
  metrics_args.attach(cmd_metrics);
  cmd_metrics->add_flag("--asymptotic-only", metrics_no_mask,
                        "skip the finite-bandwidth mask metrics");
  cmd_metrics->add_option("--out", metrics_out, "write JSON here");

  // ---- pareto -----------------------------------------------------------
  int pareto_degree = 2, pareto_steps = 60;
  double pareto_pmin = 1, pareto_pmax = 20, pareto_qmin = 0.5,
         pareto_qmax = 20;
  std::string pareto_out;
  CLI::App* cmd_pareto = app.add_subcommand(
      "pareto", "approximation vs denoising front over (p, q)");
  cmd_pareto->add_option("--degree", pareto_degree)->capture_default_str();
  cmd_pareto->add_option("--pmin", pareto_pmin)->capture_default_str();
  cmd_pareto->add_option("--pmax", pareto_pmax)->capture_default_str();
  cmd_pareto->add_option("--qmin", pareto_qmin)->capture_default_str();
  cmd_pareto->add_option("--qmax", pareto_qmax)->capture_default_str();
  cmd_pareto->add_option("--steps", pareto_steps)->capture_default_str();
  cmd_pareto->add_option("--out", pareto_out, "write CSV here");

  // ---- experiment ---------------------------------------------------------
  std::string exp_name, exp_config, exp_out_dir, exp_kernel = "rect";
  double exp_lambda = 3.7;
  int exp_degree = 0, exp_levels = 5, exp_k = 1;
  std::optional<double> exp_sigma;
  std::uint64_t exp_seed = 0;
  std::string exp_summary_out;
  CLI::App* cmd_exp = app.add_subcommand(
      "experiment",
      "star-curve | lambda-scaling | gibbs | staircase | basic-limits");
  cmd_exp->add_option("name", exp_name, "experiment name (or use --config)");
  cmd_exp->add_option("--config", exp_config, "JSON config file");
  cmd_exp->add_option("--kernel", exp_kernel)->capture_default_str();
  cmd_exp->add_option("--lambda", exp_lambda)->capture_default_str();
  cmd_exp->add_option("--degree", exp_degree)->capture_default_str();
  cmd_exp->add_option("--levels", exp_levels)->capture_default_str();
  cmd_exp->add_option("--k", exp_k, "lambda-scaling index (h = 10^-k)")
      ->capture_default_str();
  double sigma_val = 0;
  CLI::Option* sigma_opt = cmd_exp->add_option(
      "--noise-sigma", sigma_val, "add normal noise with this sigma");
  cmd_exp->add_option("--seed", exp_seed, "noise seed")->capture_default_str();
  cmd_exp->add_option("--out", exp_out_dir, "directory for data files");
  cmd_exp->add_option("--summary-out", exp_summary_out,
                      "write the summary JSON here");

  CLI11_PARSE(app, argc, argv);

  if (cmd_mask->parsed()) {
    wlpr_scheme* scheme = nullptr;
    check(wlpr_scheme_create(mask_args.kernel.c_str(), mask_args.lambda,
                             mask_args.degree, &scheme));
    wlpr_mask* mask = nullptr;
    wlpr_status s = wlpr_mask_build(scheme, &mask);
    if (s != WLPR_OK) {
      wlpr_scheme_destroy(scheme);
      die(s);
    }
    char* json_text = nullptr;
    s = wlpr_mask_to_json(mask, &json_text);
    wlpr_mask_destroy(mask);
    wlpr_scheme_destroy(scheme);
    check(s);
    emit(slurp_string(json_text), mask_out);
    return 0;
  }

  if (cmd_refine->parsed()) {
    wlpr_scheme* scheme = nullptr;
    check(wlpr_scheme_create(refine_args.kernel.c_str(), refine_args.lambda,
                             refine_args.degree, &scheme));
    wlpr_mask* mask = nullptr;
    wlpr_status s = wlpr_mask_build(scheme, &mask);
    wlpr_scheme_destroy(scheme);
    check(s);
    s = wlpr_refine_file(mask, refine_in.c_str(), refine_out.c_str(),
                         parse_boundary_flag(refine_boundary), refine_levels);
    wlpr_mask_destroy(mask);
    check(s);
    std::cout << "wrote " << refine_out << "\n";
    return 0;
  }

  if (cmd_certify->parsed()) {
    if (*mu_opt) cert_mu = mu_val;
    if (*alpha_opt) cert_alpha = alpha_val;
    if (cert_situation != "odd-longer" && cert_situation != "even-longer") {
      std::cerr << "error: --situation must be odd-longer|even-longer\n";
      return 2;
    }
    char* json_text = nullptr;
    double mu_c = cert_mu.value_or(0);
    double alpha_c = cert_alpha.value_or(0);
    check(wlpr_certify_family(
        cert_kernel.c_str(), cert_degree,
        cert_situation == "even-longer" ? 1 : 0, cert_delta, cert_nmax,
        cert_mu ? &mu_c : nullptr, cert_alpha ? &alpha_c : nullptr,
        cert_exact ? 1 : 0, cert_norms ? 1 : 0, &json_text));
    std::string report = slurp_string(json_text);
    if (cert_text) {
      nlohmann::json j = nlohmann::json::parse(report);
      std::ostringstream os;
      os << "family:   kernel=" << j.at("kernel").get<std::string>()
         << " degree=" << j.at("degree") << " situation="
         << j.at("situation").get<std::string>() << "\n"
         << "verdict:  " << j.at("verdict").get<std::string>() << "\n"
         << "route:    " << j.at("route").get<std::string>() << "\n"
         << "n range:  " << j.at("n_range").at(0) << ".."
         << j.at("n_range").at(1) << "\n"
         << "max norm: " << j.at("max_norm").get<double>() << " at n="
         << j.at("max_norm_at_n");
      if (j.contains("max_norm_exact"))
        os << " (= " << j.at("max_norm_exact").get<std::string>() << ")";
      os << "\n";
      if (j.contains("r_l1")) os << "lim |R|_1: " << j.at("r_l1") << "\n";
      if (j.contains("n0")) os << "n0: " << j.at("n0") << "\n";
      std::string text = os.str();
      text.pop_back();
      emit(text, cert_out);
    } else {
      emit(report, cert_out);
    }
    return 0;
  }

  if (cmd_metrics->parsed()) {
    nlohmann::json out;
    double ac = 0, h2 = 0;
    check(wlpr_capability_scores(metrics_args.kernel.c_str(),
                                 metrics_args.degree, &ac, &h2));
    out["kernel"] = metrics_args.kernel;
    out["degree"] = metrics_args.degree;
    out["approx_const"] = ac;
    out["h_l2sq"] = h2;
    if (!metrics_no_mask) {
      wlpr_scheme* scheme = nullptr;
      check(wlpr_scheme_create(metrics_args.kernel.c_str(),
                               metrics_args.lambda, metrics_args.degree,
                               &scheme));
      wlpr_mask* mask = nullptr;
      wlpr_status s = wlpr_mask_build(scheme, &mask);
      wlpr_scheme_destroy(scheme);
      check(s);
      // even degrees coincide with the next odd one, where the leading
      // moment is nonzero; report eta there
      int eta_degree = metrics_args.degree % 2 == 0 ? metrics_args.degree + 1
                                                    : metrics_args.degree;
      double eta = 0, dn = 0;
      wlpr_status s1 = wlpr_mask_eta(mask, eta_degree, &eta);
      wlpr_status s2 = wlpr_mask_denoise_factor(mask, &dn);
      wlpr_mask_destroy(mask);
      check(s1);
      check(s2);
      out["lambda"] = metrics_args.lambda;
      out["eta"] = eta;
      out["eta_degree"] = eta_degree;
      out["denoise_factor"] = dn;
    }
    emit(out.dump(2), metrics_out);
    return 0;
  }

  if (cmd_pareto->parsed()) {
    char* csv = nullptr;
    check(wlpr_pareto_csv(pareto_degree, pareto_pmin, pareto_pmax, pareto_qmin,
                          pareto_qmax, pareto_steps, &csv));
    std::string text = slurp_string(csv);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    emit(text, pareto_out);
    return 0;
  }

  if (cmd_exp->parsed()) {
    nlohmann::json cfg;
    if (!exp_config.empty()) {
      std::ifstream in(exp_config);
      if (!in) {
        std::cerr << "error: cannot open " << exp_config << "\n";
        return 2;
      }
      try {
        in >> cfg;
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad config JSON: " << e.what() << "\n";
        return 2;
      }
    }
    if (!exp_name.empty()) cfg["name"] = exp_name;
    if (!cfg.contains("name")) {
      std::cerr << "error: experiment name required (argument or --config)\n";
      return 2;
    }
    // Flags override the config; unset flags leave the experiment's own
    // defaults (lambda-scaling runs d=3, gibbs/staircase run 6 levels).
    auto set_if = [&](const char* key, const CLI::Option* opt, auto value) {
      if (opt->count() > 0) cfg[key] = value;
    };
    set_if("kernel", cmd_exp->get_option("--kernel"), exp_kernel);
    set_if("lambda", cmd_exp->get_option("--lambda"), exp_lambda);
    set_if("degree", cmd_exp->get_option("--degree"), exp_degree);
    set_if("levels", cmd_exp->get_option("--levels"), exp_levels);
    set_if("k", cmd_exp->get_option("--k"), exp_k);
    if (*sigma_opt) {
      cfg["noise"] = {{"distribution", "normal"},
                      {"sigma", sigma_val},
                      {"seed", exp_seed}};
    }
    if (!exp_out_dir.empty()) cfg["out"] = exp_out_dir;
    char* summary = nullptr;
    check(wlpr_experiment_run(cfg.dump().c_str(), &summary));
    emit(slurp_string(summary), exp_summary_out);
    return 0;
  }

  return 0;
}
