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

#include "serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wlpr {

const char* situation_name(SupportSituation s) {
  return s == SupportSituation::OddLonger ? "odd-longer" : "even-longer";
}

const char* boundary_name(Boundary b) {
  switch (b) {
    case Boundary::Periodic: return "periodic";
    case Boundary::ConstantExtend: return "constant";
    case Boundary::ReflectExtend: return "reflect";
  }
  return "?";
}

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "constant") return Boundary::ConstantExtend;
  if (name == "reflect") return Boundary::ReflectExtend;
  fail(ErrorCode::InvalidArgument,
       "boundary must be periodic|constant|reflect, got: " + name);
}

namespace {

json spec_to_json(const SchemeSpec& spec) {
  return json{{"kernel", spec.kernel.spec_string()},
              {"lambda", spec.lambda},
              {"degree", spec.degree},
              {"n", spec.n()}};
}

json mask_common(const Mask& mask) {
  json j;
  j["spec"] = spec_to_json(mask.spec);
  j["situation"] = situation_name(mask.spec.situation());
  j["even"] = mask.even;
  j["odd"] = mask.odd;
  j["first_index"] = json{{"even", mask.even_first}, {"odd", mask.odd_first}};
  j["dd_coincident"] = mask.dd_coincident;
  return j;
}

}  // namespace

json mask_to_json(const Mask& mask) { return mask_common(mask); }

json mask_to_json(const RationalMask& rm, const SchemeSpec& spec) {
  Mask dbl = to_double_mask(rm, spec);
  json j = mask_common(dbl);
  json ev = json::array(), od = json::array();
  for (const Rat& r : rm.even)
    ev.push_back(json::array({r.num_string(), r.den_string()}));
  for (const Rat& r : rm.odd)
    od.push_back(json::array({r.num_string(), r.den_string()}));
  j["even_exact"] = std::move(ev);
  j["odd_exact"] = std::move(od);
  return j;
}

Mask mask_from_json(const json& j) {
  SchemeSpec spec = SchemeSpec::make(
      WeightKernel::parse(j.at("spec").at("kernel").get<std::string>()),
      j.at("spec").at("lambda").get<double>(),
      j.at("spec").at("degree").get<int>());
  Mask mask{spec, {}, 0, {}, 0, false};
  mask.even = j.at("even").get<std::vector<double>>();
  mask.odd = j.at("odd").get<std::vector<double>>();
  mask.even_first = j.at("first_index").at("even").get<int>();
  mask.odd_first = j.at("first_index").at("odd").get<int>();
  mask.dd_coincident = j.value("dd_coincident", false);
  return mask;
}

std::optional<RationalMask> rational_mask_from_json(const json& j) {
  if (!j.contains("even_exact")) return std::nullopt;
  RationalMask rm;
  rm.n = j.at("spec").at("n").get<int>();
  rm.situation = j.at("situation").get<std::string>() == "odd-longer"
                     ? SupportSituation::OddLonger
                     : SupportSituation::EvenLonger;
  rm.even_first = j.at("first_index").at("even").get<int>();
  rm.odd_first = j.at("first_index").at("odd").get<int>();
  for (const auto& pair : j.at("even_exact"))
    rm.even.push_back(Rat::from_strings(pair.at(0).get<std::string>(),
                                        pair.at(1).get<std::string>()));
  for (const auto& pair : j.at("odd_exact"))
    rm.odd.push_back(Rat::from_strings(pair.at(0).get<std::string>(),
                                       pair.at(1).get<std::string>()));
  return rm;
}

json mask_report(const Mask& mask) {
  json j;
  double se = 0, so = 0;
  for (double v : mask.even) se += v;
  for (double v : mask.odd) so += v;
  j["even_sum"] = se;
  j["odd_sum"] = so;
  j["symmetry_defect"] = symmetry_defect(mask);
  j["positive"] = positive_mask_verdict(mask);
  j["dd_coincident"] = mask.dd_coincident;
  j["kernel_strictly_decreasing"] = mask.spec.kernel.strictly_decreasing();
  try {
    DifferenceMask dm = difference_mask(mask);
    j["difference_norms"] = json{{"q0_l1", dm.q0_l1}, {"q1_l1", dm.q1_l1}};
  } catch (const Error&) {
    j["difference_norms"] = nullptr;
  }
  return j;
}

json convergence_report_to_json(const ConvergenceReport& rep,
                                bool include_norms) {
  json j;
  j["verdict"] = verdict_name(rep.verdict);
  j["kernel"] = rep.kernel;
  j["degree"] = rep.degree;
  j["situation"] = situation_name(rep.situation);
  j["delta"] = rep.delta;
  j["n_range"] = json::array({rep.n_min, rep.n_max});
  j["max_norm"] = rep.max_norm;
  j["max_norm_at_n"] = rep.argmax_n;
  if (!rep.max_norm_exact.empty()) j["max_norm_exact"] = rep.max_norm_exact;
  if (rep.r_l1) j["r_l1"] = *rep.r_l1;
  if (rep.n0) j["n0"] = *rep.n0;
  j["exact"] = rep.exact;
  j["slack"] = rep.slack;
  j["route"] = rep.route;
  if (include_norms) {
    json per_n = json::array();
    for (auto [n, norm] : rep.norms)
      per_n.push_back(json::array({n, norm}));
    j["norms"] = std::move(per_n);
  }
  return j;
}

std::string convergence_report_text(const ConvergenceReport& rep) {
  std::ostringstream os;
  os << "family: kernel=" << rep.kernel << " degree=" << rep.degree
     << " situation=" << situation_name(rep.situation) << "\n"
     << "verdict: " << verdict_name(rep.verdict) << "\n"
     << "route:   " << rep.route << "\n"
     << "n range: " << rep.n_min << ".." << rep.n_max << "\n"
     << std::setprecision(15) << "max norm: " << rep.max_norm << " at n="
     << rep.argmax_n;
  if (!rep.max_norm_exact.empty()) os << " (= " << rep.max_norm_exact << ")";
  os << "\n";
  if (rep.r_l1) os << "lim |R|_1: " << *rep.r_l1 << "\n";
  if (rep.n0) os << "n0: " << *rep.n0 << "\n";
  if (!rep.exact) os << "float slack: " << rep.slack << "\n";
  return os.str();
}

Series read_series_csv(std::istream& in) {
  Series out;
  out.dim = 0;
  std::string line;
  bool seen_data = false;
  bool drop_abscissa = false;  // our refined outputs lead with a t column
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string raw = line;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (numeric && ls >> tok) {
      try {
        size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (seen_data)
        fail(ErrorCode::IoFailure,
             "non-numeric CSV row at line " + std::to_string(lineno));
      drop_abscissa = raw.rfind("t,", 0) == 0;  // header "t,x[,y]"
      continue;
    }
    if (row.empty()) continue;
    if (drop_abscissa) row.erase(row.begin());
    if (row.empty() || row.size() > 2)
      fail(ErrorCode::IoFailure, "CSV rows must have 1 or 2 value columns");
    if (out.dim == 0)
      out.dim = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != out.dim)
      fail(ErrorCode::IoFailure,
           "inconsistent CSV column count at line " + std::to_string(lineno));
    for (double v : row) out.values.push_back(v);
    seen_data = true;
  }
  if (out.dim == 0) fail(ErrorCode::IoFailure, "no data rows in CSV input");
  return out;
}

Series read_series_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
  return read_series_csv(in);
}

void write_series_csv(std::ostream& out, const Series& series,
                      const std::vector<std::string>& meta) {
  for (const std::string& m : meta) out << "# " << m << "\n";
  const double step = std::ldexp(1.0, -series.level);
  out << std::setprecision(17);
  out << (series.dim == 1 ? "t,x\n" : "t,x,y\n");
  for (size_t j = 0; j < series.count(); ++j) {
    out << static_cast<double>(j) * step;
    for (int c = 0; c < series.dim; ++c) out << "," << series.at(j, c);
    out << "\n";
  }
}

void write_series_csv_file(const std::string& path, const Series& series,
                           const std::vector<std::string>& meta) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  write_series_csv(out, series, meta);
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path);
}

json series_to_json(const Series& series, const std::vector<std::string>& meta) {
  json j;
  j["dim"] = series.dim;
  j["level"] = series.level;
  j["step"] = std::ldexp(1.0, -series.level);
  if (!meta.empty()) j["meta"] = meta;
  json values = json::array();
  for (size_t i = 0; i < series.count(); ++i) {
    if (series.dim == 1)
      values.push_back(series.at(i, 0));
    else
      values.push_back(json::array({series.at(i, 0), series.at(i, 1)}));
  }
  j["values"] = std::move(values);
  return j;
}

Series series_from_json(const json& j) {
  Series s;
  try {
    s.dim = j.value("dim", 0);
    s.level = j.value("level", 0);
    const json& values = j.at("values");
    if (values.empty()) fail(ErrorCode::IoFailure, "empty values array");
    if (s.dim == 0) s.dim = values.front().is_array() ? 2 : 1;
    for (const json& v : values) {
      if (s.dim == 1) {
        s.values.push_back(v.get<double>());
      } else {
        if (!v.is_array() || v.size() != 2)
          fail(ErrorCode::IoFailure, "planar samples need [x, y] pairs");
        s.values.push_back(v.at(0).get<double>());
        s.values.push_back(v.at(1).get<double>());
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::IoFailure, std::string("bad series JSON: ") + e.what());
  }
  return s;
}

namespace {

bool has_json_extension(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

}  // namespace

Series read_series_file(const std::string& path) {
  if (!has_json_extension(path)) return read_series_csv_file(path);
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::IoFailure, std::string("bad JSON in ") + path + ": " +
                                   e.what());
  }
  return series_from_json(j);
}

void write_series_file(const std::string& path, const Series& series,
                       const std::vector<std::string>& meta) {
  if (!has_json_extension(path)) {
    write_series_csv_file(path, series, meta);
    return;
  }
  write_text_file(path, series_to_json(series, meta).dump(2));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path);
}

}  // namespace wlpr
