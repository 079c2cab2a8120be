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

#ifndef WLPR_SERIALIZE_HPP
#define WLPR_SERIALIZE_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "convergence.hpp"
#include "engine.hpp"
#include "masks.hpp"

namespace wlpr {

using json = nlohmann::json;

// Mask export: {spec, situation, even, odd, first_index}; the rational path
// adds even_exact/odd_exact as num/den string pairs, which round-trip
// bit-exactly.
json mask_to_json(const Mask& mask);
json mask_to_json(const RationalMask& mask, const SchemeSpec& spec);
Mask mask_from_json(const json& j);
std::optional<RationalMask> rational_mask_from_json(const json& j);

/// Sums, symmetry defect, positivity, difference norms, DD flag.
json mask_report(const Mask& mask);

json convergence_report_to_json(const ConvergenceReport& rep,
                                bool include_norms = false);
std::string convergence_report_text(const ConvergenceReport& rep);

const char* situation_name(SupportSituation s);
const char* boundary_name(Boundary b);
Boundary parse_boundary(const std::string& name);

// CSV data files: optional header row, columns x[,y]; '#' lines are
// metadata/comments.
Series read_series_csv(std::istream& in);
Series read_series_csv_file(const std::string& path);
void write_series_csv(std::ostream& out, const Series& series,
                      const std::vector<std::string>& meta);
void write_series_csv_file(const std::string& path, const Series& series,
                           const std::vector<std::string>& meta);

// JSON data files: {dim, level, step, values: [x,...] | [[x,y],...]}.
json series_to_json(const Series& series,
                    const std::vector<std::string>& meta = {});
Series series_from_json(const json& j);

/// Reads/writes by extension: ".json" or CSV otherwise.
Series read_series_file(const std::string& path);
void write_series_file(const std::string& path, const Series& series,
                       const std::vector<std::string>& meta);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wlpr

#endif  // WLPR_SERIALIZE_HPP
