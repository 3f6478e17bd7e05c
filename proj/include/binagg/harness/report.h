//
// Copyright 2026 The BinAgg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Report serialization. Output is a pure function of the report contents:
// doubles are printed in shortest round-trip form and wall times are only
// included on request, so equal runs give byte-identical files.

#ifndef BINAGG_HARNESS_REPORT_H_
#define BINAGG_HARNESS_REPORT_H_

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "binagg/harness/experiments.h"
#include "binagg/harness/pipeline.h"

namespace binagg::harness {

nlohmann::ordered_json ConfigToJson(const SimulationConfig& config);
nlohmann::ordered_json PipelineToJson(const PipelineConfig& config);

nlohmann::ordered_json CoverageToJson(const CoverageReport& report,
                                      bool include_timing = false);
// Table layout: one row per coefficient with the six summary columns.
void WriteCoverageCsv(const CoverageReport& report, std::ostream& out);
void WriteCoverageRepsCsv(const CoverageReport& report, std::ostream& out,
                          bool include_timing = false);
// Recomputes the summary rows of a coverage JSON report from its
// per-repetition records; returns false if any stored value disagrees.
bool CoverageJsonIsConsistent(const nlohmann::ordered_json& report,
                              double tolerance = 1e-12);

nlohmann::ordered_json ErrorCurveToJson(const ErrorCurveReport& report,
                                        bool include_timing = false);
void WriteErrorCurveCsv(const ErrorCurveReport& report, std::ostream& out);
bool ErrorCurveJsonIsConsistent(const nlohmann::ordered_json& report,
                                double tolerance = 1e-12);

nlohmann::ordered_json EquivalenceToJson(const EquivalenceReport& report);
void WriteEquivalenceCsv(const EquivalenceReport& report, std::ostream& out);

// Summary of a single private fit.
nlohmann::ordered_json FitToJson(const RegressionRun& run,
                                 const PipelineConfig& config, uint64_t seed,
                                 const std::vector<std::string>& names);
void WriteFitCsv(const RegressionRun& run,
                 const std::vector<std::string>& names, std::ostream& out);

// Writes `text` to `path`, throwing on I/O failure.
void WriteFile(const std::string& path, const std::string& text);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_REPORT_H_
