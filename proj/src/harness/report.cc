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

#include "binagg/harness/report.h"

#include <cmath>
#include <fstream>
#include <ostream>

#include "binagg/error.h"
#include "binagg/format.h"

namespace binagg::harness {
namespace {

using Json = nlohmann::ordered_json;

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector VectorFromJson(const Json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

bool Close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

std::string F(double v) { return FormatDouble(v); }

const char* ScalingName(CorrectionScaling s) {
  return s == CorrectionScaling::kAveraged ? "averaged" : "estimating_equation";
}

}  // namespace

Json PipelineToJson(const PipelineConfig& c) {
  Json out;
  out["total_mu"] = c.total_mu;
  out["ratios"] = {c.ratios.bin, c.ratios.count, c.ratios.sum_x, c.ratios.sum_y};
  const BudgetAllocation a = Allocate(GdpBudget(c.total_mu), c.ratios);
  out["mu_bin"] = a.bin.mu();
  out["mu_c"] = a.count.mu();
  out["mu_s"] = a.sum_x.mu();
  out["mu_t"] = a.sum_y.mu();
  out["composed_mu"] = a.Total().mu();
  out["theta"] = c.theta;
  out["max_depth"] = c.max_depth;
  out["min_count"] = c.min_count;
  out["strict_l2_mode"] = c.strict_l2;
  out["correction"] = ScalingName(c.scaling);
  out["intercept"] = c.intercept;
  out["alpha"] = c.alpha;
  out["zero_noise"] = c.zero_noise;
  return out;
}

Json ConfigToJson(const SimulationConfig& c) {
  Json out;
  out["n"] = c.n;
  out["d"] = c.d;
  out["sigma"] = c.sigma;
  out["label_upper"] = c.label_upper.value_or(0.0) > 0
                           ? Json(*c.label_upper)
                           : Json(nullptr);
  out["bound_scale"] = c.bound_scale;
  out["repetitions"] = c.repetitions;
  out["seed"] = c.base_seed;
  out["pipeline"] = PipelineToJson(c.pipeline);
  return out;
}

// ---- Coverage --------------------------------------------------------------

Json CoverageToJson(const CoverageReport& report, bool include_timing) {
  Json out;
  out["kind"] = "coverage";
  out["config"] = ConfigToJson(report.config);
  out["z"] = report.z;
  out["failures"] = report.failures;
  out["failure_rate"] =
      report.reps.empty()
          ? 0.0
          : static_cast<double>(report.failures) / report.reps.size();
  out["debiased_sd_exceeds_naive_in_every_rep"] = report.debiased_exceeds_naive;
  Json summary = Json::array();
  for (std::size_t j = 0; j < report.summary.size(); ++j) {
    const CoordinateSummary& s = report.summary[j];
    summary.push_back({{"coefficient", j + 1},
                       {"avg_bias", s.avg_bias},
                       {"empirical_sd", s.empirical_sd},
                       {"avg_theoretical_sd", s.avg_theoretical_sd},
                       {"naive_theoretical_sd", s.naive_theoretical_sd},
                       {"coverage", s.coverage},
                       {"naive_coverage", s.naive_coverage}});
  }
  out["summary"] = std::move(summary);
  Json reps = Json::array();
  for (const CoverageRep& r : report.reps) {
    Json row;
    row["rep"] = r.rep;
    row["ok"] = r.ok;
    if (!r.ok) row["error"] = r.error;
    row["bins"] = r.bins;
    row["truth"] = VectorToJson(r.truth);
    if (r.ok) {
      row["beta"] = VectorToJson(r.beta);
      row["se"] = VectorToJson(r.se);
      row["naive_se"] = VectorToJson(r.naive_se);
      row["rel_error"] = r.rel_error;
    }
    if (include_timing) row["wall_ms"] = r.wall_ms;
    reps.push_back(std::move(row));
  }
  out["reps"] = std::move(reps);
  return out;
}

void WriteCoverageCsv(const CoverageReport& report, std::ostream& out) {
  out << "coefficient,avg_bias,empirical_sd,avg_theoretical_sd,"
         "naive_theoretical_sd,coverage,naive_coverage\n";
  for (std::size_t j = 0; j < report.summary.size(); ++j) {
    const CoordinateSummary& s = report.summary[j];
    out << (j + 1) << ',' << F(s.avg_bias) << ',' << F(s.empirical_sd) << ','
        << F(s.avg_theoretical_sd) << ',' << F(s.naive_theoretical_sd) << ','
        << F(s.coverage) << ',' << F(s.naive_coverage) << '\n';
  }
}

void WriteCoverageRepsCsv(const CoverageReport& report, std::ostream& out,
                          bool include_timing) {
  const std::size_t d = report.summary.size();
  out << "rep,ok,bins,rel_error";
  for (const char* field : {"truth", "beta", "se", "naive_se"}) {
    for (std::size_t j = 0; j < d; ++j) out << ',' << field << '_' << (j + 1);
  }
  if (include_timing) out << ",wall_ms";
  out << '\n';
  for (const CoverageRep& r : report.reps) {
    out << r.rep << ',' << (r.ok ? 1 : 0) << ',' << r.bins << ','
        << (r.ok ? F(r.rel_error) : "");
    for (const Vector* v : {&r.truth, &r.beta, &r.se, &r.naive_se}) {
      for (std::size_t j = 0; j < d; ++j) {
        out << ',';
        if (static_cast<std::size_t>(v->size()) == d) {
          out << F((*v)(static_cast<Eigen::Index>(j)));
        }
      }
    }
    if (include_timing) out << ',' << F(r.wall_ms);
    out << '\n';
  }
}

bool CoverageJsonIsConsistent(const Json& report, double tolerance) {
  const double z = report.at("z").get<double>();
  const auto& summary = report.at("summary");
  std::vector<CoverageRep> reps;
  for (const auto& row : report.at("reps")) {
    CoverageRep r;
    r.ok = row.at("ok").get<bool>();
    r.truth = VectorFromJson(row.at("truth"));
    if (r.ok) {
      r.beta = VectorFromJson(row.at("beta"));
      r.se = VectorFromJson(row.at("se"));
      r.naive_se = VectorFromJson(row.at("naive_se"));
    }
    reps.push_back(std::move(r));
  }
  const auto recomputed = SummarizeCoverage(reps, summary.size(), z);
  std::size_t failures = 0;
  for (const auto& r : reps) failures += r.ok ? 0 : 1;
  if (failures != report.at("failures").get<std::size_t>()) return false;
  for (std::size_t j = 0; j < summary.size(); ++j) {
    const auto& s = summary[j];
    const CoordinateSummary& c = recomputed[j];
    if (!Close(s.at("avg_bias").get<double>(), c.avg_bias, tolerance) ||
        !Close(s.at("empirical_sd").get<double>(), c.empirical_sd, tolerance) ||
        !Close(s.at("avg_theoretical_sd").get<double>(), c.avg_theoretical_sd,
               tolerance) ||
        !Close(s.at("naive_theoretical_sd").get<double>(),
               c.naive_theoretical_sd, tolerance) ||
        !Close(s.at("coverage").get<double>(), c.coverage, tolerance) ||
        !Close(s.at("naive_coverage").get<double>(), c.naive_coverage,
               tolerance)) {
      return false;
    }
  }
  return true;
}

// ---- Error curve -----------------------------------------------------------

Json ErrorCurveToJson(const ErrorCurveReport& report, bool include_timing) {
  Json out;
  out["kind"] = "error_curve";
  out["config"] = ConfigToJson(report.config);
  out["n_grid"] = report.n_grid;
  Json points = Json::array();
  for (const ErrorCurvePoint& p : report.points) {
    points.push_back({{"n", p.n},
                      {"mean_binagg_error", p.mean_binagg_error},
                      {"sd_binagg_error", p.sd_binagg_error},
                      {"mean_ols_error", p.mean_ols_error},
                      {"median_bins", p.median_bins},
                      {"failures", p.failures}});
  }
  out["points"] = std::move(points);
  Json rows = Json::array();
  for (const ErrorCurveRow& r : report.rows) {
    Json row{{"n", r.n}, {"rep", r.rep}, {"ok", r.ok}, {"bins", r.bins}};
    if (r.ok) {
      row["binagg_error"] = r.binagg_error;
      row["ols_error"] = r.ols_error;
    } else {
      row["error"] = r.error;
    }
    if (include_timing) row["wall_ms"] = r.wall_ms;
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

void WriteErrorCurveCsv(const ErrorCurveReport& report, std::ostream& out) {
  out << "n,mean_binagg_error,sd_binagg_error,mean_ols_error,median_bins,"
         "failures\n";
  for (const ErrorCurvePoint& p : report.points) {
    out << p.n << ',' << F(p.mean_binagg_error) << ',' << F(p.sd_binagg_error)
        << ',' << F(p.mean_ols_error) << ',' << F(p.median_bins) << ','
        << p.failures << '\n';
  }
}

bool ErrorCurveJsonIsConsistent(const Json& report, double tolerance) {
  std::vector<ErrorCurveRow> rows;
  for (const auto& j : report.at("rows")) {
    ErrorCurveRow r;
    r.n = j.at("n").get<std::size_t>();
    r.ok = j.at("ok").get<bool>();
    r.bins = j.at("bins").get<std::size_t>();
    if (r.ok) {
      r.binagg_error = j.at("binagg_error").get<double>();
      r.ols_error = j.at("ols_error").get<double>();
    }
    rows.push_back(r);
  }
  const auto grid = report.at("n_grid").get<std::vector<std::size_t>>();
  const auto points = SummarizeErrorCurve(rows, grid);
  const auto& stored = report.at("points");
  if (stored.size() != points.size()) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& s = stored[i];
    if (s.at("n").get<std::size_t>() != points[i].n ||
        s.at("failures").get<std::size_t>() != points[i].failures ||
        !Close(s.at("mean_binagg_error").get<double>(),
               points[i].mean_binagg_error, tolerance) ||
        !Close(s.at("sd_binagg_error").get<double>(),
               points[i].sd_binagg_error, tolerance) ||
        !Close(s.at("mean_ols_error").get<double>(), points[i].mean_ols_error,
               tolerance) ||
        !Close(s.at("median_bins").get<double>(), points[i].median_bins,
               tolerance)) {
      return false;
    }
  }
  return true;
}

// ---- Equivalence -----------------------------------------------------------

Json EquivalenceToJson(const EquivalenceReport& report) {
  Json out;
  out["kind"] = "equivalence";
  out["bins"] = report.bins;
  out["dims"] = report.dims;
  out["repetitions"] = report.repetitions;
  out["all_pass"] = report.AllPass();
  Json checks = Json::array();
  for (const EquivalenceCheck& c : report.checks) {
    checks.push_back({{"bin", c.bin},
                      {"coordinate", c.coordinate == report.dims
                                         ? Json("y")
                                         : Json(c.coordinate + 1)},
                      {"expected_mean", c.expected_mean},
                      {"synthetic_mean", c.synthetic_mean},
                      {"direct_mean", c.direct_mean},
                      {"mean_se", c.mean_se},
                      {"expected_var", c.expected_var},
                      {"synthetic_var", c.synthetic_var},
                      {"direct_var", c.direct_var},
                      {"ks", c.ks},
                      {"ks_critical", c.ks_critical},
                      {"mean_ok", c.mean_ok},
                      {"var_ok", c.var_ok},
                      {"ks_ok", c.ks_ok}});
  }
  out["checks"] = std::move(checks);
  return out;
}

void WriteEquivalenceCsv(const EquivalenceReport& report, std::ostream& out) {
  out << "bin,coordinate,expected_mean,synthetic_mean,direct_mean,mean_se,"
         "expected_var,synthetic_var,direct_var,ks,ks_critical,mean_ok,var_ok,"
         "ks_ok\n";
  for (const EquivalenceCheck& c : report.checks) {
    out << c.bin << ','
        << (c.coordinate == report.dims ? std::string("y")
                                        : std::to_string(c.coordinate + 1))
        << ',' << F(c.expected_mean) << ',' << F(c.synthetic_mean) << ','
        << F(c.direct_mean) << ',' << F(c.mean_se) << ',' << F(c.expected_var)
        << ',' << F(c.synthetic_var) << ',' << F(c.direct_var) << ','
        << F(c.ks) << ',' << F(c.ks_critical) << ',' << c.mean_ok << ','
        << c.var_ok << ',' << c.ks_ok << '\n';
  }
}

// ---- Single fit ------------------------------------------------------------

Json FitToJson(const RegressionRun& run, const PipelineConfig& config,
               uint64_t seed, const std::vector<std::string>& names) {
  Json out;
  out["kind"] = "fit";
  out["seed"] = seed;
  out["bins"] = run.fit.bins;
  out["leaves"] = run.prep.leaves.size();
  out["budget"] = PipelineToJson(config);
  const Vector se = run.fit.StandardErrors();
  Json coefs = Json::array();
  for (std::size_t j = 0; j < run.fit.dims; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    coefs.push_back({{"name", j < names.size() ? names[j] : "intercept"},
                     {"estimate", run.fit.beta(jj)},
                     {"se", se(jj)},
                     {"ci_lo", run.fit.intervals[j].lo},
                     {"ci_hi", run.fit.intervals[j].hi},
                     {"naive_estimate", run.naive_beta(jj)}});
  }
  out["coefficients"] = std::move(coefs);
  return out;
}

void WriteFitCsv(const RegressionRun& run,
                 const std::vector<std::string>& names, std::ostream& out) {
  out << "name,estimate,se,ci_lo,ci_hi,naive_estimate\n";
  const Vector se = run.fit.StandardErrors();
  for (std::size_t j = 0; j < run.fit.dims; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out << (j < names.size() ? names[j] : "intercept") << ','
        << F(run.fit.beta(jj)) << ',' << F(se(jj)) << ','
        << F(run.fit.intervals[j].lo) << ',' << F(run.fit.intervals[j].hi)
        << ',' << F(run.naive_beta(jj)) << '\n';
  }
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) Fail(ErrorCode::kInvalidArgument, "failed writing '" + path + "'");
}

}  // namespace binagg::harness
