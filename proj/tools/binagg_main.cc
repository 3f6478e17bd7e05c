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

// Command-line front end.
//
//   binagg fit --data FILE --label COL --bounds 0:1,0:1 --label-bounds 0:5
//   binagg synth --data FILE --label COL ... --out synthetic.csv
//   binagg simulate --report coverage|error-curve [--sweep key=v1,v2]
//   binagg coverage
//   binagg equivalence
//   binagg convert-budget --mu 1 --epsilon 1
//
// Settings are resolved in order: built-in defaults, BINAGG_SEED, --config
// file, command-line flags. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binagg/aggregation.h"
#include "binagg/error.h"
#include "binagg/format.h"
#include "binagg/gdp.h"
#include "binagg/harness/config.h"
#include "binagg/harness/dataset.h"
#include "binagg/harness/experiments.h"
#include "binagg/harness/pipeline.h"
#include "binagg/harness/report.h"
#include "binagg/random.h"
#include "binagg/synthesis.h"

namespace {

using binagg::Error;
using binagg::ErrorCode;
using binagg::FormatDouble;
using binagg::GdpBudget;
using binagg::Require;
namespace h = binagg::harness;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Flags shared by every experiment-style subcommand.
struct CommonFlags {
  std::string config_path;
  Overrides overrides;
  bool no_noise = false;
  bool timing = false;
};

void AddSettingFlag(CLI::App* app, CommonFlags& flags, const std::string& name,
                    const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name,
      [&flags, key](const std::string& v) { flags.overrides.emplace_back(key, v); },
      help);
}

void AddCommonFlags(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_path, "Key-value config file")
      ->check(CLI::ExistingFile);
  AddSettingFlag(app, flags, "--seed", "seed", "Base seed (default: $BINAGG_SEED)");
  AddSettingFlag(app, flags, "--mu,--total-mu", "total_mu", "Total GDP budget mu");
  AddSettingFlag(app, flags, "--ratios", "ratios",
                 "Budget ratios bin:count:sum_x:sum_y");
  AddSettingFlag(app, flags, "--theta", "theta", "PrivTree split threshold");
  AddSettingFlag(app, flags, "--max-depth", "max_depth", "PrivTree depth cap");
  AddSettingFlag(app, flags, "--min-count", "min_count",
                 "Discard bins whose noisy count is below this");
  AddSettingFlag(app, flags, "--bounds", "bounds",
                 "Feature bounds lo:hi,lo:hi,... in column order");
  AddSettingFlag(app, flags, "--label-bounds", "label_bounds",
                 "Label bounds lo:hi");
  AddSettingFlag(app, flags, "--reps", "reps", "Repetitions");
  AddSettingFlag(app, flags, "--alpha", "alpha", "CI level is 1 - alpha");
  AddSettingFlag(app, flags, "--strict-l2-mode", "strict_l2_mode",
                 "Use the l2 norm of the sensitivity vector for every coordinate");
  AddSettingFlag(app, flags, "--algorithm2-literal-debias",
                 "algorithm2_literal_debias",
                 "Average the debiasing correction over bins");
  AddSettingFlag(app, flags, "--intercept", "intercept", "Fit an intercept");
  AddSettingFlag(app, flags, "--n", "n", "Simulated sample size");
  AddSettingFlag(app, flags, "--d", "d", "Simulated dimension");
  AddSettingFlag(app, flags, "--sigma", "sigma", "Simulated noise SD");
  AddSettingFlag(app, flags, "--workers", "workers",
                 "Worker threads (0: hardware concurrency)");
  app->add_flag("--timing", flags.timing, "Record wall times in reports");
}

// Resolves settings on top of per-command defaults.
h::RunSettings Resolve(const CommonFlags& flags, h::RunSettings settings) {
  if (const char* env = std::getenv("BINAGG_SEED"); env != nullptr && *env) {
    settings.seed = h::ParseUnsigned(env);
  }
  if (!flags.config_path.empty()) {
    h::ApplySettings(h::LoadKeyValues(flags.config_path), settings);
  }
  for (const auto& [key, value] : flags.overrides) {
    h::ApplySetting(key, value, settings);
  }
  settings.pipeline.zero_noise = flags.no_noise;
  if (flags.no_noise) {
    std::cerr << "warning: --no-noise releases exact statistics; output is "
                 "NOT differentially private\n";
  }
  return settings;
}

void Emit(const std::string& path, const std::string& text) {
  if (!path.empty()) h::WriteFile(path, text);
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

void PrintBudget(const h::PipelineConfig& config, std::size_t n,
                 std::ostream& out) {
  const binagg::BudgetAllocation a =
      binagg::Allocate(GdpBudget(config.total_mu), config.ratios);
  out << "budget: mu_bin=" << FormatDouble(a.bin.mu())
      << " mu_c=" << FormatDouble(a.count.mu())
      << " mu_s=" << FormatDouble(a.sum_x.mu())
      << " mu_t=" << FormatDouble(a.sum_y.mu())
      << " composed mu=" << FormatDouble(a.Total().mu()) << "\n";
  if (n >= 2) {
    const double delta = std::pow(static_cast<double>(n), -1.1);
    const binagg::ApproxDpParams p =
        binagg::GdpToApproxDpAtDelta(a.Total(), delta);
    out << "equivalent (epsilon, delta) = (" << FormatDouble(p.epsilon) << ", "
        << FormatDouble(p.delta) << ") with delta = 1/n^1.1\n";
  }
}

// ---- fit / synth -----------------------------------------------------------

struct DataFlags {
  std::string path;
  std::string label;
  std::string policy = "clip";
};

void AddDataFlags(CLI::App* app, DataFlags& flags) {
  app->add_option("--data", flags.path, "CSV file with a header row")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--label", flags.label, "Label column name")->required();
  app->add_option("--policy", flags.policy, "Out-of-bounds rows: clip|reject")
      ->check(CLI::IsMember({"clip", "reject"}));
}

h::LoadedDataset Load(const DataFlags& flags, const h::RunSettings& s,
                      h::DatasetSpec& spec) {
  Require(!s.bounds.empty(), "--bounds (or 'bounds' in the config) is required");
  Require(s.label_bounds.has_value(),
          "--label-bounds (or 'label_bounds' in the config) is required");
  spec.path = flags.path;
  spec.label_column = flags.label;
  spec.feature_bounds = s.bounds;
  spec.label_bounds = *s.label_bounds;
  spec.policy = flags.policy == "reject" ? h::ClipPolicy::kReject
                                         : h::ClipPolicy::kClip;
  h::LoadedDataset data = h::LoadDataset(spec);
  std::cerr << "loaded " << data.x.rows() << " rows, " << data.x.cols()
            << " features";
  if (data.clipped_rows) std::cerr << ", clipped " << data.clipped_rows;
  if (data.rejected_rows) std::cerr << ", rejected " << data.rejected_rows;
  std::cerr << "\n";
  return data;
}

int RunFit(const CommonFlags& common, const DataFlags& data_flags,
           const std::string& out_json, const std::string& out_csv) {
  const h::RunSettings s = Resolve(common, h::RunSettings{});
  h::DatasetSpec spec;
  const h::LoadedDataset data = Load(data_flags, s, spec);
  const auto start = std::chrono::steady_clock::now();
  binagg::RandomSource rng(s.seed, 0);
  const h::RegressionRun run = h::RunRegression(
      data.x, data.y, h::FeatureDomain(spec),
      binagg::LabelBound(spec.label_bounds.first, spec.label_bounds.second),
      s.pipeline, rng);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  PrintBudget(s.pipeline, static_cast<std::size_t>(data.x.rows()), std::cout);
  std::cout << "bins: " << run.fit.bins << " (of " << run.prep.leaves.size()
            << " leaves)\n";
  std::ostringstream csv;
  h::WriteFitCsv(run, data.feature_names, csv);
  std::cout << csv.str();
  if (common.timing) std::cerr << "wall time: " << ms << " ms\n";

  Json j = h::FitToJson(run, s.pipeline, s.seed, data.feature_names);
  j["n"] = data.x.rows();
  if (common.timing) j["wall_ms"] = ms;
  Emit(out_json, Dump(j));
  Emit(out_csv, csv.str());
  return kExitOk;
}

struct SynthFlags {
  std::string out;
  bool no_bin = false;
  bool shuffle = false;
  bool clamp = false;
};

int RunSynth(const CommonFlags& common, const DataFlags& data_flags,
             const SynthFlags& flags) {
  const h::RunSettings s = Resolve(common, h::RunSettings{});
  h::DatasetSpec spec;
  const h::LoadedDataset data = Load(data_flags, s, spec);
  binagg::SynthesisOptions options;
  options.zero_noise = s.pipeline.zero_noise;
  options.strict_l2 = s.pipeline.strict_l2;
  options.shuffle = flags.shuffle;
  options.clamp_to_bin = flags.clamp;
  if (flags.clamp) {
    std::cerr << "warning: --clamp-to-bin changes the output distribution\n";
  }
  binagg::RandomSource rng(s.seed, 0);
  const h::SynthesisRun run = h::RunSynthesis(
      data.x, data.y, h::FeatureDomain(spec),
      binagg::LabelBound(spec.label_bounds.first, spec.label_bounds.second),
      s.pipeline, options, rng);
  std::ostringstream csv;
  binagg::WriteSyntheticCsv(run.dataset, csv, !flags.no_bin);
  h::WriteFile(flags.out, csv.str());
  PrintBudget(s.pipeline, static_cast<std::size_t>(data.x.rows()), std::cout);
  std::cout << "wrote " << run.dataset.records.size() << " records from "
            << run.dataset.bins << " bins to " << flags.out << "\n";
  return kExitOk;
}

// ---- simulate / coverage ---------------------------------------------------

struct SimFlags {
  std::string report = "coverage";
  std::vector<std::size_t> n_grid = {512, 2048, 8192};
  double bound_scale = 1.0;
  std::string sweep;
  std::string out_json;
  std::string out_csv;
  std::string reps_csv;
};

h::SimulationConfig ToSimulation(const h::RunSettings& s, const SimFlags& f,
                                 bool timing) {
  Require(s.bounds.empty(),
          "simulations use the unit cube; scale it with --bound-scale");
  Require(s.n > s.d, "simulations need n > d");
  h::SimulationConfig c;
  c.n = s.n;
  c.d = s.d;
  c.sigma = s.sigma;
  c.pipeline = s.pipeline;
  if (s.label_bounds) {
    Require(s.label_bounds->first == 0.0,
            "simulated label bounds must have the form 0:B");
    c.label_upper = s.label_bounds->second;
  }
  c.bound_scale = f.bound_scale;
  c.repetitions = s.reps;
  c.base_seed = s.seed;
  c.workers = s.workers;
  c.record_timing = timing;
  return c;
}

struct SimOutput {
  Json json;
  std::string csv;
  std::string reps_csv;
  std::string note;
};

SimOutput SimulateOnce(const h::SimulationConfig& c, const SimFlags& f,
                       bool timing) {
  SimOutput out;
  std::ostringstream csv, reps;
  std::size_t failures = 0, total = 0;
  if (f.report == "coverage") {
    const h::CoverageReport r = h::CoverageExperiment(c);
    out.json = h::CoverageToJson(r, timing);
    h::WriteCoverageCsv(r, csv);
    h::WriteCoverageRepsCsv(r, reps, timing);
    failures = r.failures;
    total = r.reps.size();
    out.note = std::string("debiased SE > naive SE in every repetition: ") +
               (r.debiased_exceeds_naive ? "yes" : "no") + "\n";
  } else {
    const h::ErrorCurveReport r = h::ErrorCurveExperiment(c, f.n_grid);
    out.json = h::ErrorCurveToJson(r, timing);
    h::WriteErrorCurveCsv(r, csv);
    for (const auto& p : r.points) failures += p.failures;
    total = r.rows.size();
  }
  out.csv = csv.str();
  out.reps_csv = reps.str();
  std::ostringstream note;
  note << "failed repetitions: " << failures << " of " << total << " ("
       << FormatDouble(total ? static_cast<double>(failures) / total : 0.0)
       << "), excluded from aggregates\n";
  out.note += note.str();
  return out;
}

// Prefixes every CSV line with a column; the header gets `key`.
std::string PrefixColumn(const std::string& csv, const std::string& key,
                         const std::string& value, bool keep_header) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      if (keep_header) out << key << ',' << line << '\n';
      continue;
    }
    out << value << ',' << line << '\n';
  }
  return out.str();
}

int RunSimulate(const CommonFlags& common, const SimFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.sweep.empty()) {
    const h::RunSettings s = Resolve(common, h::RunSettings{});
    const h::SimulationConfig c = ToSimulation(s, f, common.timing);
    const SimOutput out = SimulateOnce(c, f, common.timing);
    std::cout << out.csv << out.note;
    Emit(f.out_json, Dump(out.json));
    Emit(f.out_csv, out.csv);
    Emit(f.reps_csv, out.reps_csv);
  } else {
    const h::Sweep sweep = h::ParseSweep(f.sweep);
    Json runs = Json::array();
    std::string csv, reps_csv;
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
      CommonFlags flags = common;
      flags.overrides.emplace_back(sweep.key, sweep.values[i]);
      const h::RunSettings s = Resolve(flags, h::RunSettings{});
      const h::SimulationConfig c = ToSimulation(s, f, common.timing);
      const SimOutput out = SimulateOnce(c, f, common.timing);
      runs.push_back({{"value", sweep.values[i]}, {"report", out.json}});
      csv += PrefixColumn(out.csv, sweep.key, sweep.values[i], i == 0);
      reps_csv += PrefixColumn(out.reps_csv, sweep.key, sweep.values[i], i == 0);
      std::cout << sweep.key << "=" << sweep.values[i] << ": " << out.note;
    }
    std::cout << csv;
    Emit(f.out_json, Dump(Json{{"sweep", sweep.key}, {"runs", runs}}));
    Emit(f.out_csv, csv);
    Emit(f.reps_csv, reps_csv);
  }
  if (common.timing) {
    std::cerr << "wall time: "
              << std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count()
              << " s\n";
  }
  return kExitOk;
}

// ---- equivalence -----------------------------------------------------------

int RunEquivalence(const CommonFlags& common, const std::string& out_json,
                   const std::string& out_csv) {
  h::RunSettings defaults;
  const h::EquivalenceConfig preset;
  defaults.n = preset.n;
  defaults.d = preset.d;
  defaults.reps = preset.repetitions;
  const h::RunSettings s = Resolve(common, defaults);
  Require(s.bounds.empty(), "the equivalence study simulates its own data");
  h::EquivalenceConfig c;
  c.n = s.n;
  c.d = s.d;
  c.sigma = s.sigma;
  c.pipeline = s.pipeline;
  if (s.label_bounds) {
    Require(s.label_bounds->first == 0.0,
            "simulated label bounds must have the form 0:B");
    c.label_upper = s.label_bounds->second;
  }
  c.repetitions = s.reps;
  c.base_seed = s.seed;
  c.workers = s.workers;
  const h::EquivalenceReport r = h::EquivalenceExperiment(c);
  std::ostringstream csv;
  h::WriteEquivalenceCsv(r, csv);
  std::size_t failed = 0;
  for (const auto& check : r.checks) failed += !check.ok();
  std::cout << csv.str() << "bins: " << r.bins << ", checks: " << r.checks.size()
            << ", failed: " << failed << "\n";
  Emit(out_json, Dump(h::EquivalenceToJson(r)));
  Emit(out_csv, csv.str());
  return kExitOk;
}

// ---- convert-budget --------------------------------------------------------

struct ConvertFlags {
  std::optional<double> mu;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> pure_epsilon;
  std::optional<std::size_t> n;
};

int RunConvert(const ConvertFlags& f) {
  if (f.pure_epsilon) {
    const GdpBudget mu = binagg::PureDpToGdp(*f.pure_epsilon);
    std::cout << "mu = " << FormatDouble(mu.mu()) << "\n";
    return kExitOk;
  }
  Require(f.mu.has_value(), "--mu is required unless --pure-epsilon is given");
  const GdpBudget mu(*f.mu);
  if (f.epsilon) {
    const binagg::ApproxDpParams p = binagg::GdpToApproxDp(mu, *f.epsilon);
    std::cout << "epsilon = " << FormatDouble(p.epsilon)
              << "\ndelta = " << FormatDouble(p.delta) << "\n";
    return kExitOk;
  }
  std::optional<double> delta = f.delta;
  if (!delta && f.n) delta = std::pow(static_cast<double>(*f.n), -1.1);
  if (delta) {
    const binagg::ApproxDpParams p = binagg::GdpToApproxDpAtDelta(mu, *delta);
    std::cout << "epsilon = " << FormatDouble(p.epsilon)
              << "\ndelta = " << FormatDouble(p.delta) << "\n";
    return kExitOk;
  }
  std::cout << "pure-DP epsilon bound = " << FormatDouble(binagg::GdpToPureDp(mu))
            << "\n";
  return kExitOk;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kLoadError:
    case ErrorCode::kEmptyResult:
      return kExitData;
    case ErrorCode::kSingularSystem:
    case ErrorCode::kInsufficientBins:
      return kExitNumerical;
  }
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private linear regression and synthetic data "
               "via binning and aggregation"};
  app.require_subcommand(1);

  CommonFlags fit_common, synth_common, sim_common, cov_common, eq_common;
  DataFlags fit_data, synth_data;
  std::string fit_json, fit_csv, eq_json, eq_csv;
  SynthFlags synth_flags;
  SimFlags sim_flags, cov_flags;
  ConvertFlags convert;

  CLI::App* fit = app.add_subcommand("fit", "Private regression on a CSV file");
  AddCommonFlags(fit, fit_common);
  AddDataFlags(fit, fit_data);
  fit->add_flag("--no-noise", fit_common.no_noise,
                "Debug: release exact counts and sums (not private)");
  fit->add_option("--out-json", fit_json, "Write the fit summary as JSON");
  fit->add_option("--out-csv", fit_csv, "Write the coefficient table as CSV");

  CLI::App* synth =
      app.add_subcommand("synth", "Private synthetic data from a CSV file");
  AddCommonFlags(synth, synth_common);
  AddDataFlags(synth, synth_data);
  synth->add_flag("--no-noise", synth_common.no_noise,
                  "Debug: records equal the exact bin means (not private)");
  synth->add_option("--out", synth_flags.out, "Output CSV")->required();
  synth->add_flag("--no-bin", synth_flags.no_bin, "Omit the bin column");
  synth->add_flag("--shuffle", synth_flags.shuffle, "Seeded shuffle of rows");
  synth->add_flag("--clamp-to-bin", synth_flags.clamp,
                  "Clamp features into their bin (breaks equivalence)");

  auto add_sim = [](CLI::App* cmd, CommonFlags& common, SimFlags& f) {
    AddCommonFlags(cmd, common);
    cmd->add_flag("--no-noise", common.no_noise,
                  "Debug: release exact counts and sums (not private)");
    cmd->add_option("--n-grid", f.n_grid, "Sample sizes for the error curve")
        ->delimiter(',');
    cmd->add_option("--bound-scale", f.bound_scale,
                    "Multiply feature and label bounds (loose-bounds study)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sweep", f.sweep, "Repeat for key=v1,v2,...");
    cmd->add_option("--out-json", f.out_json, "Write the report as JSON");
    cmd->add_option("--out-csv", f.out_csv, "Write the summary table as CSV");
    cmd->add_option("--reps-csv", f.reps_csv,
                    "Write per-repetition rows as CSV (coverage)");
  };
  CLI::App* sim = app.add_subcommand("simulate", "Simulation studies");
  add_sim(sim, sim_common, sim_flags);
  sim->add_option("--report", sim_flags.report, "coverage|error-curve")
      ->check(CLI::IsMember({"coverage", "error-curve"}));
  CLI::App* cov =
      app.add_subcommand("coverage", "Confidence-interval coverage study");
  add_sim(cov, cov_common, cov_flags);

  CLI::App* eq = app.add_subcommand(
      "equivalence", "Synthetic-versus-direct distribution check");
  AddCommonFlags(eq, eq_common);
  eq->add_option("--out-json", eq_json, "Write the report as JSON");
  eq->add_option("--out-csv", eq_csv, "Write the checks as CSV");

  CLI::App* conv = app.add_subcommand(
      "convert-budget", "Convert between mu-GDP, (eps, delta) and pure eps");
  conv->add_option("--mu", convert.mu, "GDP parameter");
  conv->add_option("--epsilon", convert.epsilon, "Report delta at this epsilon");
  conv->add_option("--delta", convert.delta, "Report epsilon at this delta");
  conv->add_option("--n", convert.n, "Report epsilon at delta = 1/n^1.1");
  conv->add_option("--pure-epsilon", convert.pure_epsilon,
                   "Convert a pure eps-DP guarantee to mu");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit) return RunFit(fit_common, fit_data, fit_json, fit_csv);
    if (*synth) return RunSynth(synth_common, synth_data, synth_flags);
    if (*sim) return RunSimulate(sim_common, sim_flags);
    if (*cov) return RunSimulate(cov_common, cov_flags);
    if (*eq) return RunEquivalence(eq_common, eq_json, eq_csv);
    if (*conv) return RunConvert(convert);
  } catch (const Error& e) {
    std::cerr << "error (" << binagg::ErrorCodeName(e.code()) << "): "
              << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
