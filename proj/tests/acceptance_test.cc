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

// Acceptance suite: prints one PASS/FAIL line per criterion (with indented
// detail lines) and exits non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "binagg/aggregation.h"
#include "binagg/box.h"
#include "binagg/gdp.h"
#include "binagg/harness/dataset.h"
#include "binagg/harness/experiments.h"
#include "binagg/harness/simulation.h"
#include "binagg/privtree.h"
#include "binagg/random.h"
#include "binagg/regression.h"
#include "binagg/synthesis.h"

namespace binagg {
namespace {

// ---- Pinned tolerances ------------------------------------------------------

// 1. Coverage.
constexpr double kCoverageLow = 0.93;
constexpr double kCoverageHigh = 0.97;
constexpr double kNaiveCoverageMax = 0.75;
// 2. Bias and SD calibration.
constexpr double kBiasMax = 0.05;
constexpr double kSdRatioLow = 0.9;
constexpr double kSdRatioHigh = 1.1;
// 3. Synthetic/direct equivalence.
constexpr std::size_t kEquivalenceMinSeeds = 5000;
constexpr double kEquivalenceMeanZ = 4.0;
constexpr double kEquivalenceVarTolerance = 0.05;
constexpr double kEquivalenceKsAlpha = 0.01;
// 4. Zero-noise collapse.
constexpr double kCollapseTolerance = 1e-10;
// 5. Conversions.
constexpr double kDeltaReference = 0.126936;
constexpr double kDeltaTolerance = 1e-5;
constexpr double kRoundTripTolerance = 1e-9;
// 6. PrivTree.
constexpr double kCalibrationTolerance = 1e-12;
constexpr double kVolumeTolerance = 1e-9;
constexpr int kPartitionProbes = 10000;
constexpr int kOracleFixtures = 20;
constexpr int kOracleFixturePoints = 20;
// 7. Estimating equation.
constexpr int kEstimatingDraws = 100000;
constexpr double kEstimatingZ = 4.0;
constexpr double kEstimatingZeroTolerance = 1e-8;
// 8. Error trend.
constexpr std::size_t kTrendReps = 100;

// ---- Reporting --------------------------------------------------------------

class Reporter {
 public:
  void Criterion(int number, const std::string& title, bool pass) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": "
              << title << "\n";
    for (const auto& line : details_) std::cout << "    " << line << "\n";
    std::cout.flush();
    details_.clear();
    failures_ += !pass;
  }
  // Records a sub-check and returns its outcome.
  bool Check(bool ok, const std::string& what) {
    details_.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    return ok;
  }
  int failures() const { return failures_; }

 private:
  std::vector<std::string> details_;
  int failures_ = 0;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// ---- 1 and 2: coverage study --------------------------------------------------

void CoverageCriteria(Reporter& out) {
  harness::SimulationConfig config;  // d = 5, n = 1000, mu = 1, 1:3:3:3, theta = 0
  config.d = 5;
  config.n = 1000;
  config.repetitions = 2000;
  config.pipeline.total_mu = 1.0;
  config.pipeline.ratios = BudgetRatios{1, 3, 3, 3};
  config.pipeline.theta = 0.0;
  const harness::CoverageReport r = harness::CoverageExperiment(config);
  const std::string failed = Fmt("failed repetitions excluded: %zu of %zu",
                                 r.failures, r.reps.size());

  bool pass = true;
  out.Check(true, failed);
  for (std::size_t j = 0; j < r.summary.size(); ++j) {
    const auto& s = r.summary[j];
    pass &= out.Check(s.coverage >= kCoverageLow && s.coverage <= kCoverageHigh,
                      Fmt("beta_%zu coverage %.4f in [%.2f, %.2f]", j + 1,
                          s.coverage, kCoverageLow, kCoverageHigh));
    pass &= out.Check(s.naive_coverage <= kNaiveCoverageMax,
                      Fmt("beta_%zu naive coverage %.4f <= %.2f", j + 1,
                          s.naive_coverage, kNaiveCoverageMax));
  }
  out.Criterion(1, "confidence-interval coverage (d=5, n=1000, mu=1, 2000 reps)",
                pass);

  pass = true;
  out.Check(true, failed);
  for (std::size_t j = 0; j < r.summary.size(); ++j) {
    const auto& s = r.summary[j];
    const double ratio = s.empirical_sd / s.avg_theoretical_sd;
    pass &= out.Check(std::fabs(s.avg_bias) <= kBiasMax,
                      Fmt("beta_%zu |bias| %.4f <= %.2f", j + 1,
                          std::fabs(s.avg_bias), kBiasMax));
    pass &= out.Check(ratio >= kSdRatioLow && ratio <= kSdRatioHigh,
                      Fmt("beta_%zu empirical/theoretical SD %.4f/%.4f = %.3f "
                          "in [%.1f, %.1f] (naive SD %.4f)",
                          j + 1, s.empirical_sd, s.avg_theoretical_sd, ratio,
                          kSdRatioLow, kSdRatioHigh, s.naive_theoretical_sd));
  }
  std::size_t violating_reps = 0;
  std::string first;
  for (const auto& rep : r.reps) {
    if (!rep.ok) continue;
    for (Eigen::Index j = 0; j < rep.se.size(); ++j) {
      if (!(rep.se(j) > rep.naive_se(j))) {
        if (violating_reps == 0) {
          first = Fmt(" (first: rep %zu, %zu bins, beta_%td %.4f <= %.4f)",
                      rep.rep, rep.bins, j + 1, rep.se(j), rep.naive_se(j));
        }
        ++violating_reps;
        break;
      }
    }
  }
  pass &= out.Check(violating_reps == 0 && r.debiased_exceeds_naive,
                    Fmt("debiased SE > naive SE in every repetition: %zu "
                        "repetitions violate",
                        violating_reps) +
                        first);
  out.Criterion(2, "bias and standard-error calibration", pass);
}

// ---- 3: synthetic/direct equivalence ---------------------------------------

void EquivalenceCriterion(Reporter& out) {
  harness::EquivalenceConfig config;
  config.mean_z = kEquivalenceMeanZ;
  config.var_tolerance = kEquivalenceVarTolerance;
  config.ks_alpha = kEquivalenceKsAlpha;
  config.repetitions = std::max(config.repetitions, kEquivalenceMinSeeds);
  const harness::EquivalenceReport r = harness::EquivalenceExperiment(config);
  bool pass = out.Check(r.repetitions >= kEquivalenceMinSeeds,
                        Fmt("%zu seeds, %zu bins, %zu checks", r.repetitions,
                            r.bins, r.checks.size()));
  std::size_t failed = 0;
  double worst_z = 0, worst_var = 0, worst_ks = 0;
  for (const auto& c : r.checks) {
    failed += !c.ok();
    if (!c.ok()) {
      out.Check(false, Fmt("bin %zu coordinate %zu: mean %d var %d ks %d", c.bin,
                           c.coordinate, c.mean_ok, c.var_ok, c.ks_ok));
    }
    worst_z = std::max(worst_z,
                       std::fabs(c.synthetic_mean - c.expected_mean) / c.mean_se);
    worst_var = std::max(worst_var,
                         std::fabs(c.synthetic_var / c.expected_var - 1.0));
    worst_ks = std::max(worst_ks, c.ks / c.ks_critical);
  }
  pass &= out.Check(failed == 0 && r.AllPass(),
                    Fmt("all checks pass; worst |mean z| %.2f (< %.0f), worst "
                        "variance deviation %.4f (< %.2f), worst KS/critical %.3f "
                        "(< 1)",
                        worst_z, kEquivalenceMeanZ, worst_var,
                        kEquivalenceVarTolerance, worst_ks));
  out.Criterion(3, "aggregated synthetic sums match direct privatized sums", pass);
}

// ---- 4: zero-noise collapse ------------------------------------------------

void CollapseCriterion(Reporter& out) {
  RandomSource data_rng(harness::kDefaultSeed, 4);
  harness::SimulatedData data = harness::SimulateDataset(2000, 3, 1.0, data_rng);
  harness::ClipLabels(data.y, 0.0, harness::DefaultLabelUpper(3));
  const Box domain = Box::Unit(3);
  RandomSource rng(harness::kDefaultSeed, 5);
  const auto leaves =
      BuildPrivTree(data.x, domain, CalibrateForEpsilon(1.0), rng);
  // Counts keep their noise so that noisy and true counts differ.
  const PreparedBins prepared =
      Prepare(data.x, data.y, leaves, domain, GdpBudget(0.5),
              harness::DefaultLabelUpper(3), rng);

  PrivatizeOptions exact;
  exact.zero_noise = true;
  const PrivatizedSummaries priv =
      Privatize(prepared, GdpBudget(1.0), GdpBudget(1.0), rng, exact);
  const Vector wls = WlsExact(priv.sums_x, priv.weights, priv.sums_y);
  const double debiased = (FitDebiased(priv) - wls).cwiseAbs().maxCoeff();
  const double naive = (FitNaive(priv) - wls).cwiseAbs().maxCoeff();
  bool pass = out.Check(debiased <= kCollapseTolerance,
                        Fmt("|debiased - WLS| = %.2e", debiased));
  pass &= out.Check(naive <= kCollapseTolerance,
                    Fmt("|naive - WLS| = %.2e", naive));

  SynthesisOptions no_noise;
  no_noise.zero_noise = true;
  const SyntheticDataset synth =
      Generate(prepared, GdpBudget(1.0), GdpBudget(1.0), rng, no_noise);
  std::size_t mismatched = 0, differing_counts = 0;
  for (const auto& rec : synth.records) {
    const BinSummary& b = prepared.bins[rec.bin];
    const auto c = static_cast<double>(b.noisy_count);
    bool same = rec.y == b.sum_y / c;
    for (Eigen::Index i = 0; i < rec.x.size(); ++i) same &= rec.x(i) == b.sum_x(i) / c;
    mismatched += !same;
  }
  for (const auto& b : prepared.bins) differing_counts += b.noisy_count != b.true_count;
  pass &= out.Check(mismatched == 0,
                    Fmt("synthetic records equal (s/c, t/c) exactly: %zu of %zu "
                        "differ (%zu bins with noisy != true count)",
                        mismatched, synth.records.size(), differing_counts));

  const Vector c = priv.weights.cwiseInverse();
  const Matrix means = priv.weights.asDiagonal() * priv.sums_x;
  const Vector ybar = priv.sums_y.cwiseProduct(priv.weights);
  const double models = (WlsExact(means, c, ybar) - wls).cwiseAbs().maxCoeff();
  pass &= out.Check(models <= kCollapseTolerance,
                    Fmt("|sum-model WLS - averaged-model WLS| = %.2e", models));
  out.Criterion(4, "zero-noise collapse", pass);
}

// ---- 5: conversions ----------------------------------------------------------

// Normal CDF by its Taylor series in long double, independent of the library.
long double SeriesNormalCdf(long double x) {
  long double term = x, sum = x;
  for (int k = 1; k < 400; ++k) {
    term *= x * x / (2 * k + 1);
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum)) break;
  }
  return 0.5L + sum * std::exp(-x * x / 2) /
                    std::sqrt(2 * 3.141592653589793238462643383279L);
}

void ConversionCriterion(Reporter& out) {
  const double delta = GdpToApproxDp(GdpBudget(1.0), 1.0).delta;
  const auto oracle = static_cast<double>(SeriesNormalCdf(-0.5L) -
                                          std::exp(1.0L) * SeriesNormalCdf(-1.5L));
  bool pass = out.Check(std::fabs(delta - kDeltaReference) <= kDeltaTolerance,
                        Fmt("delta(mu=1, eps=1) = %.10f vs %.6f", delta,
                            kDeltaReference));
  pass &= out.Check(std::fabs(delta - oracle) <= kDeltaTolerance,
                    Fmt("series-CDF oracle %.10f (|diff| %.1e)", oracle,
                        std::fabs(delta - oracle)));
  for (double eps : {0.1, 1.0, 5.0}) {
    const double back = GdpToPureDp(PureDpToGdp(eps));
    pass &= out.Check(std::fabs(back - eps) <= kRoundTripTolerance,
                      Fmt("eps %.1f -> mu %.10f -> eps %.12f", eps,
                          PureDpToGdp(eps).mu(), back));
  }
  const std::vector<GdpBudget> parts = {GdpBudget(3.0), GdpBudget(4.0)};
  pass &= out.Check(Compose(parts).mu() == 5.0,
                    Fmt("compose(3, 4) = %.17g", Compose(parts).mu()));
  out.Criterion(5, "privacy conversion formulas", pass);
}

// ---- 6: PrivTree -------------------------------------------------------------

// Brute-force noiseless tree: recursive, plain arrays, explicit membership.
struct OracleNode {
  std::vector<double> lo, hi;
  int depth = 0;
  std::size_t count = 0;
  std::unique_ptr<OracleNode> left, right;
};

std::unique_ptr<OracleNode> OracleBuild(const std::vector<std::vector<double>>& pts,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi,
                                        const std::vector<double>& dom_hi,
                                        int depth, const PrivTreeConfig& cfg) {
  auto node = std::make_unique<OracleNode>();
  node->lo = lo;
  node->hi = hi;
  node->depth = depth;
  for (const auto& p : pts) {
    bool in = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const bool upper = p[i] < hi[i] || (hi[i] == dom_hi[i] && p[i] <= hi[i]);
      in = in && p[i] >= lo[i] && upper;
    }
    node->count += in;
  }
  const double biased = std::max(static_cast<double>(node->count) -
                                      depth * cfg.delta_decay,
                                  cfg.theta - cfg.delta_decay);
  if (biased > cfg.theta && depth < cfg.max_depth) {
    std::size_t dim = 0;
    for (std::size_t i = 1; i < lo.size(); ++i) {
      if (hi[i] - lo[i] > hi[dim] - lo[dim]) dim = i;
    }
    const double mid = (lo[dim] + hi[dim]) / 2;
    std::vector<double> left_hi = hi, right_lo = lo;
    left_hi[dim] = mid;
    right_lo[dim] = mid;
    node->left = OracleBuild(pts, lo, left_hi, dom_hi, depth + 1, cfg);
    node->right = OracleBuild(pts, right_lo, hi, dom_hi, depth + 1, cfg);
  }
  return node;
}

// Returns the number of probes not landing in exactly one leaf.
int PartitionDefects(const std::vector<Box>& leaves, const Box& domain,
                     RandomSource& rng, double* volume_error) {
  double volume = 0;
  for (const Box& b : leaves) volume += b.Volume();
  *volume_error = std::fabs(volume / domain.Volume() - 1.0);
  int defects = 0;
  std::vector<double> p(domain.dims());
  for (int t = 0; t < kPartitionProbes; ++t) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = rng.Uniform(domain.lower(i), domain.upper(i));
    }
    int hits = 0;
    for (const Box& b : leaves) hits += b.Contains(p, domain);
    defects += hits != 1;
  }
  return defects;
}

DataMatrix UniformPoints(std::size_t n, const Box& box, RandomSource& rng) {
  DataMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(box.dims()));
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (std::size_t i = 0; i < box.dims(); ++i) {
      x(j, static_cast<Eigen::Index>(i)) = rng.Uniform(box.lower(i), box.upper(i));
    }
  }
  return x;
}

void PrivTreeCriterion(Reporter& out) {
  const PrivTreeConfig cfg = CalibrateForEpsilon(1.0);
  bool pass = out.Check(std::fabs(cfg.lambda - 3.0) <= kCalibrationTolerance &&
                            std::fabs(cfg.delta_decay - 3.0 * std::log(2.0)) <=
                                kCalibrationTolerance,
                        Fmt("eps=1: lambda %.15f, delta %.15f (3 ln 2 = %.15f)",
                            cfg.lambda, cfg.delta_decay, 3.0 * std::log(2.0)));

  // Noisy builds over several domains and dimensions.
  const std::vector<Box> domains = {Box::Unit(1), Box::Unit(2),
                                    Box({-1.0, 0.0, 10.0}, {1.0, 4.0, 11.0}),
                                    Box::Unit(5)};
  double worst_volume = 0;
  int defects = 0;
  std::size_t builds = 0;
  for (std::size_t di = 0; di < domains.size(); ++di) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      RandomSource rng(harness::kDefaultSeed + seed, 60 + di);
      const DataMatrix x = UniformPoints(2000, domains[di], rng);
      const auto leaves = BuildPrivTree(x, domains[di], cfg, rng);
      double volume_error = 0;
      defects += PartitionDefects(leaves, domains[di], rng, &volume_error);
      worst_volume = std::max(worst_volume, volume_error);
      ++builds;
    }
  }
  pass &= out.Check(worst_volume <= kVolumeTolerance && defects == 0,
                    Fmt("%zu builds: worst relative volume error %.1e, %d of "
                        "%zu probes not in exactly one leaf",
                        builds, worst_volume, defects,
                        builds * kPartitionProbes));

  std::size_t mismatched = 0, nodes = 0;
  for (int f = 0; f < kOracleFixtures; ++f) {
    RandomSource rng(harness::kDefaultSeed + f, 66);
    const Box domain = f % 2 ? Box::Unit(2) : Box({-2.0, 0.0, 1.0}, {3.0, 1.0, 2.0});
    DataMatrix x = UniformPoints(kOracleFixturePoints, domain, rng);
    if (f % 4 == 0) x.row(3) = x.row(4);
    std::vector<internal::TreeNode> visited;
    const auto leaves = internal::BuildPrivTreeWithNoise(
        x, domain, cfg, [] { return 0.0; }, &visited);
    std::vector<std::vector<double>> pts;
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      pts.emplace_back(x.row(j).begin(), x.row(j).end());
    }
    const auto root =
        OracleBuild(pts, domain.lower(), domain.upper(), domain.upper(), 0, cfg);
    std::vector<const OracleNode*> order;
    std::deque<const OracleNode*> queue = {root.get()};
    std::size_t oracle_leaves = 0;
    while (!queue.empty()) {
      const OracleNode* n = queue.front();
      queue.pop_front();
      order.push_back(n);
      if (n->left) {
        queue.push_back(n->left.get());
        queue.push_back(n->right.get());
      } else {
        ++oracle_leaves;
      }
    }
    nodes += order.size();
    if (order.size() != visited.size() || oracle_leaves != leaves.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t v = 0; v < order.size(); ++v) {
      if (visited[v].region.lower() != order[v]->lo ||
          visited[v].region.upper() != order[v]->hi ||
          visited[v].depth != order[v]->depth ||
          visited[v].count != order[v]->count) {
        ++mismatched;
        break;
      }
    }
  }
  pass &= out.Check(mismatched == 0,
                    Fmt("noiseless builds match brute force node for node on "
                        "%d fixtures of %d points (%zu nodes): %zu mismatch",
                        kOracleFixtures, kOracleFixturePoints, nodes, mismatched));
  out.Criterion(6, "PrivTree calibration and partition", pass);
}

// ---- 7: estimating equation ------------------------------------------------

void EstimatingCriterion(Reporter& out) {
  Vector truth(2);
  truth << 1.5, 1.2;
  // Fixed bins on [0, 1]^2 from simulated data; labels are redrawn each time.
  RandomSource rng(harness::kDefaultSeed, 7);
  const Box domain = Box::Unit(2);
  const DataMatrix x = UniformPoints(300, domain, rng);
  const Vector y = Vector::Constant(300, 1.0);
  const auto leaves = BuildPrivTree(x, domain, CalibrateForEpsilon(1.0, 0.0, 3), rng);
  const PreparedBins base =
      Prepare(x, y, leaves, domain, GdpBudget(1.0), 4.0, rng);
  const auto k_bins = static_cast<Eigen::Index>(base.size());
  Matrix sum = Matrix::Zero(k_bins, 2), sum2 = Matrix::Zero(k_bins, 2);
  for (int r = 0; r < kEstimatingDraws; ++r) {
    RandomSource draw(harness::kDefaultSeed, 1000 + static_cast<uint64_t>(r));
    PreparedBins p = base;
    for (BinSummary& b : p.bins) {
      b.sum_y = b.sum_x.dot(truth) +
                std::sqrt(static_cast<double>(b.true_count)) * draw.StandardNormal();
    }
    const Matrix q = EstimatingContributions(
        Privatize(p, GdpBudget(1.0), GdpBudget(1.0), draw), truth);
    sum += q;
    sum2 += q.cwiseProduct(q);
  }
  double worst = 0;
  for (Eigen::Index k = 0; k < k_bins; ++k) {
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double mean = sum(k, i) / kEstimatingDraws;
      const double se =
          std::sqrt((sum2(k, i) / kEstimatingDraws - mean * mean) / kEstimatingDraws);
      worst = std::max(worst, std::fabs(mean) / se);
    }
  }
  bool pass = out.Check(worst < kEstimatingZ,
                        Fmt("%d draws, %td bins x 2 coordinates: worst |mean| / SE "
                            "of Q_k(beta) = %.2f (< %.0f)",
                            kEstimatingDraws, k_bins, worst, kEstimatingZ));

  double worst_total = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomSource draw(harness::kDefaultSeed + seed, 77);
    harness::SimulatedData data = harness::SimulateDataset(1000, 5, 1.0, draw);
    harness::ClipLabels(data.y, 0.0, harness::DefaultLabelUpper(5));
    const auto bins = BuildPrivTree(data.x, Box::Unit(5), Calibrate(GdpBudget(0.19)), draw);
    const PreparedBins p = Prepare(data.x, data.y, bins, Box::Unit(5), GdpBudget(0.57),
                                   harness::DefaultLabelUpper(5), draw);
    const PrivatizedSummaries priv =
        Privatize(p, GdpBudget(0.57), GdpBudget(0.57), draw);
    const Vector beta = FitDebiased(priv);
    const Vector total = EstimatingContributions(priv, beta).colwise().sum();
    worst_total = std::max(worst_total, total.cwiseAbs().maxCoeff());
  }
  pass &= out.Check(worst_total <= kEstimatingZeroTolerance,
                    Fmt("sum_k Q_k at the fitted value over 20 fits: max |.| = "
                        "%.2e (<= %.0e)",
                        worst_total, kEstimatingZeroTolerance));
  out.Criterion(7, "estimating-equation properties", pass);
}

// ---- 8: consistency trend ----------------------------------------------------

void TrendCriterion(Reporter& out) {
  harness::SimulationConfig config;
  config.d = 1;
  config.repetitions = kTrendReps;
  config.pipeline.total_mu = 1.0;
  const harness::ErrorCurveReport r =
      harness::ErrorCurveExperiment(config, {512, 2048, 8192});
  bool pass = true;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    pass &= out.Check(p.mean_ols_error <= p.mean_binagg_error,
                      Fmt("n=%zu: BinAgg %.5f, OLS %.5f (OLS <= BinAgg), "
                          "median bins %.1f, failures %zu",
                          p.n, p.mean_binagg_error, p.mean_ols_error,
                          p.median_bins, p.failures));
    if (i > 0) {
      pass &= out.Check(p.mean_binagg_error < r.points[i - 1].mean_binagg_error,
                        Fmt("error decreases from n=%zu to n=%zu",
                            r.points[i - 1].n, p.n));
    }
  }
  out.Criterion(8, "error decreases with n (d=1, mu=1, 100 reps)", pass);
}

// ---- 9: CLI determinism ------------------------------------------------------

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void DeterminismCriterion(Reporter& out) {
  namespace fs = std::filesystem;
  const fs::path scratch = BINAGG_SCRATCH_DIR;
  fs::create_directories(scratch);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"coverage", "coverage --seed 11 --reps 300"},
      {"error_curve", "simulate --report error-curve --d 1 --reps 30 --seed 11"},
      {"equivalence", "equivalence --reps 5000 --seed 11"},
      {"sweep", "coverage --reps 100 --seed 11 --sweep theta=0,-5"},
  };
  bool pass = true;
  for (const auto& [name, args] : runs) {
    std::string outputs[2][2];
    bool ran = true;
    for (int t = 0; t < 2; ++t) {
      const fs::path json = scratch / (name + "_" + std::to_string(t) + ".json");
      const fs::path csv = scratch / (name + "_" + std::to_string(t) + ".csv");
      fs::remove(json);
      fs::remove(csv);
      // Different worker counts on the two runs.
      const std::string cmd = std::string("\"") + BINAGG_CLI_PATH + "\" " + args +
                              " --workers " + (t == 0 ? "1" : "4") +
                              " --out-json \"" + json.string() + "\" --out-csv \"" +
                              csv.string() + "\" > /dev/null";
      ran &= std::system(cmd.c_str()) == 0;
      outputs[t][0] = Slurp(json);
      outputs[t][1] = Slurp(csv);
    }
    const bool same = ran && !outputs[0][0].empty() && !outputs[0][1].empty() &&
                      outputs[0][0] == outputs[1][0] &&
                      outputs[0][1] == outputs[1][1];
    pass &= out.Check(same, Fmt("binagg %s: JSON (%zu bytes) and CSV (%zu bytes) "
                                "byte-identical across two runs",
                                args.c_str(), outputs[0][0].size(),
                                outputs[0][1].size()));
  }
  out.Criterion(9, "CLI reports are byte-identical across runs", pass);
}

}  // namespace
}  // namespace binagg

int main() {
  using namespace binagg;
  Reporter out;
  const std::vector<std::function<void(Reporter&)>> criteria = {
      CoverageCriteria,    EquivalenceCriterion, CollapseCriterion,
      ConversionCriterion, PrivTreeCriterion,    EstimatingCriterion,
      TrendCriterion,      DeterminismCriterion};
  for (const auto& run : criteria) {
    try {
      run(out);
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion: uncaught exception: " << e.what() << "\n";
      return 1;
    }
  }
  std::cout << (out.failures() == 0 ? "ALL CRITERIA PASS"
                                    : std::to_string(out.failures()) +
                                          " CRITERIA FAIL")
            << "\n";
  return out.failures() == 0 ? 0 : 1;
}
