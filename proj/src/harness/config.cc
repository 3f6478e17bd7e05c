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

#include "binagg/harness/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

#include "binagg/error.h"

namespace binagg::harness {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(Trim(std::string_view(text).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

double ParseDouble(const std::string& text) {
  const std::string t = Trim(text);
  std::string_view view = t;
  if (!view.empty() && view.front() == '+') view.remove_prefix(1);
  if (view == "inf" || view == "infinity") return INFINITY;
  if (view == "-inf" || view == "-infinity") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
  Require(!view.empty() && ec == std::errc() && ptr == view.data() + view.size(),
          "not a number: '" + text + "'");
  return v;
}

uint64_t ParseUnsigned(const std::string& text) {
  const std::string t = Trim(text);
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  Require(!t.empty() && ec == std::errc() && ptr == t.data() + t.size(),
          "not a non-negative integer: '" + text + "'");
  return v;
}

bool ParseBool(const std::string& text) {
  const std::string t = Trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  Fail(ErrorCode::kInvalidArgument, "not a boolean: '" + text + "'");
}

BudgetRatios ParseRatios(const std::string& text) {
  const auto parts = Split(text, ':');
  Require(parts.size() == 4,
          "ratios need four values bin:count:sum_x:sum_y, got '" + text + "'");
  BudgetRatios r{ParseDouble(parts[0]), ParseDouble(parts[1]),
                 ParseDouble(parts[2]), ParseDouble(parts[3])};
  for (double v : {r.bin, r.count, r.sum_x, r.sum_y}) {
    Require(std::isfinite(v) && v > 0, "budget ratios must all be positive");
  }
  return r;
}

std::pair<double, double> ParseInterval(const std::string& text) {
  const auto parts = Split(text, ':');
  Require(parts.size() == 2, "interval must be lo:hi, got '" + text + "'");
  const double lo = ParseDouble(parts[0]);
  const double hi = ParseDouble(parts[1]);
  Require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "interval must be finite with lo < hi: '" + text + "'");
  return {lo, hi};
}

std::vector<std::pair<double, double>> ParseIntervalList(
    const std::string& text) {
  std::vector<std::pair<double, double>> out;
  for (const std::string& part : Split(text, ',')) {
    out.push_back(ParseInterval(part));
  }
  return out;
}

KeyValues ParseKeyValues(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = Trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    Require(eq != std::string::npos,
            "config line " + std::to_string(line_no) + " has no '='");
    const std::string key = Trim(std::string_view(t).substr(0, eq));
    Require(!key.empty(), "config line " + std::to_string(line_no) +
                              " has an empty key");
    out[key] = Trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

KeyValues LoadKeyValues(const std::string& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  return ParseKeyValues(in);
}

void ApplySetting(const std::string& key, const std::string& value,
                  RunSettings& s) {
  PipelineConfig& p = s.pipeline;
  if (key == "total_mu") {
    p.total_mu = ParseDouble(value);
    Require(std::isfinite(p.total_mu) && p.total_mu > 0,
            "total_mu must be positive");
  } else if (key == "ratios") {
    p.ratios = ParseRatios(value);
  } else if (key == "theta") {
    p.theta = ParseDouble(value);
  } else if (key == "max_depth") {
    p.max_depth = static_cast<int>(ParseUnsigned(value));
    Require(p.max_depth >= 1, "max_depth must be at least 1");
  } else if (key == "min_count") {
    p.min_count = static_cast<int64_t>(ParseUnsigned(value));
    Require(p.min_count >= 1, "min_count must be at least 1");
  } else if (key == "bounds") {
    s.bounds = ParseIntervalList(value);
  } else if (key == "label_bounds") {
    s.label_bounds = ParseInterval(value);
  } else if (key == "seed") {
    s.seed = ParseUnsigned(value);
  } else if (key == "reps") {
    s.reps = ParseUnsigned(value);
    Require(s.reps >= 1, "reps must be at least 1");
  } else if (key == "alpha") {
    p.alpha = ParseDouble(value);
    Require(p.alpha > 0 && p.alpha < 1, "alpha must lie in (0, 1)");
  } else if (key == "strict_l2_mode") {
    p.strict_l2 = ParseBool(value);
  } else if (key == "algorithm2_literal_debias") {
    p.scaling = ParseBool(value) ? CorrectionScaling::kAveraged
                                 : CorrectionScaling::kEstimatingEquation;
  } else if (key == "intercept") {
    p.intercept = ParseBool(value);
  } else if (key == "n") {
    s.n = ParseUnsigned(value);
  } else if (key == "d") {
    s.d = ParseUnsigned(value);
    Require(s.d >= 1, "d must be at least 1");
  } else if (key == "sigma") {
    s.sigma = ParseDouble(value);
    Require(std::isfinite(s.sigma) && s.sigma >= 0, "sigma must be >= 0");
  } else if (key == "workers") {
    s.workers = ParseUnsigned(value);
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
}

void ApplySettings(const KeyValues& values, RunSettings& settings) {
  for (const auto& [key, value] : values) ApplySetting(key, value, settings);
}

Sweep ParseSweep(const std::string& text) {
  const auto eq = text.find('=');
  Require(eq != std::string::npos && eq > 0,
          "sweep must look like key=v1,v2,...");
  Sweep out;
  out.key = Trim(std::string_view(text).substr(0, eq));
  Require(out.key != "bounds" && out.key != "label_bounds",
          "bounds cannot be swept");
  out.values = Split(text.substr(eq + 1), ',');
  for (const std::string& v : out.values) {
    Require(!v.empty(), "sweep has an empty value");
  }
  return out;
}

}  // namespace binagg::harness
