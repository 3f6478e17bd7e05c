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

#include "binagg/harness/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "binagg/error.h"

namespace binagg::harness {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void LoadFail(std::size_t line, std::size_t column,
                           const std::string& what) {
  Fail(ErrorCode::kLoadError, "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + what);
}

double ParseCell(std::string_view cell, std::size_t line, std::size_t column) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(v)) {
    LoadFail(line, column, "non-numeric value '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

Box FeatureDomain(const DatasetSpec& spec) {
  std::vector<double> lo, hi;
  for (const auto& [l, h] : spec.feature_bounds) {
    lo.push_back(l);
    hi.push_back(h);
  }
  return Box(std::move(lo), std::move(hi));
}

LoadedDataset ParseDataset(std::istream& in, const DatasetSpec& spec) {
  Require(spec.label_bounds.first < spec.label_bounds.second,
          "label bounds must satisfy lo < hi");
  const Box domain = FeatureDomain(spec);

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) have_header = true;
  }
  if (!have_header) Fail(ErrorCode::kLoadError, "dataset is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }

  const auto header = SplitFields(line);
  std::size_t label_col = header.size();
  std::vector<std::size_t> feature_cols;
  LoadedDataset out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == spec.label_column) {
      if (label_col != header.size()) {
        LoadFail(line_no, c + 1, "label column appears twice");
      }
      label_col = c;
    } else {
      feature_cols.push_back(c);
      out.feature_names.emplace_back(header[c]);
    }
  }
  if (label_col == header.size()) {
    Fail(ErrorCode::kLoadError,
         "label column '" + spec.label_column + "' not found in header");
  }
  if (feature_cols.size() != spec.feature_bounds.size()) {
    Fail(ErrorCode::kLoadError,
         "header has " + std::to_string(feature_cols.size()) +
             " feature columns but " +
             std::to_string(spec.feature_bounds.size()) +
             " feature bounds were given");
  }

  const auto [ylo, yhi] = spec.label_bounds;
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != header.size()) {
      LoadFail(line_no, std::min(fields.size(), header.size()) + 1,
               "expected " + std::to_string(header.size()) + " fields, got " +
                   std::to_string(fields.size()));
    }
    std::vector<double> row(feature_cols.size());
    bool out_of_bounds = false;
    for (std::size_t i = 0; i < feature_cols.size(); ++i) {
      double v = ParseCell(fields[feature_cols[i]], line_no, feature_cols[i] + 1);
      const double clamped = std::clamp(v, domain.lower(i), domain.upper(i));
      if (clamped != v) out_of_bounds = true;
      row[i] = spec.policy == ClipPolicy::kClip ? clamped : v;
    }
    double label = ParseCell(fields[label_col], line_no, label_col + 1);
    const double clamped = std::clamp(label, ylo, yhi);
    if (clamped != label) out_of_bounds = true;
    if (out_of_bounds) {
      if (spec.policy == ClipPolicy::kReject) {
        ++out.rejected_rows;
        continue;
      }
      ++out.clipped_rows;
      label = clamped;
    }
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
  if (rows.empty()) Fail(ErrorCode::kLoadError, "dataset has no usable rows");

  out.x.resize(static_cast<Eigen::Index>(rows.size()),
               static_cast<Eigen::Index>(feature_cols.size()));
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    for (std::size_t i = 0; i < feature_cols.size(); ++i) {
      out.x(jj, static_cast<Eigen::Index>(i)) = rows[j][i];
    }
    out.y(jj) = labels[j];
  }
  return out;
}

LoadedDataset LoadDataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) Fail(ErrorCode::kLoadError, "cannot open '" + spec.path + "'");
  return ParseDataset(in, spec);
}

std::size_t ClipToBox(DataMatrix& x, const Box& box) {
  Require(static_cast<std::size_t>(x.cols()) == box.dims() || x.rows() == 0,
          "data dimension does not match the bounds");
  std::size_t changed = 0;
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    bool row_changed = false;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const double c = std::clamp(x(j, i), box.lower(ii), box.upper(ii));
      if (c != x(j, i)) {
        x(j, i) = c;
        row_changed = true;
      }
    }
    if (row_changed) ++changed;
  }
  return changed;
}

std::size_t ClipLabels(Vector& y, double lo, double hi) {
  Require(lo < hi, "label bounds must satisfy lo < hi");
  std::size_t changed = 0;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const double c = std::clamp(y(j), lo, hi);
    if (c != y(j)) {
      y(j) = c;
      ++changed;
    }
  }
  return changed;
}

}  // namespace binagg::harness
