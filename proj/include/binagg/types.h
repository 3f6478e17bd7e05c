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

#ifndef BINAGG_TYPES_H_
#define BINAGG_TYPES_H_

#include <span>

#include <Eigen/Dense>

namespace binagg {

// n x d feature matrix, one record per row.
using DataMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline std::span<const double> RowSpan(const DataMatrix& x, Eigen::Index row) {
  return {x.row(row).data(), static_cast<std::size_t>(x.cols())};
}

}  // namespace binagg

#endif  // BINAGG_TYPES_H_
