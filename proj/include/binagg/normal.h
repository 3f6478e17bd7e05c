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

#ifndef BINAGG_NORMAL_H_
#define BINAGG_NORMAL_H_

namespace binagg {

// Standard normal cumulative distribution function.
double StdNormalCdf(double x);

// Inverse of StdNormalCdf. Requires 0 < p < 1.
double StdNormalQuantile(double p);

}  // namespace binagg

#endif  // BINAGG_NORMAL_H_
