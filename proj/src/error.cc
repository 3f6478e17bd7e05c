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

#include "binagg/error.h"

namespace binagg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kEmptyResult:
      return "empty result";
    case ErrorCode::kSingularSystem:
      return "singular system";
    case ErrorCode::kInsufficientBins:
      return "insufficient bins";
    case ErrorCode::kLoadError:
      return "load error";
  }
  return "unknown";
}

}  // namespace binagg
