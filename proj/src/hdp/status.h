// Copyright 2026 The HDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HDP_STATUS_H_
#define HDP_STATUS_H_

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace hdp {

// Error taxonomy shared by the library and the C API.
//   domain / validation  -> absl::StatusCode::kInvalidArgument
//   unsupported request  -> absl::StatusCode::kUnimplemented
//   numerical failure    -> absl::StatusCode::kAborted
//   file input / output  -> absl::StatusCode::kNotFound
inline absl::Status DomainError(absl::string_view message) {
  return absl::InvalidArgumentError(message);
}

inline absl::Status UnsupportedError(absl::string_view message) {
  return absl::UnimplementedError(message);
}

inline absl::Status NumericalError(absl::string_view message) {
  return absl::AbortedError(message);
}

inline absl::Status IoError(absl::string_view message) {
  return absl::NotFoundError(message);
}

}  // namespace hdp

#define HDP_RETURN_IF_ERROR(expr)             \
  do {                                        \
    const absl::Status hdp_status_ = (expr);  \
    if (!hdp_status_.ok()) return hdp_status_; \
  } while (false)

#define HDP_CONCAT_INNER_(a, b) a##b
#define HDP_CONCAT_(a, b) HDP_CONCAT_INNER_(a, b)
#define HDP_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                               \
  if (!tmp.ok()) return tmp.status();              \
  lhs = std::move(tmp).value()
#define HDP_ASSIGN_OR_RETURN(lhs, expr) \
  HDP_ASSIGN_OR_RETURN_IMPL_(HDP_CONCAT_(hdp_statusor_, __LINE__), lhs, expr)

#endif  // HDP_STATUS_H_
