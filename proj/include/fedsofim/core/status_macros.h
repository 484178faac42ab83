/*
 * Copyright 2026 The FedSOFIM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef FEDSOFIM_CORE_STATUS_MACROS_H_
#define FEDSOFIM_CORE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define FEDSOFIM_RETURN_IF_ERROR(expr)        \
  do {                                        \
    ::absl::Status _fedsofim_status = (expr); \
    if (!_fedsofim_status.ok()) {             \
      return _fedsofim_status;                \
    }                                         \
  } while (0)

#define FEDSOFIM_CONCAT_INNER_(a, b) a##b
#define FEDSOFIM_CONCAT_(a, b) FEDSOFIM_CONCAT_INNER_(a, b)

#define FEDSOFIM_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                    \
  if (!statusor.ok()) {                                       \
    return statusor.status();                                 \
  }                                                           \
  lhs = std::move(statusor).value()

#define FEDSOFIM_ASSIGN_OR_RETURN(lhs, rexpr) \
  FEDSOFIM_ASSIGN_OR_RETURN_IMPL_(            \
      FEDSOFIM_CONCAT_(_fedsofim_statusor_, __LINE__), lhs, rexpr)

#endif  // FEDSOFIM_CORE_STATUS_MACROS_H_
