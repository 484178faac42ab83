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
#ifndef FEDSOFIM_ACCOUNTANT_NORMAL_H_
#define FEDSOFIM_ACCOUNTANT_NORMAL_H_

namespace fedsofim {

// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)). glibc's erfc is accurate to
// a few ulp, well inside 1e-12 relative error over the whole double range
// until the result underflows.
double NormalCdf(double x);

// log Phi(x). For x < -8 this uses the asymptotic series
//
//   log Phi(-a) = -a^2/2 - log(a) - log(2 pi)/2
//                 + log(sum_k (-1)^k (2k-1)!! / a^(2k)),
//
// truncated after 20 terms (truncation error below 3e-13 at a = 8 and
// shrinking fast with a), so the result stays finite far past the point where
// Phi(x) underflows.
double LogNormalCdf(double x);

}  // namespace fedsofim

#endif  // FEDSOFIM_ACCOUNTANT_NORMAL_H_
