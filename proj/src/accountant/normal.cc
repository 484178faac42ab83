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
#include "fedsofim/accountant/normal.h"

#include <cmath>
#include <numbers>

namespace fedsofim {
namespace {

constexpr double kAsymptoticThreshold = 8.0;
constexpr int kAsymptoticTerms = 20;

// log Phi(-a) for a > 8.
double LogUpperTail(double a) {
  const double inv_a2 = 1.0 / (a * a);
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k < kAsymptoticTerms; ++k) {
    term *= -(2.0 * k - 1.0) * inv_a2;
    series += term;
  }
  return -0.5 * a * a - std::log(a) -
         0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

}  // namespace

double NormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double LogNormalCdf(double x) {
  if (x < -kAsymptoticThreshold) return LogUpperTail(-x);
  if (x > 0.0) return std::log1p(-NormalCdf(-x));
  return std::log(NormalCdf(x));
}

}  // namespace fedsofim
