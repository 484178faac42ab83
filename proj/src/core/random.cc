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
#include "fedsofim/core/random.h"

#include <cmath>
#include <numbers>

namespace fedsofim {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t DeriveNoiseSeed(uint64_t master_seed, int client, int round) {
  uint64_t h = SplitMix64(master_seed);
  h = SplitMix64(h ^ (static_cast<uint64_t>(client) + 1) *
                         0x9E3779B97F4A7C15ULL);
  h = SplitMix64(h ^ (static_cast<uint64_t>(round) + 1) *
                         0xC2B2AE3D27D4EB4FULL);
  return h;
}

double RandomStream::NextUniform() {
  // 53 random mantissa bits mapped to (0, 1].
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::NextGaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = NextUniform();
  const double u2 = NextUniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

void RandomStream::FillGaussian(std::span<double> out, double stddev) {
  for (double& v : out) v = stddev * NextGaussian();
}

RandomStream DeriveNoiseStream(uint64_t master_seed, int client, int round) {
  return RandomStream(DeriveNoiseSeed(master_seed, client, round));
}

}  // namespace fedsofim
