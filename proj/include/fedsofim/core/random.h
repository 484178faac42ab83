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
#ifndef FEDSOFIM_CORE_RANDOM_H_
#define FEDSOFIM_CORE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace fedsofim {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64 bits.
uint64_t SplitMix64(uint64_t x);

// Seed for the noise stream of one (client, round) pair:
//
//   h = SplitMix64(master_seed)
//   h = SplitMix64(h ^ (client + 1) * 0x9E3779B97F4A7C15)
//   h = SplitMix64(h ^ (round + 1) * 0xC2B2AE3D27D4EB4F)
uint64_t DeriveNoiseSeed(uint64_t master_seed, int client, int round);

// Pseudo-random stream backed by std::mt19937_64.
//
// Gaussian variates use the Box-Muller transform on 53-bit uniforms; both
// outputs of each transform are consumed. Identical seeds give identical
// sequences on every platform with IEEE doubles and a conforming libm.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1].
  double NextUniform();
  double NextGaussian();
  // Fills `out` with i.i.d. N(0, stddev^2) draws.
  void FillGaussian(std::span<double> out, double stddev);

  uint64_t NextBits() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Independent stream for the privacy noise of `client` in `round`.
RandomStream DeriveNoiseStream(uint64_t master_seed, int client, int round);

}  // namespace fedsofim

#endif  // FEDSOFIM_CORE_RANDOM_H_
