/* Copyright 2026 The adastoch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstdint>
#include <random>

namespace adastoch {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Reproducible random stream for one replication.
///
/// The engine is std::mt19937_64 seeded with
///   mix64(mix64(seed) + 0x9E3779B97F4A7C15 * (index + 1)),
/// so (seed, index) pins the sequence on every platform and distinct indices
/// give decorrelated streams. uniform() takes the top 53 bits of one engine
/// output. gaussian() is Box-Muller: it consumes two uniforms, returns the
/// cosine branch and caches the sine branch for the next call.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  // In [0, 1).
  double uniform();
  double gaussian();

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t index) {
  return RngStream(seed, index);
}

}  // namespace adastoch
