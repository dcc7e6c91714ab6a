/*
 * Copyright (C) 2026 trigfluct contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "trigfluct/util.hpp"

namespace trigfluct::rng {

// Philox4x32-10: counter-based generator (Salmon et al., SC'11). A stream is
// addressed by (key, stream_id); draws within a stream walk a 64-bit block
// counter. There is no global state, so any number of streams can be consumed
// concurrently and every draw is a pure function of (key, stream_id, index).
class Philox {
 public:
  Philox(std::uint64_t key, std::uint64_t stream_id) noexcept
      : key_{static_cast<std::uint32_t>(key),
             static_cast<std::uint32_t>(key >> 32)},
        stream_id_(stream_id) {}

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = kMulA * static_cast<std::uint64_t>(ctr[0]);
      const std::uint64_t p1 = kMulB * static_cast<std::uint64_t>(ctr[2]);
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    return ctr;
  }

  std::uint64_t next_u64() noexcept {
    if (pos_ == 4) refill();
    const std::uint64_t lo = buf_[pos_];
    const std::uint64_t hi = buf_[pos_ + 1];
    pos_ += 2;
    return (hi << 32) | lo;
  }

  // 53-bit uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
  }

  // Standard normal via Box-Muller; generates a pair, caches the second.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
  static constexpr std::uint64_t kMulA = 0xD2511F53ull;
  static constexpr std::uint64_t kMulB = 0xCD9E8D57ull;

  void refill() noexcept {
    buf_ = block({static_cast<std::uint32_t>(block_index_),
                  static_cast<std::uint32_t>(block_index_ >> 32),
                  static_cast<std::uint32_t>(stream_id_),
                  static_cast<std::uint32_t>(stream_id_ >> 32)},
                 key_);
    ++block_index_;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to derive independent master seeds for
// sub-experiments (e.g. one per degree in a scan) from one user seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace trigfluct::rng
