// Copyright 2026 The LUBA Authors
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

#ifndef LUBA_RANDOM_H_
#define LUBA_RANDOM_H_

// Counter-based Philox4x32-10 generator. Output depends only on the key and
// counter, so streams are identical on every platform and compiler.

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace luba {

class Philox4x32 {
 public:
  using result_type = uint32_t;
  using Counter = std::array<uint32_t, 4>;
  using Key = std::array<uint32_t, 2>;

  // The seed forms the key; `stream` selects an independent substream via
  // the upper counter words.
  explicit Philox4x32(uint64_t seed = 0, uint64_t stream = 0);

  // One block of the raw bijection.
  static Counter Block(Counter counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<uint32_t>::max();
  }
  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal draw (Box-Muller, cached pair).
  double Normal();
  // Index drawn with probability proportional to weights (nonnegative, not
  // all zero).
  int Categorical(std::span<const double> weights);

 private:
  Key key_;
  Counter counter_;
  Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace luba

#endif  // LUBA_RANDOM_H_
