// Copyright 2026 The pplearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seedable random source with a stream that is identical on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms are left to
// the library vendor), so the conversions to doubles, bounded integers and
// normals are done here:
//   uniform()      (x >> 11) * 2^-53, in [0, 1)
//   below(n)       rejection sampling on the top bits, unbiased
//   normal()       Marsaglia polar method, caching the second variate
//
// Derived seeds for parallel work: derive_seed(seed, index) mixes both values
// through splitmix64, so episode k always gets the same stream regardless of
// scheduling.

#ifndef PPLEARN_RANDOM_HPP_
#define PPLEARN_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace pplearn {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  // Uniform on {0, ..., n-1}; n >= 1.
  std::uint64_t below(std::uint64_t n);
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  // Uniformly random permutation of {0..m-1} (Fisher-Yates using below()).
  std::vector<int> permutation(int m);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pplearn

#endif  // PPLEARN_RANDOM_HPP_
