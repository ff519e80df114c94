// include/rwt/rng.h

// Copyright 2026  The rwt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RWT_RNG_H_
#define RWT_RNG_H_

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace rwt {

/**
   Seeded generator used by everything that samples in this library.

   The bit stream is fixed so that synthetic corpora (and therefore the
   acceptance thresholds computed on them) are identical across machines:

     - state: xoshiro256** (Blackman & Vigna), four 64-bit words, seeded by
       running splitmix64 four times from the user seed;
     - uniform(): the top 53 bits of next() scaled by 2^-53, in [0, 1);
     - normal(): Box-Muller on (u1, u2) with u1 = 1 - uniform() in (0, 1],
       returning r*cos(2*pi*u2) first and caching r*sin(2*pi*u2) for the
       following call.

   Do not change any of the above without bumping kRngVersion.
*/
class Rng {
 public:
  static constexpr int kRngVersion = 1;

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal();

  /// Vector of iid standard normals.
  Eigen::VectorXd normal_vector(int dim);

  /// Derives an independent stream, e.g. one per corpus.
  Rng fork();

 private:
  std::array<std::uint64_t, 4> s_;
  std::optional<double> cached_normal_;
};

}  // namespace rwt

#endif  // RWT_RNG_H_
