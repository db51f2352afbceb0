// include/svkit/common.hpp
//
// Copyright 2026  svkit authors
//
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

#ifndef SVKIT_COMMON_HPP_
#define SVKIT_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace svkit {

using Vec = std::vector<double>;

// Error taxonomy. DataError covers malformed inputs and violated
// preconditions; NumericError covers numerical failures such as a matrix
// that is not positive definite after flooring. The CLI maps DataError to
// exit code 2 and NumericError to exit code 3.
class SvkitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public SvkitError {
 public:
  using SvkitError::SvkitError;
};

class NumericError : public SvkitError {
 public:
  using SvkitError::SvkitError;
};

// File-level failures keep a machine-checkable code on top of the message.
enum class IoCode {
  kParse,
  kMagicMismatch,
  kTruncatedRecord,
  kDimensionMismatch,
};

class IoError : public DataError {
 public:
  IoError(IoCode code, const std::string& msg) : DataError(msg), code_(code) {}
  IoCode code() const { return code_; }

 private:
  IoCode code_;
};

// Seeded random source. All randomized steps in the library take an
// explicit seed and draw through this class; mt19937_64 plus our own
// Box-Muller and rejection sampling keep streams identical across
// platforms (std::normal_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; second deviate is cached.
  double gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double angle = 2.0 * kPi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw DataError("uniform_int: n must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic in-place Fisher-Yates (std::shuffle is
// implementation-defined).
template <typename T>
void shuffle(std::vector<T>* v, Rng* rng) {
  for (std::size_t i = v->size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng->uniform_int(i));
    std::swap((*v)[i - 1], (*v)[j]);
  }
}

}  // namespace svkit

#endif  // SVKIT_COMMON_HPP_
