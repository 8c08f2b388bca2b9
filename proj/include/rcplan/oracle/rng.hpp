#pragma once

#include <cstdint>

#include "rcplan/uncertainty/distribution.hpp"

namespace rcplan::oracle {

/// SplitMix64 (Steele, Lea & Flood 2014) keyed by (seed, stream).
///
/// Output k of a stream is mix64(key + (k+1) * golden), a pure function of
/// seed, stream and k, so results are reproducible on every platform.
class SplitMix64 {
 public:
  SplitMix64(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  /// Standard normal via the Box-Muller cosine branch.
  double normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t state_;
};

/// One draw from d. MomentTable distributions throw UnsupportedError.
double sample(const uncertainty::Distribution& d, SplitMix64& rng);

}  // namespace rcplan::oracle
