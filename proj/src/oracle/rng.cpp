#include "rcplan/oracle/rng.hpp"

#include <cmath>
#include <numbers>

#include "rcplan/error.hpp"

namespace rcplan::oracle {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t SplitMix64::mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden) ^ mix64(mix64(stream) + 0x632BE59BD9B4E019ULL)) {}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SplitMix64::gamma(double shape) {
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a)
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample(const uncertainty::Distribution& d, SplitMix64& rng) {
  using namespace uncertainty;
  const auto& k = d.kind();
  if (const auto* u = std::get_if<Uniform>(&k)) return u->lower + (u->upper - u->lower) * rng.uniform();
  if (const auto* n = std::get_if<Normal>(&k)) return n->mean + std::sqrt(n->variance) * rng.normal();
  if (const auto* b = std::get_if<Beta>(&k)) {
    const double x = rng.gamma(b->a);
    const double y = rng.gamma(b->b);
    return x / (x + y);
  }
  throw UnsupportedError("cannot sample from a distribution given only by moments");
}

}  // namespace rcplan::oracle
