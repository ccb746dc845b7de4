#include "sphere_energy/rng.hpp"

#include <cmath>

namespace sphere_energy {
namespace {

// SplitMix64 finalizer (Steele, Lea, Flood 2014); a 64-bit bijection.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t key = mix64(seed ^ 0x5851f42d4c957f2dULL);
  base_ = mix64(key ^ mix64(stream));
  gamma_ = mix64(key + 0x9e3779b97f4a7c15ULL * stream) | 1ULL;
}

std::uint64_t CounterRng::bits(std::uint64_t i) const {
  return mix64(base_ + i * gamma_);
}

double CounterRng::to_unit(std::uint64_t u) {
  // 53 high bits -> (0,1]: add one ulp-half so 0 is excluded.
  return static_cast<double>(u >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::next_gaussian() {
  const double u1 = next_double();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::uint64_t CounterRng::derive_stream(std::uint64_t stream,
                                        std::uint64_t salt) {
  return mix64(mix64(stream) ^ (0xbf58476d1ce4e5b9ULL * (salt + 1)));
}

Vec sphere_point(int d, std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index) {
  require(d >= 1, "sphere_point: dimension must be >= 1");
  CounterRng rng(seed, stream);
  // Each point owns a fixed block of 2*d counters (two per gaussian).
  rng.set_counter(index * static_cast<std::uint64_t>(2 * d));
  Vec x(d);
  for (int r = 0; r < d; ++r) x[r] = rng.next_gaussian();
  const double norm2 = x.squaredNorm();
  if (norm2 == 0.0) {  // all-zero gaussian vector: not reachable in practice
    x.setZero();
    x[0] = 1.0;
    return x;
  }
  return x / std::sqrt(norm2);
}

Mat sample_sphere(int d, int n, std::uint64_t seed, std::uint64_t stream) {
  require(d >= 1 && n >= 0, "sample_sphere: bad dimensions");
  Mat pts(d, n);
  for (int j = 0; j < n; ++j)
    pts.col(j) = sphere_point(d, seed, stream, static_cast<std::uint64_t>(j));
  return pts;
}

}  // namespace sphere_energy
