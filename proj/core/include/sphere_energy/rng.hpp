#pragma once

#include <cstdint>

#include "sphere_energy/common.hpp"

namespace sphere_energy {

// Counter-based splittable generator.  A draw is a pure function of
// (seed, stream, counter), so any worker can produce any slice of the
// sequence without shared state: results are bit-for-bit identical no
// matter how work is distributed.  Construction follows the SplitMix64
// recipe: a per-stream base and an odd per-stream increment ("gamma") are
// derived from the seed, and output i is the finalizer applied to
// base + i * gamma.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  // i-th raw 64-bit draw of this stream (stateless).
  std::uint64_t bits(std::uint64_t i) const;

  // Stateful convenience: successive draws advance an internal counter.
  std::uint64_t next_bits() { return bits(counter_++); }
  // Uniform on (0,1]; never returns 0 so log() is safe.
  double next_double() { return to_unit(next_bits()); }
  // Standard normal via Box-Muller (consumes two draws per call).
  double next_gaussian();

  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

  // Derive a child stream id; distinct (stream, salt) pairs give
  // statistically independent streams under the same seed.
  static std::uint64_t derive_stream(std::uint64_t stream, std::uint64_t salt);

 private:
  static double to_unit(std::uint64_t u);
  std::uint64_t base_;
  std::uint64_t gamma_;
  std::uint64_t counter_ = 0;
};

// Fill a d x n matrix with i.i.d. uniform points on S^{d-1} (normalized
// Gaussians).  Column j depends only on (seed, stream, j), independent of n.
Mat sample_sphere(int d, int n, std::uint64_t seed, std::uint64_t stream);

// Single spherical point, column i of the conceptual infinite sample.
Vec sphere_point(int d, std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index);

}  // namespace sphere_energy
