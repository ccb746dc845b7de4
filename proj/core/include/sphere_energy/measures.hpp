#pragma once

#include <string>
#include <vector>

#include "sphere_energy/geom.hpp"
#include "sphere_energy/rng.hpp"

namespace sphere_energy {

// Finitely supported probability measure: atom j is column j of atoms with
// mass weights[j].  Weights must be nonnegative and sum to 1 within 1e-12.
struct DiscreteMeasure {
  Mat atoms;    // d x n
  Vec weights;  // n

  int dim() const { return static_cast<int>(atoms.rows()); }
  int size() const { return static_cast<int>(atoms.cols()); }
};

DiscreteMeasure make_discrete(Mat atoms, Vec weights);
// Equal weights 1/n.
DiscreteMeasure uniform_atoms(Mat atoms);

// A measure we can sample from and, when finitely supported, integrate
// against exactly: an explicit atom list, the uniform (rotation-invariant)
// probability measure sigma on S^{d-1}, or a finite mixture.
struct MeasureSpec {
  enum class Kind { Discrete, UniformSphere, Mixture };

  Kind kind = Kind::UniformSphere;
  int dim = 0;
  DiscreteMeasure discrete;            // Kind::Discrete
  std::vector<double> mix_weights;     // Kind::Mixture (sum to 1)
  std::vector<MeasureSpec> mix_parts;  // Kind::Mixture

  static MeasureSpec sphere(int d);
  static MeasureSpec from_discrete(DiscreteMeasure m);
  static MeasureSpec mixture(std::vector<double> weights,
                             std::vector<MeasureSpec> parts);

  bool is_discrete() const { return kind == Kind::Discrete; }
  // Flattens to an atom list when the measure is finitely supported.
  bool finitely_supported() const;
  DiscreteMeasure flatten() const;  // requires finitely_supported()
};

// One draw from the measure, consuming the generator sequentially.  A
// fixed (seed, stream) pair therefore reproduces the same sequence of
// points regardless of how calls are batched across workers.
Vec draw_point(const MeasureSpec& mu, CounterRng& rng);

// n draws as columns, from stream `stream` of `seed`.
Mat sample(const MeasureSpec& mu, int n, std::uint64_t seed,
           std::uint64_t stream = 0);

// First and second moments, with the structural flags the optimality
// theory keys on: balanced (mean zero), isotropic (second moment matrix
// proportional to I), unit second moment (trace 1).
struct MomentReport {
  Vec mean;
  Mat second_moment;
  double trace = 0.0;
  bool balanced = false;
  bool isotropic = false;
  bool unit_second_moment = false;
  double tol = 0.0;
};
MomentReport moments(const DiscreteMeasure& mu, double tol = 1e-9);
// Monte-Carlo variant for sampled specs; flags use a 5/sqrt(n) tolerance.
MomentReport moments_sampled(const MeasureSpec& mu, int n, std::uint64_t seed);

// Radial projection to the sphere that preserves squared-volume energies:
// each atom x with mass w becomes x/|x| with mass w |x|^2.  Requires unit
// second moment (within tol) so the result is again a probability measure;
// atoms at the origin are rejected.
DiscreteMeasure project_pi(const DiscreteMeasure& mu, double tol = 1e-9);

// Affine lift R^d -> R^{d+1},
//   psi(x) = (sqrt(d/(d+1)) x, 1/sqrt(d+1)),
// which maps S^{d-1} into S^d and turns simplex volumes into parallelepiped
// volumes up to the constant (d!)^2 d^d / (d+1)^{d+1}.
Vec lift_psi_point(const Vec& x);
DiscreteMeasure lift_psi(const DiscreteMeasure& mu);

// Reference measures: "sigma" (uniform on S^{d-1}), "orthonormal_basis"
// ("onb"), "regular_simplex" ("simplex"), "antipodal_pair" ("pair"),
// "cross_polytope" ("cross").  All discrete ones have equal weights.
MeasureSpec make_named_measure(const std::string& name, int d);

// Vertices of the regular simplex inscribed in S^{d-1} (d+1 unit vectors,
// pairwise inner product -1/d), found by factoring the target Gram matrix
// (1 + 1/d) I - (1/d) J through its eigendecomposition (rank d).
Mat regular_simplex_vertices(int d);

}  // namespace sphere_energy
