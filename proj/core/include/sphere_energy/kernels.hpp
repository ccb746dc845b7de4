#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sphere_energy/geom.hpp"

namespace sphere_energy {

struct KernelFlags {
  bool symmetric_all = false;        // invariant under every input permutation
  bool symmetric_first_two = false;  // invariant under swapping inputs 1 and 2
  bool rotation_invariant = false;   // depends on inner products only
  bool spherical_only = false;       // defined only for unit vectors
  bool singular = false;             // may be +inf on coincident points;
                                     // energies must skip coincident tuples
  bool vanishes_on_repeats = false;  // identically 0 whenever two inputs
                                     // coincide (volume-type kernels); lets
                                     // energy gradients skip repeated-index
                                     // tuples, whose contribution is the
                                     // zero function even where the kernel
                                     // itself is not differentiable (s < 2)
};

// A k-point kernel on R^d (or on the sphere when spherical_only).  The
// evaluator receives the tuple as the columns of a d x k matrix.  An
// analytic gradient is optional; gradient() falls back to central finite
// differences (h = 1e-5) when none is attached.  For spherical_only
// kernels the fallback differentiates K(x/|x|), whose tangential part
// agrees with the restriction of K to the sphere, so projected gradients
// are correct either way.
class MultiKernel {
 public:
  using Eval = std::function<double(const Mat&)>;
  using Grad = std::function<Mat(const Mat&)>;  // returns d x k

  MultiKernel() = default;
  MultiKernel(std::string name, int arity, int dim, KernelFlags flags,
              Eval eval, Grad grad = nullptr);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  int dim() const { return dim_; }
  const KernelFlags& flags() const { return flags_; }
  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }

  double operator()(const Mat& pts) const;
  Mat gradient(const Mat& pts) const;

 private:
  std::string name_;
  int arity_ = 0;
  int dim_ = 0;
  KernelFlags flags_;
  Eval eval_;
  Grad grad_;
};

// V^s: s-th power of the k-dimensional parallelepiped volume spanned by
// the tuple.  Needs k <= d for a nonzero kernel and s > 0; nonpositive s
// describes singular energies and must be ordered explicitly with
// allow_singular (the kernel is then +inf on degenerate tuples).
MultiKernel kernel_V_pow(int k, int d, double s, bool allow_singular = false);

// A^s: s-th power of the (k-1)-dimensional simplex volume with the tuple
// as vertices (k = 2 gives the plain distance |x - y|^s).
MultiKernel kernel_A_pow(int k, int d, double s, bool allow_singular = false);

// Frame potential <x,y>^2 (two-point kernel; minimized rather than
// maximized over the sphere).
MultiKernel kernel_frame(int d);

// Pointwise algebra.  Flags combine conservatively: symmetry and rotation
// invariance survive only if both operands have them, spherical_only and
// singular are contagious.
MultiKernel kernel_sum(const MultiKernel& a, const MultiKernel& b);
MultiKernel kernel_product(const MultiKernel& a, const MultiKernel& b);
MultiKernel kernel_scale(const MultiKernel& a, double c);
MultiKernel kernel_add_constant(const MultiKernel& a, double c);

// Average of base(x_1, x_2, x_{p(3)}, ..., x_{p(k)}) over a supplied set
// of permutations p of the tail positions {3..n} (0-based: {2..n-1}).
// Each permutation must list all n-2 tail positions; the base kernel uses
// the first k-2 of them.  Base must be symmetric in its first two inputs.
// This is how a k-point kernel that is positive definite in (x_1, x_2)
// becomes an n-point kernel with the same energy bounds.
MultiKernel lift_kernel(const MultiKernel& base, int n,
                        const std::vector<std::vector<int>>& perms);

// Full symmetrization: average over all arity! input orders.  Cost grows
// factorially; intended for arity <= 8.
MultiKernel symmetrize(const MultiKernel& base);

// Two-point section of a k-point kernel at a frozen tail:
// slice(K, tail)(x, y) = K(x, y, tail).  The section of a kernel that is
// symmetric in its first two inputs is a symmetric two-point kernel, the
// object whose positive-definiteness the sliced-matrix probes test.
struct PotentialSlice {
  MultiKernel two_point;  // arity 2, closes over the tail
  Mat tail;               // d x (k-2)
};
PotentialSlice slice(const MultiKernel& kernel, const Mat& tail);

}  // namespace sphere_energy
