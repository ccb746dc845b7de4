#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphere_energy/gegenbauer.hpp"
#include "sphere_energy/kernels.hpp"

namespace sphere_energy {

// ---------------------------------------------------------------------------
// Three-input matrix kernels.
//
// For unit vectors x, y, z write u = <y,z>, v = <x,z>, t = <x,y>.  The entry
// (i,j) of the degree-m matrix kernel is
//   Y_{m,i,j}^d(x,y,z) = P_i^{d+2m}(u) P_j^{d+2m}(v) Q_m^d(u,v,t),
// where Q_m^d is the zonal factor below, and S_{m,i,j} is the average of Y
// over all 6 orderings of (x,y,z).  These are the building blocks of
// three-point semidefinite bounds: integrated against any measure, the
// matrices [I_{S_m}]_{ij} are positive semidefinite, and they vanish
// identically at the uniform measure except for (m,i,j) = (0,0,0).
// ---------------------------------------------------------------------------

struct YIndex {
  int m = 0;
  int i = 0;
  int j = 0;
};

// Zonal factor; a polynomial in (u,v,t).  With P_m^{d-1}(w) = sum_j c_j w^j
// (only j of the parity of m appear),
//   Q_m^d(u,v,t) = sum_j c_j (t - uv)^j ((1-u^2)(1-v^2))^{(m-j)/2},
// e.g. Q_0 = 1, Q_1 = t - uv, Q_2 = ((d-1)(t-uv)^2 - (1-u^2)(1-v^2))/(d-2).
// m >= 1 requires d >= 3.
double q3_factor(int m, int d, double u, double v, double t);

double eval_Y(const YIndex& idx, int d, const Vec& x, const Vec& y, const Vec& z);
double eval_S(const YIndex& idx, int d, const Vec& x, const Vec& y, const Vec& z);

// S_{m,i,j} packaged as a three-point kernel (fully symmetric, zonal,
// sphere-only).
MultiKernel make_S_kernel(const YIndex& idx, int d);

// Trace construction, blocks[m] = A_m.  Every A_m must be symmetric PSD
// (eigenvalue >= -1e-10 * trace scale); A_0 must have zero first row and
// column so no constant term sneaks in.  Empty matrices skip that m.
//
// symmetrize = true (default): K = sum_m Tr(S_m^d(x,y,z) A_m), invariant
// under all six argument orderings -- the energy object.  Its integral
// satisfies I_K(mu) >= 0 with equality at the uniform measure, which is
// how certifying kernels for energy maxima are assembled.
//
// symmetrize = false: K = sum_m Tr(Y_m^d(x,y,z) A_m), symmetric only in
// the first two arguments.  This is the form whose one-variable slices
// K(.,.,z restricted) are genuinely positive definite: each slice is a
// Schur product of a Gram matrix with a PSD zonal matrix.  Averaging it
// over the six orderings recovers the symmetrize = true kernel, but that
// average generally destroys slice positivity (-V^2 and -A^2 are the
// canonical examples), so positivity probes must use this form.
MultiKernel trace_kernel(const std::vector<Mat>& blocks, int d,
                         bool symmetrize = true);

// ---------------------------------------------------------------------------
// k-input kernels Q_{k,l}^d.
//
// Geometrically: project x_1 and x_2 onto the orthocomplement of
// span(x_3..x_k), call the images y_1, y_2; then
//   Q_{k,l} = det(W)^l |y_1|^l |y_2|^l P_l^{d-k+2}(<y_1,y_2>/(|y_1||y_2|))
// with W the Gram matrix of the tail.  eval_Q evaluates the equivalent
// polynomial form obtained by expanding P_l and clearing the inverse of W
// through its adjugate -- polynomial in the inner products, hence defined
// for every tail; eval_Q_geometric is the independent oracle and refuses
// ill-conditioned tails (condition number above 1e8).
// ---------------------------------------------------------------------------

double eval_Q(int k, int l, int d, const Mat& pts);
double eval_Q_geometric(int k, int l, int d, const Mat& pts);
MultiKernel make_Q_kernel(int k, int l, int d);

// G-weighted family: T(x_1..x_k) = G(x_1; tail) G(x_2; tail) Q_{k,l}.
// G receives a d x (k-1) matrix (the point of interest first, then the
// tail).  For l = 0 this degenerates to G G with no Q factor; such kernels
// annihilate sigma only if G itself has sigma-mean zero in its first
// argument, which is the caller's responsibility.  Set rotation_invariant
// to false if G is not a function of inner products alone.
using TailWeight = std::function<double(const Mat&)>;
MultiKernel g_weighted_kernel(const TailWeight& G, int k, int l, int d,
                              bool rotation_invariant = true);

// ---------------------------------------------------------------------------
// Identity registry.  Each named identity is checked at `trials` random
// spherical tuples; the maximum absolute residual is returned (relative
// for the energy identity a_to_v_lift).  Registered names:
//   v2_decomposition      V^2 as a constant minus a trace kernel   (d >= 3)
//   a2_decomposition      A^2 likewise                             (d >= 3)
//   sum_of_squares_identity  weighted S-sum == u^2+v^2+t^2         (d >= 3)
//   heron                 bordered A^2 == Heron polynomial          (d >= 2)
//   bordered_vs_edge      bordered vs edge-Gram simplex volume      (d >= 2)
//   q31_explicit          Q_{3,1} == u12 - u13 u23                  (d >= 2)
//   q41_explicit          Q_{4,1} == 6-term inner-product polynomial (d >= 3)
//   a_to_v_lift           I_{V^2}(psi_* mu) == c_d I_{A^2}(mu)      (d >= 1)
// ---------------------------------------------------------------------------

struct IdentityReport {
  std::string name;
  int d = 0;
  int trials = 0;
  double max_residual = 0.0;
  double tol = 1e-10;
  bool pass = false;
};

IdentityReport identity_check(const std::string& name, int d, int trials,
                              std::uint64_t seed = 0);
std::vector<std::string> identity_names();

}  // namespace sphere_energy
