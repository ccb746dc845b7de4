#pragma once

#include <functional>
#include <vector>

#include "sphere_energy/common.hpp"

namespace sphere_energy {

// Gegenbauer (ultraspherical) polynomials P_m^d on [-1,1], normalized so
// P_m^d(1) = 1, orthogonal for the weight (1-t^2)^{(d-3)/2}.  One
// three-term recurrence covers every d >= 2:
//   P_0 = 1,  P_1 = t,
//   (m+d-3) P_m = (2m+d-4) t P_{m-1} - (m-1) P_{m-2},
// which at d = 2 reproduces the Chebyshev polynomials.  For d = 1 only
// m <= 1 is defined (the 0-sphere carries just those two characters).
double gegenbauer(int d, int m, double t);

// All values P_0^d(t) .. P_M^d(t) in one recurrence pass.
Vec gegenbauer_all(int d, int M, double t);

// Monomial coefficients c[0..m] with P_m^d(t) = sum_j c[j] t^j.  The
// recurrence preserves parity, so c[j] = 0 for j != m (mod 2).
std::vector<double> gegenbauer_monomial_coeffs(int d, int m);

// Truncated expansion f ~ sum_m coeffs[m] P_m^d.
struct GegenbauerSeries {
  int d = 3;
  Vec coeffs;
};

double eval_series(const GegenbauerSeries& series, double t);

// Gauss quadrature for the weight (1-t^2)^{(d-3)/2} on [-1,1], computed by
// the Golub-Welsch eigenvalue method from the monic Jacobi recurrence
// (alpha = beta = (d-3)/2):
//   b_1 = 1/d,   b_n = n (n+d-3) / ((2n+d-3)^2 - 1)   (n >= 2),
// total mass mu_0 = sqrt(pi) Gamma((d-1)/2) / Gamma(d/2).  Exact for
// polynomials of degree <= 2n-1.  Recomputed per call; no shared caches.
struct Quadrature {
  Vec nodes;
  Vec weights;
};
Quadrature gauss_gegenbauer(int d, int n);

// Project f onto P_0..P_M by quadrature at 2M+16 nodes, then re-project at
// twice as many nodes.  The refined coefficients are returned; converged
// reports whether refinement moved any coefficient by more than 1e-8.
struct GegenbauerExpansion {
  GegenbauerSeries series;
  bool converged = true;
  double max_refinement_delta = 0.0;
};
GegenbauerExpansion expand_in_gegenbauer(const std::function<double(double)>& f,
                                         int d, int M);

// Sign pattern of the Maclaurin coefficients that drive the two families of
// distance-power kernels:
//   kind 'A': (2-2t)^{s/2} = 2^{s/2} sum_m c_m t^m,
//   kind 'V': (1-t^2)^{s/2} =        sum_m c_m t^{2m},
// in both cases c_m = (-1)^m binom(s/2, m).  For 0 < s < 2 every c_m with
// m >= 1 is strictly negative, which is what makes sigma the unique
// minimizer of those energies; the report records the coefficients and
// whether the pattern holds.
struct MaclaurinReport {
  char kind = 'A';
  double s = 1.0;
  std::vector<double> coeffs;  // c_0 .. c_max_m
  bool all_nonpositive_from_1 = false;
};
MaclaurinReport maclaurin_sign_test(char kind, double s, int max_m = 25);

// Schoenberg-type positive-definiteness test: a series is PD on S^{d-1}
// iff its coefficients are nonnegative.  Coefficients with index >= from_m
// must clear -1e-10 * max|coeff| (from_m = 1 means "PD modulo constants").
struct PdReport {
  bool pd = false;
  std::vector<int> offending;
  double threshold = 0.0;
};
PdReport schoenberg_pd_test(const GegenbauerSeries& series, int from_m = 0);

}  // namespace sphere_energy
