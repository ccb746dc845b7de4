#pragma once

#include <cstdint>
#include <vector>

#include "sphere_energy/energy.hpp"

namespace sphere_energy {

// Multistart projected gradient ascent on (S^{d-1})^N for the empirical
// energy E_K.  Ascent direction is the Riemannian gradient (per-point
// tangent projection of the Euclidean gradient), the retraction is column
// renormalization, and steps are chosen by Armijo backtracking, so the
// energy is nondecreasing along every restart.
struct AscentConfig {
  int restarts = 8;
  int max_iters = 500;
  double grad_tol = 1e-9;      // stop when the tangent gradient norm drops below
  double initial_step = 0.1;
  double backtrack = 0.5;      // step shrink factor
  double armijo_c = 1e-4;      // sufficient-increase constant
  int max_backtracks = 60;
  std::uint64_t seed = 0;
  int workers = 0;             // 0 = process default
  bool distinct_tuples = false;
};

struct RestartOutcome {
  double energy = 0.0;
  int iters = 0;
  double grad_norm = 0.0;
  bool converged = false;  // gradient tolerance reached
};

struct AscentResult {
  PointConfig best;
  double best_energy = 0.0;
  int best_index = -1;
  bool converged = false;
  std::vector<RestartOutcome> restarts;
  int degenerate_discarded = 0;  // restarts aborted on non-finite values
};

AscentResult maximize_discrete(const MultiKernel& kernel, int N, int d,
                               const AscentConfig& cfg = {});

// Riemannian gradient of E_K at the configuration (d x N tangent vectors).
// Uses the kernel's analytic gradient when present, its finite-difference
// fallback otherwise.
Mat energy_gradient(const MultiKernel& kernel, const Mat& points,
                    bool distinct_only = false);

// Independent oracle: central finite differences applied to the energy
// itself (perturb each coordinate, renormalize, re-evaluate), then
// projected to the tangent space.  Exists so the analytic path can be
// validated against something it shares no code with.
Mat energy_gradient_fd(const MultiKernel& kernel, const Mat& points,
                       bool distinct_only = false, double h = 1e-5);

// Random tangent perturbations of magnitude <= radius must not increase
// the energy by more than 1e-10 for the point to count as a local maximum.
struct CertificateReport {
  bool is_local_max = false;
  int trials = 0;
  double radius = 0.0;
  double worst_gain = 0.0;  // most positive energy change observed
};
CertificateReport local_max_certificate(const MultiKernel& kernel,
                                        const PointConfig& config, int trials,
                                        double radius, std::uint64_t seed = 0,
                                        bool distinct_only = false);

// Empirical k-positive-definiteness probe: for n_tails random frozen
// tails, build the n_points x n_points matrix M_ij = K(x_i, x_j, tail)
// over random spherical points and record the smallest eigenvalue,
// normalized by max(|trace|, max |entry|) -- the trace alone can vanish
// identically (e.g. kernels that are zero on coincident pairs), which
// would make the ratio meaningless.  Consistent with k-PD means the
// normalized minimum stays above -1e-8.
struct PsdProbeReport {
  double min_eig_normalized = 0.0;
  bool consistent = false;
  int n_points = 0;
  int n_tails = 0;
};
PsdProbeReport psd_empirical(const MultiKernel& kernel, int n_points,
                             int n_tails, std::uint64_t seed = 0);

// Rotation/permutation-blind comparison of two configurations: L-infinity
// distance between sorted off-diagonal Gram entries (absolute values when
// compare_abs, for energies indifferent to sign flips).
double gram_mismatch(const PointConfig& a, const PointConfig& b,
                     bool compare_abs = false);

}  // namespace sphere_energy
