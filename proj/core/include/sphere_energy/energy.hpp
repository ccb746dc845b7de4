#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sphere_energy/kernels.hpp"
#include "sphere_energy/measures.hpp"

namespace sphere_energy {

struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;     // 0 for exact evaluations
  long long samples = 0;      // tuples the mean ranges over, or MC draws used
  bool exact = true;
};

double falling_factorial(long long n, int k);

// Empirical energy of a point configuration: the kernel mean over all N^k
// ordered k-tuples, or over pairwise-distinct tuples (denominator
// N(N-1)...(N-k+1)) when distinct_only is set.  Singular kernels force
// distinct mode, as the coincident tuples would contribute +inf.  Fully
// symmetric kernels are evaluated once per multiset with the multinomial
// multiplicity.
EnergyEstimate discrete_energy(const MultiKernel& kernel, const Mat& points,
                               bool distinct_only = false);
EnergyEstimate discrete_energy(const MultiKernel& kernel,
                               const PointConfig& config,
                               bool distinct_only = false);

// Energy integral I_K(mu): exact weighted sum over atom tuples for finitely
// supported measures; otherwise Monte Carlo with i.i.d. k-tuples in 32
// equal batches (value = mean of batch means, error = their standard
// error).  Batches draw from derived streams keyed by batch index, so the
// estimate is identical for any worker count.  mc_samples below 10^3 is
// rejected as statistically meaningless.
EnergyEstimate energy_integral(const MultiKernel& kernel, const MeasureSpec& mu,
                               long long mc_samples = 100000,
                               std::uint64_t seed = 0);

// Closed-form extremal values of the squared-volume energies over
// probability measures on S^{d-1}:
//   V2Max      max I_{V^2} = k!/d^k binom(d,k),        2 <= k <= d
//   A2Max      max I_{A^2} = k/((k-1)! d^{k-1}) binom(d,k-1),  2 <= k <= d+1
//   FrameMin   min I_{<x,y>^2} = 1/d                   (k = 2)
enum class ClosedForm { V2Max, A2Max, FrameMin };
double closed_form_max(ClosedForm which, int d, int k);

// Upper bound for discrete energies of N points from the measure-level
// value B = I_B(sigma) and a concave increasing f:
//   max E_{f o B} <= (N)_k / N^k * f(N^k B / (N)_k).
// With f = identity the prefactors cancel and the bound is B itself.
double jensen_bound(double B_sigma, int k, long long N,
                    const std::function<double(double)>& f);

// Two-point energy table for the phase-transition experiments: evaluates
// I_{A^s} or I_{V^s} (kind 'A'/'V') for each labeled candidate measure and
// for sigma, exactly where finitely supported and by MC otherwise.
// Entries come back sorted by decreasing value.
struct PhaseEntry {
  std::string label;
  EnergyEstimate estimate;
};
std::vector<PhaseEntry> two_input_phase_report(
    char kind, double s, int d,
    const std::vector<std::pair<std::string, MeasureSpec>>& candidates,
    long long mc_samples = 200000, std::uint64_t seed = 0,
    bool include_sigma = true);

}  // namespace sphere_energy
