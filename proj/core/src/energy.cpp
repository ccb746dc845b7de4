#include "sphere_energy/energy.hpp"

#include <algorithm>
#include <cmath>

#include "sphere_energy/parallel.hpp"
#include "sphere_energy/rng.hpp"

namespace sphere_energy {

double falling_factorial(long long n, int k) {
  require(k >= 0, "falling_factorial: negative k");
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= static_cast<double>(n - i);
  return f;
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Iterate over non-decreasing index tuples (multisets); fn receives the
// tuple and the number of distinct orderings it represents.
void for_each_multiset(int n, int k,
                       const std::function<void(const std::vector<int>&, double)>& fn) {
  std::vector<int> idx(k, 0);
  const double kfac = factorial(k);
  for (;;) {
    // multiplicity = k! / prod (run lengths)!
    double denom = 1.0;
    int run = 1;
    for (int s = 1; s < k; ++s) {
      if (idx[s] == idx[s - 1]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    denom *= factorial(run);
    fn(idx, kfac / denom);
    int s = k - 1;
    while (s >= 0 && idx[s] == n - 1) --s;
    if (s < 0) return;
    const int v = idx[s] + 1;
    for (int j = s; j < k; ++j) idx[j] = v;
  }
}

// Iterate over all ordered tuples, optionally skipping any with repeats.
void for_each_tuple(int n, int k, bool distinct,
                    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k, 0);
  for (;;) {
    bool ok = true;
    if (distinct)
      for (int a = 0; a < k && ok; ++a)
        for (int b = a + 1; b < k; ++b)
          if (idx[a] == idx[b]) {
            ok = false;
            break;
          }
    if (ok) fn(idx);
    int s = k - 1;
    while (s >= 0 && ++idx[s] == n) idx[s--] = 0;
    if (s < 0) return;
  }
}

void gather(const Mat& points, const std::vector<int>& idx, Mat& tuple) {
  for (std::size_t s = 0; s < idx.size(); ++s) tuple.col(s) = points.col(idx[s]);
}

}  // namespace

EnergyEstimate discrete_energy(const MultiKernel& kernel, const Mat& points,
                               bool distinct_only) {
  const int N = static_cast<int>(points.cols());
  const int k = kernel.arity();
  require(points.rows() == kernel.dim(), "discrete_energy: dimension mismatch");
  require(N >= 1, "discrete_energy: empty configuration");
  const bool distinct = distinct_only || kernel.flags().singular;
  require(!distinct || N >= k,
          "discrete_energy: distinct-tuples mode needs at least k points");

  Mat tuple(points.rows(), k);
  double acc = 0.0;
  if (kernel.flags().symmetric_all) {
    // One evaluation per multiset, weighted by how many ordered tuples it
    // stands for.  In distinct mode only strictly increasing tuples count
    // (multiplicity k!), which for_each_multiset reports as weight k!.
    for_each_multiset(N, k, [&](const std::vector<int>& idx, double mult) {
      if (distinct) {
        for (std::size_t s = 1; s < idx.size(); ++s)
          if (idx[s] == idx[s - 1]) return;
      }
      gather(points, idx, tuple);
      acc += mult * kernel(tuple);
    });
  } else {
    for_each_tuple(N, k, distinct, [&](const std::vector<int>& idx) {
      gather(points, idx, tuple);
      acc += kernel(tuple);
    });
  }

  const double denom = distinct ? falling_factorial(N, k)
                                : std::pow(static_cast<double>(N), k);
  EnergyEstimate est;
  est.value = acc / denom;
  est.std_error = 0.0;
  // tuples the mean ranges over, independent of the evaluation strategy
  est.samples = std::llround(denom);
  est.exact = true;
  return est;
}

EnergyEstimate discrete_energy(const MultiKernel& kernel,
                               const PointConfig& config, bool distinct_only) {
  return discrete_energy(kernel, config.matrix(), distinct_only);
}

namespace {

EnergyEstimate exact_measure_energy(const MultiKernel& kernel,
                                    const DiscreteMeasure& mu) {
  const int k = kernel.arity();
  const int n = mu.size();
  Mat tuple(mu.dim(), k);
  double acc = 0.0;
  if (kernel.flags().symmetric_all) {
    for_each_multiset(n, k, [&](const std::vector<int>& idx, double mult) {
      double w = 1.0;
      for (int s = 0; s < k; ++s) w *= mu.weights[idx[s]];
      gather(mu.atoms, idx, tuple);
      acc += mult * w * kernel(tuple);
    });
  } else {
    for_each_tuple(n, k, false, [&](const std::vector<int>& idx) {
      double w = 1.0;
      for (int s = 0; s < k; ++s) w *= mu.weights[idx[s]];
      gather(mu.atoms, idx, tuple);
      acc += w * kernel(tuple);
    });
  }
  EnergyEstimate est;
  est.value = acc;
  est.std_error = 0.0;
  est.samples = std::llround(std::pow(static_cast<double>(n), k));
  est.exact = true;
  return est;
}

}  // namespace

EnergyEstimate energy_integral(const MultiKernel& kernel, const MeasureSpec& mu,
                               long long mc_samples, std::uint64_t seed) {
  require(kernel.dim() == mu.dim, "energy_integral: dimension mismatch");
  if (mu.kind == MeasureSpec::Kind::Discrete)
    return exact_measure_energy(kernel, mu.discrete);

  require(mc_samples >= 1000,
          "energy_integral: fewer than 10^3 MC samples is statistically "
          "meaningless here");
  const int k = kernel.arity();
  const int n_batches = 32;
  const long long per_batch = (mc_samples + n_batches - 1) / n_batches;
  std::vector<double> batch_mean(n_batches, 0.0);

  parallel_chunks(n_batches, 0, [&](int b) {
    CounterRng rng(seed, CounterRng::derive_stream(0x3AC4ull, b));
    Mat tuple(mu.dim, k);
    double acc = 0.0;
    for (long long i = 0; i < per_batch; ++i) {
      for (int s = 0; s < k; ++s) tuple.col(s) = draw_point(mu, rng);
      acc += kernel(tuple);
    }
    batch_mean[b] = acc / static_cast<double>(per_batch);
  });

  double mean = 0.0;
  for (double m : batch_mean) mean += m;
  mean /= n_batches;
  double var = 0.0;
  for (double m : batch_mean) var += (m - mean) * (m - mean);
  var /= (n_batches - 1);

  EnergyEstimate est;
  est.value = mean;
  est.std_error = std::sqrt(var / n_batches);
  est.samples = per_batch * n_batches;
  est.exact = false;
  return est;
}

double closed_form_max(ClosedForm which, int d, int k) {
  require(d >= 1, "closed_form_max: bad dimension");
  switch (which) {
    case ClosedForm::V2Max:
      require(k >= 2 && k <= d, "closed_form_max: V2 needs 2 <= k <= d");
      return factorial(k) / std::pow(static_cast<double>(d), k) * binom(d, k);
    case ClosedForm::A2Max:
      require(k >= 2 && k <= d + 1, "closed_form_max: A2 needs 2 <= k <= d+1");
      return static_cast<double>(k) /
             (factorial(k - 1) * std::pow(static_cast<double>(d), k - 1)) *
             binom(d, k - 1);
    case ClosedForm::FrameMin:
      require(k == 2, "closed_form_max: the frame energy is a two-point energy");
      return 1.0 / d;
  }
  throw invalid_input("closed_form_max: unknown closed form");
}

double jensen_bound(double B_sigma, int k, long long N,
                    const std::function<double(double)>& f) {
  require(k >= 1, "jensen_bound: bad arity");
  require(N >= k, "jensen_bound: need N >= k points");
  require(static_cast<bool>(f), "jensen_bound: missing transform");
  const double falling = falling_factorial(N, k);
  const double nk = std::pow(static_cast<double>(N), k);
  return falling / nk * f(nk * B_sigma / falling);
}

std::vector<PhaseEntry> two_input_phase_report(
    char kind, double s, int d,
    const std::vector<std::pair<std::string, MeasureSpec>>& candidates,
    long long mc_samples, std::uint64_t seed, bool include_sigma) {
  require(kind == 'A' || kind == 'V', "two_input_phase_report: kind is 'A' or 'V'");
  require(s > 0.0, "two_input_phase_report: s must be positive");
  const MultiKernel kernel =
      (kind == 'A') ? kernel_A_pow(2, d, s) : kernel_V_pow(2, d, s);
  std::vector<PhaseEntry> out;
  auto add = [&](const std::string& label, const MeasureSpec& mu) {
    require(mu.dim == d, "two_input_phase_report: candidate dimension mismatch");
    out.push_back({label, energy_integral(kernel, mu, mc_samples, seed)});
  };
  if (include_sigma) add("sigma", MeasureSpec::sphere(d));
  for (const auto& [label, mu] : candidates) add(label, mu);
  std::stable_sort(out.begin(), out.end(), [](const PhaseEntry& a, const PhaseEntry& b) {
    return a.estimate.value > b.estimate.value;
  });
  return out;
}

}  // namespace sphere_energy
