#include "sphere_energy/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sphere_energy/parallel.hpp"
#include "sphere_energy/rng.hpp"

namespace sphere_energy {

namespace {

void tangent_project(const Mat& points, Mat& grad) {
  for (int j = 0; j < points.cols(); ++j)
    grad.col(j) -= grad.col(j).dot(points.col(j)) * points.col(j);
}

Mat retract(const Mat& points) {
  Mat out = points;
  for (int j = 0; j < out.cols(); ++j) out.col(j).normalize();
  return out;
}

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

}  // namespace

Mat energy_gradient(const MultiKernel& kernel, const Mat& points,
                    bool distinct_only) {
  const int N = static_cast<int>(points.cols());
  const int k = kernel.arity();
  require(points.rows() == kernel.dim(), "energy_gradient: dimension mismatch");
  const bool distinct = distinct_only || kernel.flags().singular;
  // Repeated-index tuples of a kernel that vanishes on repeats contribute
  // the zero function to the energy (all copies of a point move together),
  // so they are skipped -- their per-argument gradients may not even exist
  // for sub-quadratic volume powers.
  const bool skip_repeats = distinct || kernel.flags().vanishes_on_repeats;
  Mat tuple(points.rows(), k);
  Mat grad = Mat::Zero(points.rows(), N);
  for_each_tuple(N, k, skip_repeats, [&](const std::vector<int>& idx) {
    for (int s = 0; s < k; ++s) tuple.col(s) = points.col(idx[s]);
    const Mat g = kernel.gradient(tuple);
    for (int s = 0; s < k; ++s) grad.col(idx[s]) += g.col(s);
  });
  grad /= distinct ? falling_factorial(N, k)
                   : std::pow(static_cast<double>(N), k);
  tangent_project(points, grad);
  return grad;
}

Mat energy_gradient_fd(const MultiKernel& kernel, const Mat& points,
                       bool distinct_only, double h) {
  Mat grad(points.rows(), points.cols());
  Mat work = points;
  auto energy_at = [&](const Mat& p) {
    return discrete_energy(kernel, retract(p), distinct_only).value;
  };
  for (int j = 0; j < points.cols(); ++j)
    for (int r = 0; r < points.rows(); ++r) {
      const double orig = work(r, j);
      work(r, j) = orig + h;
      const double up = energy_at(work);
      work(r, j) = orig - h;
      const double down = energy_at(work);
      work(r, j) = orig;
      grad(r, j) = (up - down) / (2.0 * h);
    }
  tangent_project(points, grad);
  return grad;
}

namespace {

struct SingleRun {
  Mat points;
  RestartOutcome outcome;
  bool degenerate = false;
};

SingleRun ascend_from(const MultiKernel& kernel, Mat X, const AscentConfig& cfg) {
  SingleRun run;
  double E = discrete_energy(kernel, X, cfg.distinct_tuples).value;
  if (!std::isfinite(E)) {
    run.degenerate = true;
    return run;
  }
  int it = 0;
  double gnorm = 0.0;
  for (; it < cfg.max_iters; ++it) {
    const Mat g = energy_gradient(kernel, X, cfg.distinct_tuples);
    if (!g.allFinite()) {
      run.degenerate = true;
      return run;
    }
    gnorm = g.norm();
    if (gnorm <= cfg.grad_tol) {
      run.outcome.converged = true;
      break;
    }
    // Armijo backtracking along the tangent gradient with renormalization.
    double step = cfg.initial_step;
    bool accepted = false;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      const Mat trial = retract(X + step * g);
      const double Et = discrete_energy(kernel, trial, cfg.distinct_tuples).value;
      if (std::isfinite(Et) &&
          Et >= E + cfg.armijo_c * step * gnorm * gnorm) {
        X = trial;
        E = Et;
        accepted = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (!accepted) break;  // no admissible step: stationary to this accuracy
  }
  run.points = std::move(X);
  run.outcome.energy = E;
  run.outcome.iters = it;
  run.outcome.grad_norm = gnorm;
  return run;
}

}  // namespace

AscentResult maximize_discrete(const MultiKernel& kernel, int N, int d,
                               const AscentConfig& cfg) {
  require(N >= 1, "maximize_discrete: need at least one point");
  require(d == kernel.dim(), "maximize_discrete: dimension mismatch");
  require(cfg.restarts >= 1, "maximize_discrete: need at least one restart");
  const bool distinct = cfg.distinct_tuples || kernel.flags().singular;
  require(!distinct || N >= kernel.arity(),
          "maximize_discrete: distinct-tuples mode needs N >= k");

  // Each slot consumes stream ids deterministically: restart r tries
  // streams r, r + restarts, r + 2*restarts, ... until one survives, so
  // the set of outcomes is independent of scheduling.
  const int max_attempts = 3;
  std::vector<SingleRun> runs(cfg.restarts);
  parallel_chunks(cfg.restarts, cfg.workers, [&](int r) {
    SingleRun run;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      const std::uint64_t stream = CounterRng::derive_stream(
          0x09C4ull, static_cast<std::uint64_t>(r) +
                         static_cast<std::uint64_t>(attempt) * cfg.restarts);
      Mat X = sample_sphere(d, N, cfg.seed, stream);
      run = ascend_from(kernel, std::move(X), cfg);
      if (!run.degenerate) {
        runs[r] = std::move(run);
        return;
      }
    }
    runs[r] = std::move(run);  // all attempts degenerate; flagged below
  });

  AscentResult res;
  res.best_energy = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    if (runs[r].degenerate) {
      ++res.degenerate_discarded;
      continue;
    }
    res.restarts.push_back(runs[r].outcome);
    if (runs[r].outcome.energy > res.best_energy) {
      res.best_energy = runs[r].outcome.energy;
      res.best_index = static_cast<int>(res.restarts.size()) - 1;
      res.best = PointConfig(runs[r].points, true);
      res.converged = runs[r].outcome.converged;
    }
  }
  require(res.best_index >= 0,
          "maximize_discrete: every restart hit non-finite values; the "
          "kernel is singular on almost every random configuration");
  return res;
}

CertificateReport local_max_certificate(const MultiKernel& kernel,
                                        const PointConfig& config, int trials,
                                        double radius, std::uint64_t seed,
                                        bool distinct_only) {
  require(trials >= 1, "local_max_certificate: need at least one trial");
  require(radius > 0.0, "local_max_certificate: radius must be positive");
  const Mat& X = config.matrix();
  const double E = discrete_energy(kernel, X, distinct_only).value;
  CertificateReport rep;
  rep.trials = trials;
  rep.radius = radius;
  rep.worst_gain = -std::numeric_limits<double>::infinity();
  CounterRng rng(seed, CounterRng::derive_stream(0xCE27ull, 0));
  for (int trial = 0; trial < trials; ++trial) {
    Mat T(X.rows(), X.cols());
    for (int j = 0; j < T.cols(); ++j)
      for (int r = 0; r < T.rows(); ++r) T(r, j) = rng.next_gaussian();
    tangent_project(X, T);
    const double tn = T.norm();
    if (tn == 0.0) continue;
    const double mag = radius * rng.next_double();  // magnitude in (0, radius]
    const Mat Xp = retract(X + (mag / tn) * T);
    const double Ep = discrete_energy(kernel, Xp, distinct_only).value;
    rep.worst_gain = std::max(rep.worst_gain, Ep - E);
  }
  rep.is_local_max = rep.worst_gain <= 1e-10;
  return rep;
}

PsdProbeReport psd_empirical(const MultiKernel& kernel, int n_points,
                             int n_tails, std::uint64_t seed) {
  const int k = kernel.arity();
  require(k >= 2, "psd_empirical: kernel arity must be >= 2");
  require(n_points >= 2, "psd_empirical: need at least 2 probe points");
  require(kernel.flags().symmetric_first_two || kernel.flags().symmetric_all,
          "psd_empirical: kernel must be symmetric in its first two inputs "
          "for the sliced matrix to be symmetric");
  const int d = kernel.dim();
  if (k == 2) n_tails = 1;  // nothing to freeze
  require(n_tails >= 1, "psd_empirical: need at least one tail");

  const Mat pts = sample_sphere(d, n_points, seed,
                                CounterRng::derive_stream(0xBD57ull, 0));
  double worst = std::numeric_limits<double>::infinity();
  Mat tuple(d, k);
  for (int tail_i = 0; tail_i < n_tails; ++tail_i) {
    if (k > 2)
      tuple.rightCols(k - 2) = sample_sphere(
          d, k - 2, seed, CounterRng::derive_stream(0xBD58ull, tail_i));
    Mat M(n_points, n_points);
    for (int i = 0; i < n_points; ++i)
      for (int j = i; j < n_points; ++j) {
        tuple.col(0) = pts.col(i);
        tuple.col(1) = pts.col(j);
        M(i, j) = M(j, i) = kernel(tuple);
      }
    Eigen::SelfAdjointEigenSolver<Mat> solver(M, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, "psd_empirical: eigensolve failed");
    const double scale = std::max({std::abs(M.trace()),
                                   M.cwiseAbs().maxCoeff(), 1e-30});
    worst = std::min(worst, solver.eigenvalues().minCoeff() / scale);
  }
  PsdProbeReport rep;
  rep.min_eig_normalized = worst;
  rep.consistent = worst >= -1e-8;
  rep.n_points = n_points;
  rep.n_tails = n_tails;
  return rep;
}

double gram_mismatch(const PointConfig& a, const PointConfig& b,
                     bool compare_abs) {
  require(a.size() == b.size(), "gram_mismatch: configurations differ in size");
  auto sorted_entries = [compare_abs](const PointConfig& c) {
    const Mat G = c.matrix().transpose() * c.matrix();
    std::vector<double> vals;
    for (int i = 0; i < G.rows(); ++i)
      for (int j = i + 1; j < G.cols(); ++j)
        vals.push_back(compare_abs ? std::abs(G(i, j)) : G(i, j));
    std::sort(vals.begin(), vals.end());
    return vals;
  };
  const auto va = sorted_entries(a);
  const auto vb = sorted_entries(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i)
    worst = std::max(worst, std::abs(va[i] - vb[i]));
  return worst;
}

}  // namespace sphere_energy
