#include "sphere_energy/gegenbauer.hpp"

#include <cmath>

namespace sphere_energy {

namespace {

void check_dm(int d, int m) {
  require(m >= 0, "gegenbauer: negative degree");
  require(d >= 1, "gegenbauer: dimension must be >= 1");
  require(d >= 2 || m <= 1, "gegenbauer: d = 1 defines only degrees 0 and 1");
}

}  // namespace

double gegenbauer(int d, int m, double t) {
  check_dm(d, m);
  if (m == 0) return 1.0;
  if (m == 1) return t;
  double pm2 = 1.0, pm1 = t, p = t;
  for (int j = 2; j <= m; ++j) {
    p = ((2 * j + d - 4) * t * pm1 - (j - 1) * pm2) / (j + d - 3);
    pm2 = pm1;
    pm1 = p;
  }
  return p;
}

Vec gegenbauer_all(int d, int M, double t) {
  check_dm(d, M);
  Vec out(M + 1);
  out[0] = 1.0;
  if (M == 0) return out;
  out[1] = t;
  for (int j = 2; j <= M; ++j)
    out[j] = ((2 * j + d - 4) * t * out[j - 1] - (j - 1) * out[j - 2]) / (j + d - 3);
  return out;
}

std::vector<double> gegenbauer_monomial_coeffs(int d, int m) {
  check_dm(d, m);
  std::vector<double> pm2{1.0};
  if (m == 0) return pm2;
  std::vector<double> pm1{0.0, 1.0};
  if (m == 1) return pm1;
  std::vector<double> p;
  for (int j = 2; j <= m; ++j) {
    p.assign(j + 1, 0.0);
    const double a = static_cast<double>(2 * j + d - 4) / (j + d - 3);
    const double b = static_cast<double>(j - 1) / (j + d - 3);
    for (std::size_t i = 0; i < pm1.size(); ++i) p[i + 1] += a * pm1[i];
    for (std::size_t i = 0; i < pm2.size(); ++i) p[i] -= b * pm2[i];
    pm2 = std::move(pm1);
    pm1 = p;
  }
  return pm1;
}

double eval_series(const GegenbauerSeries& series, double t) {
  const int M = static_cast<int>(series.coeffs.size()) - 1;
  if (M < 0) return 0.0;
  return series.coeffs.dot(gegenbauer_all(series.d, M, t));
}

Quadrature gauss_gegenbauer(int d, int n) {
  require(d >= 2, "gauss_gegenbauer: weight is integrable only for d >= 2");
  require(n >= 1, "gauss_gegenbauer: need at least one node");
  // Monic Jacobi recurrence, alpha = beta = (d-3)/2; diagonal is zero by
  // symmetry of the weight.
  Vec diag = Vec::Zero(n);
  Vec sub(n - 1 > 0 ? n - 1 : 0);
  for (int j = 1; j < n; ++j) {
    const double bj = (j == 1)
                          ? 1.0 / d
                          : static_cast<double>(j) * (j + d - 3) /
                                (std::pow(2.0 * j + d - 3, 2) - 1.0);
    sub[j - 1] = std::sqrt(bj);
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, "gauss_gegenbauer: eigensolve failed");

  const double alpha = 0.5 * (d - 3);
  const double mu0 = std::sqrt(M_PI) *
                     std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
  Quadrature q;
  q.nodes = solver.eigenvalues();
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    q.weights[i] = mu0 * v0 * v0;
  }
  return q;
}

namespace {

Vec project(const std::function<double(double)>& f, int d, int M, int nodes) {
  const Quadrature q = gauss_gegenbauer(d, nodes);
  Vec num = Vec::Zero(M + 1);
  Vec den = Vec::Zero(M + 1);
  for (int i = 0; i < q.nodes.size(); ++i) {
    const Vec p = gegenbauer_all(d, M, q.nodes[i]);
    const double fw = f(q.nodes[i]) * q.weights[i];
    num += fw * p;
    den += q.weights[i] * p.cwiseProduct(p);
  }
  return num.cwiseQuotient(den);
}

}  // namespace

GegenbauerExpansion expand_in_gegenbauer(const std::function<double(double)>& f,
                                         int d, int M) {
  require(M >= 0, "expand_in_gegenbauer: negative truncation order");
  const int n0 = 2 * M + 16;
  const Vec coarse = project(f, d, M, n0);
  const Vec fine = project(f, d, M, 2 * n0);
  GegenbauerExpansion out;
  out.series.d = d;
  out.series.coeffs = fine;
  out.max_refinement_delta = (fine - coarse).cwiseAbs().maxCoeff();
  out.converged = out.max_refinement_delta <= 1e-8;
  return out;
}

MaclaurinReport maclaurin_sign_test(char kind, double s, int max_m) {
  require(kind == 'A' || kind == 'V', "maclaurin_sign_test: kind must be 'A' or 'V'");
  require(s > 0.0, "maclaurin_sign_test: s must be positive");
  require(max_m >= 1, "maclaurin_sign_test: need at least one coefficient");
  MaclaurinReport rep;
  rep.kind = kind;
  rep.s = s;
  rep.coeffs.resize(max_m + 1);
  // c_m = (-1)^m binom(s/2, m), built incrementally.
  double binom = 1.0;
  rep.coeffs[0] = 1.0;
  rep.all_nonpositive_from_1 = true;
  for (int m = 1; m <= max_m; ++m) {
    binom *= (0.5 * s - (m - 1)) / m;
    rep.coeffs[m] = (m % 2 == 0) ? binom : -binom;
    if (rep.coeffs[m] > 0.0) rep.all_nonpositive_from_1 = false;
  }
  return rep;
}

PdReport schoenberg_pd_test(const GegenbauerSeries& series, int from_m) {
  require(from_m >= 0, "schoenberg_pd_test: from_m must be >= 0");
  PdReport rep;
  const double scale =
      series.coeffs.size() ? series.coeffs.cwiseAbs().maxCoeff() : 0.0;
  rep.threshold = -1e-10 * scale;
  rep.pd = true;
  for (int m = from_m; m < series.coeffs.size(); ++m) {
    if (series.coeffs[m] < rep.threshold) {
      rep.pd = false;
      rep.offending.push_back(m);
    }
  }
  return rep;
}

}  // namespace sphere_energy
