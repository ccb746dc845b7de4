#include "sphere_energy/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "sphere_energy/measures.hpp"
#include "sphere_energy/parallel.hpp"
#include "sphere_energy/rng.hpp"

namespace sphere_energy {

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_unit(const Mat& pts, const char* who) {
  for (int j = 0; j < pts.cols(); ++j)
    if (std::abs(pts.col(j).squaredNorm() - 1.0) > 1e-9)
      throw invalid_input(std::string(who) + ": inputs must be unit vectors");
}

double q3_factor_checked(int m, int d, double u, double v, double t) {
  if (m == 0) return 1.0;
  // Coefficients of P_m^{d-1}; recomputed per call (cheap for the small m
  // used here, and keeps evaluation state-free).
  const std::vector<double> c = gegenbauer_monomial_coeffs(d - 1, m);
  const double a = t - u * v;
  const double b = (1.0 - u * u) * (1.0 - v * v);
  double acc = 0.0;
  for (int j = m % 2; j <= m; j += 2)
    acc += c[j] * ipow(a, j) * ipow(b, (m - j) / 2);
  return acc;
}

double eval_Y_uvt(const YIndex& idx, int d, double u, double v, double t) {
  return gegenbauer(d + 2 * idx.m, idx.i, u) *
         gegenbauer(d + 2 * idx.m, idx.j, v) *
         q3_factor_checked(idx.m, d, u, v, t);
}

void check_y_index(const YIndex& idx, int d, const char* who) {
  require(idx.m >= 0 && idx.i >= 0 && idx.j >= 0,
          std::string(who) + ": indices must be nonnegative");
  require(d >= 2, std::string(who) + ": dimension must be >= 2");
  require(idx.m == 0 || d >= 3,
          std::string(who) + ": the zonal factor with m >= 1 needs d >= 3");
}

}  // namespace

double q3_factor(int m, int d, double u, double v, double t) {
  require(m >= 0, "q3_factor: negative degree");
  require(m == 0 || d >= 3, "q3_factor: m >= 1 needs d >= 3");
  return q3_factor_checked(m, d, u, v, t);
}

double eval_Y(const YIndex& idx, int d, const Vec& x, const Vec& y, const Vec& z) {
  check_y_index(idx, d, "eval_Y");
  require(x.size() == d && y.size() == d && z.size() == d,
          "eval_Y: dimension mismatch");
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  check_unit(pts, "eval_Y");
  return eval_Y_uvt(idx, d, y.dot(z), x.dot(z), x.dot(y));
}

double eval_S(const YIndex& idx, int d, const Vec& x, const Vec& y, const Vec& z) {
  check_y_index(idx, d, "eval_S");
  require(x.size() == d && y.size() == d && z.size() == d,
          "eval_S: dimension mismatch");
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  check_unit(pts, "eval_S");
  // Reordering the three points permutes the triple (u,v,t); averaging over
  // the 6 orderings is averaging Y over the 6 permutations of that triple.
  const double a = y.dot(z), b = x.dot(z), c = x.dot(y);
  const double perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c},
                              {b, c, a}, {c, a, b}, {c, b, a}};
  double acc = 0.0;
  for (const auto& p : perms) acc += eval_Y_uvt(idx, d, p[0], p[1], p[2]);
  return acc / 6.0;
}

MultiKernel make_S_kernel(const YIndex& idx, int d) {
  check_y_index(idx, d, "make_S_kernel");
  KernelFlags flags;
  flags.symmetric_all = true;
  flags.symmetric_first_two = true;
  flags.rotation_invariant = true;
  flags.spherical_only = true;
  const YIndex copy = idx;
  return MultiKernel(
      "S[m=" + std::to_string(idx.m) + ",i=" + std::to_string(idx.i) +
          ",j=" + std::to_string(idx.j) + "](d=" + std::to_string(d) + ")",
      3, d, flags, [copy, d](const Mat& pts) {
        return eval_S(copy, d, pts.col(0), pts.col(1), pts.col(2));
      });
}

MultiKernel trace_kernel(const std::vector<Mat>& blocks, int d,
                         bool symmetrize) {
  require(d >= 2, "trace_kernel: dimension must be >= 2");
  require(!blocks.empty(), "trace_kernel: no coefficient blocks");
  struct Term {
    YIndex idx;
    double weight;
  };
  std::vector<Term> terms;
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const Mat& A = blocks[m];
    if (A.size() == 0) continue;
    require(A.rows() == A.cols(), "trace_kernel: blocks must be square");
    require(m == 0 || d >= 3, "trace_kernel: blocks with m >= 1 need d >= 3");
    require((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0,
            "trace_kernel: blocks must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> solver(A);
    require(solver.info() == Eigen::Success, "trace_kernel: eigensolve failed");
    const double scale = std::max(A.trace(), 1e-30);
    require(solver.eigenvalues().minCoeff() >= -1e-10 * scale,
            "trace_kernel: block " + std::to_string(m) +
                " is not positive semidefinite");
    if (m == 0) {
      // A constant would shift the energy away from 0 at the uniform
      // measure; the (0,0,0) entry and its border must be absent.
      require(A.row(0).cwiseAbs().maxCoeff() == 0.0 &&
                  A.col(0).cwiseAbs().maxCoeff() == 0.0,
              "trace_kernel: the m = 0 block must have zero first row/column");
    }
    for (int i = 0; i < A.rows(); ++i)
      for (int j = i; j < A.cols(); ++j) {
        const double a = A(i, j);
        if (a == 0.0) continue;
        if (symmetrize || i == j) {
          // S is symmetric in (i,j); fold the two triangle entries together.
          terms.push_back({YIndex{static_cast<int>(m), i, j},
                           (i == j) ? a : 2.0 * a});
        } else {
          // Y is NOT symmetric in (i,j) pointwise (only after the i<->j and
          // u<->v swap happen together), so keep both orderings as terms.
          terms.push_back({YIndex{static_cast<int>(m), i, j}, a});
          terms.push_back({YIndex{static_cast<int>(m), j, i}, a});
        }
      }
  }
  KernelFlags flags;
  flags.symmetric_all = symmetrize;
  flags.symmetric_first_two = true;
  flags.rotation_invariant = true;
  flags.spherical_only = true;
  const std::string name = symmetrize
                               ? "trace_kernel(d=" + std::to_string(d) + ")"
                               : "trace_kernel(d=" + std::to_string(d) +
                                     ",certificate)";
  if (symmetrize)
    return MultiKernel(name, 3, d, flags, [terms, d](const Mat& pts) {
      double acc = 0.0;
      for (const auto& t : terms)
        acc += t.weight * eval_S(t.idx, d, pts.col(0), pts.col(1), pts.col(2));
      return acc;
    });
  return MultiKernel(name, 3, d, flags, [terms, d](const Mat& pts) {
    double acc = 0.0;
    for (const auto& t : terms)
      acc += t.weight * eval_Y(t.idx, d, pts.col(0), pts.col(1), pts.col(2));
    return acc;
  });
}

namespace {

void check_q_args(int k, int l, int d, const char* who) {
  require(k >= 3, std::string(who) + ": need arity k >= 3");
  require(k <= d + 1, std::string(who) + ": need k <= d+1 (tail must fit in R^d)");
  require(l >= 0, std::string(who) + ": negative degree");
  require(k < d + 1 || l <= 1,
          std::string(who) +
              ": k = d+1 leaves a 1-dimensional orthocomplement, so only "
              "l <= 1 exists");
}

}  // namespace

double eval_Q(int k, int l, int d, const Mat& pts) {
  check_q_args(k, l, d, "eval_Q");
  require(pts.rows() == d && pts.cols() == k, "eval_Q: tuple shape mismatch");
  check_unit(pts, "eval_Q");
  if (l == 0) return 1.0;

  const Mat tail = pts.rightCols(k - 2);
  const Mat W = tail.transpose() * tail;
  const double detW = det_dense(W);
  const Mat adjW = adjugate(W);
  const Vec w1 = tail.transpose() * pts.col(0);
  const Vec w2 = tail.transpose() * pts.col(1);
  const double u12 = pts.col(0).dot(pts.col(1));

  // Polynomial expansion of the geometric definition: multiply the
  // projected inner products through by det(W), which turns W^{-1} into
  // the adjugate and leaves a polynomial valid for every tail.
  const double alpha = detW * u12 - w1.dot(adjW * w2);
  const double beta1 = detW - w1.dot(adjW * w1);
  const double beta2 = detW - w2.dot(adjW * w2);

  const std::vector<double> a = gegenbauer_monomial_coeffs(d - k + 2, l);
  double acc = 0.0;
  for (int j = l % 2; j <= l; j += 2)
    acc += a[j] * ipow(alpha, j) * ipow(beta1 * beta2, (l - j) / 2);
  return acc;
}

double eval_Q_geometric(int k, int l, int d, const Mat& pts) {
  check_q_args(k, l, d, "eval_Q_geometric");
  require(pts.rows() == d && pts.cols() == k,
          "eval_Q_geometric: tuple shape mismatch");
  check_unit(pts, "eval_Q_geometric");
  if (l == 0) return 1.0;

  const Mat tail = pts.rightCols(k - 2);
  const Mat W = tail.transpose() * tail;
  Eigen::SelfAdjointEigenSolver<Mat> solver(W);
  require(solver.info() == Eigen::Success, "eval_Q_geometric: eigensolve failed");
  const double lam_min = solver.eigenvalues().minCoeff();
  const double lam_max = solver.eigenvalues().maxCoeff();
  if (!(lam_min > 0.0) || lam_max / lam_min > 1e8)
    throw std::domain_error(
        "eval_Q_geometric: tail is degenerate (condition number above 1e8); "
        "use eval_Q, which handles rank-deficient tails");

  // Components of x_1, x_2 orthogonal to the tail span.
  const Vec y1 = pts.col(0) - tail * W.ldlt().solve(tail.transpose() * pts.col(0));
  const Vec y2 = pts.col(1) - tail * W.ldlt().solve(tail.transpose() * pts.col(1));
  const double n1 = y1.norm();
  const double n2 = y2.norm();
  const double detW = det_dense(W);
  if (n1 * n2 == 0.0) return 0.0;  // x_i in the tail span: Q_l vanishes, l >= 1
  double cosang = y1.dot(y2) / (n1 * n2);
  cosang = std::clamp(cosang, -1.0, 1.0);
  return ipow(detW, l) * ipow(n1, l) * ipow(n2, l) *
         gegenbauer(d - k + 2, l, cosang);
}

MultiKernel make_Q_kernel(int k, int l, int d) {
  check_q_args(k, l, d, "make_Q_kernel");
  KernelFlags flags;
  flags.symmetric_first_two = true;
  flags.rotation_invariant = true;
  flags.spherical_only = true;
  return MultiKernel(
      "Q[k=" + std::to_string(k) + ",l=" + std::to_string(l) +
          "](d=" + std::to_string(d) + ")",
      k, d, flags, [k, l, d](const Mat& pts) { return eval_Q(k, l, d, pts); });
}

MultiKernel g_weighted_kernel(const TailWeight& G, int k, int l, int d,
                              bool rotation_invariant) {
  check_q_args(k, std::max(l, 1), d, "g_weighted_kernel");
  require(static_cast<bool>(G), "g_weighted_kernel: missing weight function");
  KernelFlags flags;
  flags.symmetric_first_two = true;
  flags.rotation_invariant = rotation_invariant;
  flags.spherical_only = true;
  return MultiKernel(
      "G-weighted[k=" + std::to_string(k) + ",l=" + std::to_string(l) +
          "](d=" + std::to_string(d) + ")",
      k, d, flags, [G, k, l, d](const Mat& pts) {
        Mat arg(pts.rows(), k - 1);
        arg.rightCols(k - 2) = pts.rightCols(k - 2);
        arg.col(0) = pts.col(0);
        const double g1 = G(arg);
        arg.col(0) = pts.col(1);
        const double g2 = G(arg);
        const double q = (l == 0) ? 1.0 : eval_Q(k, l, d, pts);
        return g1 * g2 * q;
      });
}

// ---------------------------------------------------------------------------
// Identity registry.
// ---------------------------------------------------------------------------

namespace {

struct TripleVals {
  double u, v, t;  // u = <y,z>, v = <x,z>, t = <x,y>
  double S200, S111, S022, S100;
};

TripleVals s_values(int d, const Vec& x, const Vec& y, const Vec& z) {
  TripleVals tv;
  tv.u = y.dot(z);
  tv.v = x.dot(z);
  tv.t = x.dot(y);
  tv.S200 = eval_S(YIndex{2, 0, 0}, d, x, y, z);
  tv.S111 = eval_S(YIndex{1, 1, 1}, d, x, y, z);
  tv.S022 = eval_S(YIndex{0, 2, 2}, d, x, y, z);
  tv.S100 = eval_S(YIndex{1, 0, 0}, d, x, y, z);
  return tv;
}

double residual_v2(int d, const Vec& x, const Vec& y, const Vec& z) {
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  const double lhs = volume_parallelepiped_sq(pts);
  const TripleVals s = s_values(d, x, y, z);
  const double dd = d;
  const double rhs = (dd - 1) * (dd - 2) / (dd * dd) -
                     (dd - 1) * (dd - 2) / (dd * dd) * s.S022 -
                     4.0 * (dd - 2) / dd * s.S111 -
                     (3 * dd - 4) * (dd - 2) / (dd * (dd - 1)) * s.S200;
  return std::abs(lhs - rhs);
}

double residual_a2(int d, const Vec& x, const Vec& y, const Vec& z) {
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  const double lhs = volume_simplex_sq(pts);
  const TripleVals s = s_values(d, x, y, z);
  const double dd = d;
  const double rhs = 0.25 * (3.0 * (dd - 1) / dd -
                             3.0 * (dd - 2) / (dd - 1) * s.S200 -
                             6.0 * s.S111 - 6.0 * s.S100 -
                             3.0 * (dd - 1) / dd * s.S022);
  return std::abs(lhs - rhs);
}

double residual_sos(int d, const Vec& x, const Vec& y, const Vec& z) {
  const TripleVals s = s_values(d, x, y, z);
  const double dd = d;
  const double lhs = 3.0 * (dd - 2) / (dd - 1) * s.S200 + 6.0 * s.S111 +
                     3.0 * (dd - 1) / dd * s.S022 + 3.0 / dd;
  const double rhs = s.u * s.u + s.v * s.v + s.t * s.t;
  return std::abs(lhs - rhs);
}

double residual_heron(int d, const Vec& x, const Vec& y, const Vec& z) {
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  const double lhs = volume_simplex_sq(pts);
  const double u = y.dot(z), v = x.dot(z), t = x.dot(y);
  const double rhs = 0.75 - (u + v + t) / 2.0 + (u * v + v * t + t * u) / 2.0 -
                     (u * u + v * v + t * t) / 4.0;
  return std::abs(lhs - rhs);
}

double residual_bordered_vs_edge(int d, const Vec& x, const Vec& y, const Vec& z) {
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  return std::abs(volume_simplex_sq(pts) - volume_simplex_sq_edge_form(pts));
}

double residual_q31(int d, const Vec& x, const Vec& y, const Vec& z) {
  Mat pts(d, 3);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.col(2) = z;
  const double lhs = eval_Q(3, 1, d, pts);
  const double rhs = x.dot(y) - x.dot(z) * y.dot(z);
  return std::abs(lhs - rhs);
}

double residual_q41(int d, const Mat& pts) {
  const double lhs = eval_Q(4, 1, d, pts);
  const double u12 = pts.col(0).dot(pts.col(1));
  const double u13 = pts.col(0).dot(pts.col(2));
  const double u14 = pts.col(0).dot(pts.col(3));
  const double u23 = pts.col(1).dot(pts.col(2));
  const double u24 = pts.col(1).dot(pts.col(3));
  const double u34 = pts.col(2).dot(pts.col(3));
  const double rhs = u12 - u12 * u34 * u34 - u13 * u23 - u14 * u24 +
                     u13 * u24 * u34 + u14 * u23 * u34;
  return std::abs(lhs - rhs);
}

// Energy of a fully symmetric k-point evaluator that vanishes on tuples
// with a repeated atom (true of both volume kernels below): only the
// distinct-atom subsets contribute, each k! times by symmetry.  Local so
// the registry does not pull in the energy module.
double tiny_energy(int k, const Mat& atoms, const Vec& weights,
                   const std::function<double(const Mat&)>& f) {
  const int n = static_cast<int>(atoms.cols());
  if (k > n) return 0.0;
  std::vector<int> idx(k);
  for (int s = 0; s < k; ++s) idx[s] = s;
  Mat tuple(atoms.rows(), k);
  double acc = 0.0;
  for (;;) {
    double w = 1.0;
    for (int s = 0; s < k; ++s) {
      tuple.col(s) = atoms.col(idx[s]);
      w *= weights[idx[s]];
    }
    acc += w * f(tuple);
    int s = k - 1;
    while (s >= 0 && ++idx[s] == n - (k - 1 - s)) --s;
    if (s < 0) break;
    for (int r = s + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  return factorial(k) * acc;
}

double residual_a_to_v(int d, std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t index) {
  // Random spherical measure with random weights; enough atoms that
  // (d+1)-tuples of distinct atoms exist in every dimension.
  const int n_atoms = std::max(5, d + 2);
  CounterRng rng(seed, CounterRng::derive_stream(stream, 0xA70Bull));
  rng.set_counter(index * 1024);
  Mat atoms(d, n_atoms);
  for (int j = 0; j < n_atoms; ++j) {
    Vec p(d);
    for (int r = 0; r < d; ++r) p[r] = rng.next_gaussian();
    atoms.col(j) = p.normalized();
  }
  Vec w(n_atoms);
  for (int j = 0; j < n_atoms; ++j) w[j] = rng.next_double();
  w /= w.sum();
  const DiscreteMeasure mu{atoms, w};
  const DiscreteMeasure lifted = lift_psi(mu);

  const int k = d + 1;
  const double lhs = tiny_energy(k, lifted.atoms, lifted.weights, [](const Mat& t) {
    return volume_parallelepiped_sq(t);
  });
  const double rhs_energy = tiny_energy(k, mu.atoms, mu.weights, [](const Mat& t) {
    return volume_simplex_sq(t);
  });
  const double fac = factorial(d);
  const double c = fac * fac * std::pow(static_cast<double>(d), d) /
                   std::pow(static_cast<double>(d) + 1.0, d + 1);
  const double rhs = c * rhs_energy;
  const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  return std::abs(lhs - rhs) / denom;
}

}  // namespace

std::vector<std::string> identity_names() {
  return {"v2_decomposition", "a2_decomposition", "sum_of_squares_identity",
          "heron",            "bordered_vs_edge", "q31_explicit",
          "q41_explicit",     "a_to_v_lift"};
}

IdentityReport identity_check(const std::string& name, int d, int trials,
                              std::uint64_t seed) {
  require(trials >= 1, "identity_check: need at least one trial");

  int min_d = 2;
  int tuple_size = 3;
  std::function<double(const Mat&)> tuple_residual;
  bool self_sampling = false;

  if (name == "v2_decomposition") {
    min_d = 3;
    tuple_residual = [d](const Mat& p) {
      return residual_v2(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "a2_decomposition") {
    min_d = 3;
    tuple_residual = [d](const Mat& p) {
      return residual_a2(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "sum_of_squares_identity") {
    min_d = 3;
    tuple_residual = [d](const Mat& p) {
      return residual_sos(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "heron") {
    tuple_residual = [d](const Mat& p) {
      return residual_heron(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "bordered_vs_edge") {
    tuple_residual = [d](const Mat& p) {
      return residual_bordered_vs_edge(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "q31_explicit") {
    tuple_residual = [d](const Mat& p) {
      return residual_q31(d, p.col(0), p.col(1), p.col(2));
    };
  } else if (name == "q41_explicit") {
    min_d = 3;
    tuple_size = 4;
    tuple_residual = [d](const Mat& p) { return residual_q41(d, p); };
  } else if (name == "a_to_v_lift") {
    min_d = 1;
    self_sampling = true;
  } else {
    throw invalid_input("identity_check: unknown identity '" + name + "'");
  }
  require(d >= min_d, "identity_check: '" + name + "' needs d >= " +
                          std::to_string(min_d));

  // Fixed chunk decomposition; each chunk owns a derived stream, so the
  // result is independent of the worker count.
  const int n_chunks = 32;
  std::vector<double> chunk_max(n_chunks, 0.0);
  parallel_chunks(n_chunks, 0, [&](int chunk) {
    const int lo = static_cast<int>(static_cast<long long>(trials) * chunk / n_chunks);
    const int hi =
        static_cast<int>(static_cast<long long>(trials) * (chunk + 1) / n_chunks);
    const std::uint64_t stream = CounterRng::derive_stream(0x1DE27ull, chunk);
    double worst = 0.0;
    if (self_sampling) {
      for (int i = lo; i < hi; ++i)
        worst = std::max(worst, residual_a_to_v(d, seed, stream, i - lo));
    } else {
      for (int i = lo; i < hi; ++i) {
        Mat pts(d, tuple_size);
        for (int j = 0; j < tuple_size; ++j)
          pts.col(j) = sphere_point(
              d, seed, stream,
              static_cast<std::uint64_t>(i - lo) * tuple_size + j);
        worst = std::max(worst, tuple_residual(pts));
      }
    }
    chunk_max[chunk] = worst;
  });

  IdentityReport rep;
  rep.name = name;
  rep.d = d;
  rep.trials = trials;
  rep.max_residual = *std::max_element(chunk_max.begin(), chunk_max.end());
  rep.tol = 1e-10;
  rep.pass = rep.max_residual <= rep.tol;
  return rep;
}

}  // namespace sphere_energy
