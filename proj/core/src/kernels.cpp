#include "sphere_energy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sphere_energy {

MultiKernel::MultiKernel(std::string name, int arity, int dim, KernelFlags flags,
                         Eval eval, Grad grad)
    : name_(std::move(name)),
      arity_(arity),
      dim_(dim),
      flags_(flags),
      eval_(std::move(eval)),
      grad_(std::move(grad)) {
  require(arity_ >= 1, "MultiKernel: arity must be >= 1");
  require(dim_ >= 1, "MultiKernel: dimension must be >= 1");
  require(static_cast<bool>(eval_), "MultiKernel: missing evaluator");
}

double MultiKernel::operator()(const Mat& pts) const {
  require(static_cast<bool>(eval_), "MultiKernel: empty kernel");
  require(pts.rows() == dim_ && pts.cols() == arity_,
          "MultiKernel: tuple shape mismatch for kernel " + name_);
  return eval_(pts);
}

Mat MultiKernel::gradient(const Mat& pts) const {
  require(pts.rows() == dim_ && pts.cols() == arity_,
          "MultiKernel: tuple shape mismatch for kernel " + name_);
  if (grad_) return grad_(pts);
  // Central finite differences.  Normalize inputs first for kernels that
  // only exist on the sphere (see class comment).
  const double h = 1e-5;
  Mat g(dim_, arity_);
  Mat work = pts;
  auto value = [&](const Mat& m) {
    if (!flags_.spherical_only) return eval_(m);
    Mat unit = m;
    for (int c = 0; c < unit.cols(); ++c) unit.col(c).normalize();
    return eval_(unit);
  };
  for (int c = 0; c < arity_; ++c)
    for (int r = 0; r < dim_; ++r) {
      const double orig = work(r, c);
      work(r, c) = orig + h;
      const double up = value(work);
      work(r, c) = orig - h;
      const double down = value(work);
      work(r, c) = orig;
      g(r, c) = (up - down) / (2.0 * h);
    }
  return g;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// d(vol^2)/dx_p for the parallelepiped: 2 * sum_j adj(U)_{p,j} x_j.
Mat vol_sq_gradient_parallelepiped(const Mat& pts) {
  const GramBundle g = gram(pts);
  return 2.0 * (pts * g.adj);  // column p is 2 * sum_j x_j adj(U)_{j,p}
}

// d(A^2)/dx_p via the bordered determinant: the Gram block of the bordered
// matrix B carries all x-dependence, so
//   d(A^2)/dx_p = -2 / ((k-1)!)^2 * sum_{j<=k} adj(B)_{p,j} x_j.
Mat vol_sq_gradient_simplex(const Mat& pts) {
  const int k = static_cast<int>(pts.cols());
  Mat B(k + 1, k + 1);
  B.topLeftCorner(k, k) = pts.transpose() * pts;
  B.col(k).setOnes();
  B.row(k).setOnes();
  B(k, k) = 0.0;
  const Mat adjB = adjugate(B);
  const double fac = factorial(k - 1);
  return (-2.0 / (fac * fac)) * (pts * adjB.topLeftCorner(k, k));
}

// Chain rule for K = (vol^2)^{s/2}.  At vol = 0 the limit is 0 for s > 2,
// the plain vol^2 gradient at s = 2, and genuinely singular for s < 2
// (NaN lets the optimizer abort that restart instead of stepping on junk).
Mat power_gradient(double s, double vol_sq, const Mat& vol_sq_grad) {
  if (vol_sq > 0.0)
    return 0.5 * s * std::pow(vol_sq, 0.5 * s - 1.0) * vol_sq_grad;
  if (s == 2.0) return vol_sq_grad;
  if (s > 2.0) return Mat::Zero(vol_sq_grad.rows(), vol_sq_grad.cols());
  return Mat::Constant(vol_sq_grad.rows(), vol_sq_grad.cols(), kNan);
}

double power_of_vol_sq(double vol_sq, double s) {
  if (vol_sq > 0.0) return std::pow(vol_sq, 0.5 * s);
  if (s > 0.0) return 0.0;
  return std::numeric_limits<double>::infinity();  // singular kernel at 0
}

std::string format_power_name(char base, int k, int d, double s) {
  std::ostringstream os;
  os << base << "^" << s << "(k=" << k << ",d=" << d << ")";
  return os.str();
}

}  // namespace

MultiKernel kernel_V_pow(int k, int d, double s, bool allow_singular) {
  require(k >= 1 && d >= 1, "kernel_V_pow: bad arity or dimension");
  require(k <= d, "kernel_V_pow: need k <= d (the volume vanishes identically beyond)");
  require(s > 0.0 || allow_singular,
          "kernel_V_pow: s <= 0 needs allow_singular (kernel is +inf on "
          "degenerate tuples)");
  KernelFlags flags;
  flags.symmetric_all = true;
  flags.rotation_invariant = true;
  flags.singular = s <= 0.0;
  flags.vanishes_on_repeats = s > 0.0;
  return MultiKernel(
      format_power_name('V', k, d, s), k, d, flags,
      [s](const Mat& pts) {
        return power_of_vol_sq(volume_parallelepiped_sq(pts), s);
      },
      [s](const Mat& pts) {
        return power_gradient(s, volume_parallelepiped_sq(pts),
                              vol_sq_gradient_parallelepiped(pts));
      });
}

MultiKernel kernel_A_pow(int k, int d, double s, bool allow_singular) {
  require(k >= 2 && d >= 1, "kernel_A_pow: need k >= 2 vertices");
  require(k <= d + 1, "kernel_A_pow: a (k-1)-simplex needs k <= d+1");
  require(s > 0.0 || allow_singular,
          "kernel_A_pow: s <= 0 needs allow_singular (kernel is +inf on "
          "degenerate tuples)");
  KernelFlags flags;
  flags.symmetric_all = true;
  flags.rotation_invariant = true;
  flags.singular = s <= 0.0;
  flags.vanishes_on_repeats = s > 0.0;
  return MultiKernel(
      format_power_name('A', k, d, s), k, d, flags,
      [s](const Mat& pts) { return power_of_vol_sq(volume_simplex_sq(pts), s); },
      [s](const Mat& pts) {
        return power_gradient(s, volume_simplex_sq(pts),
                              vol_sq_gradient_simplex(pts));
      });
}

MultiKernel kernel_frame(int d) {
  require(d >= 1, "kernel_frame: bad dimension");
  KernelFlags flags;
  flags.symmetric_all = true;
  flags.rotation_invariant = true;
  return MultiKernel(
      "frame(d=" + std::to_string(d) + ")", 2, d, flags,
      [](const Mat& pts) {
        const double ip = pts.col(0).dot(pts.col(1));
        return ip * ip;
      },
      [](const Mat& pts) {
        const double ip = pts.col(0).dot(pts.col(1));
        Mat g(pts.rows(), 2);
        g.col(0) = 2.0 * ip * pts.col(1);
        g.col(1) = 2.0 * ip * pts.col(0);
        return g;
      });
}

namespace {

KernelFlags combine_flags(const KernelFlags& a, const KernelFlags& b) {
  KernelFlags f;
  f.symmetric_all = a.symmetric_all && b.symmetric_all;
  f.symmetric_first_two = (a.symmetric_first_two || a.symmetric_all) &&
                          (b.symmetric_first_two || b.symmetric_all);
  f.rotation_invariant = a.rotation_invariant && b.rotation_invariant;
  f.spherical_only = a.spherical_only || b.spherical_only;
  f.singular = a.singular || b.singular;
  // A sum vanishes on repeats only if both terms do; callers adjust for
  // products, where one vanishing factor suffices.
  f.vanishes_on_repeats = a.vanishes_on_repeats && b.vanishes_on_repeats;
  return f;
}

void check_same_shape(const MultiKernel& a, const MultiKernel& b,
                      const char* op) {
  require(a.arity() == b.arity() && a.dim() == b.dim(),
          std::string(op) + ": kernels must share arity and dimension");
}

}  // namespace

MultiKernel kernel_sum(const MultiKernel& a, const MultiKernel& b) {
  check_same_shape(a, b, "kernel_sum");
  const bool grad = a.has_analytic_gradient() && b.has_analytic_gradient();
  return MultiKernel(
      "(" + a.name() + " + " + b.name() + ")", a.arity(), a.dim(),
      combine_flags(a.flags(), b.flags()),
      [a, b](const Mat& pts) { return a(pts) + b(pts); },
      grad ? MultiKernel::Grad([a, b](const Mat& pts) {
        return (a.gradient(pts) + b.gradient(pts)).eval();
      })
           : MultiKernel::Grad());
}

MultiKernel kernel_product(const MultiKernel& a, const MultiKernel& b) {
  check_same_shape(a, b, "kernel_product");
  const bool grad = a.has_analytic_gradient() && b.has_analytic_gradient();
  KernelFlags flags = combine_flags(a.flags(), b.flags());
  flags.vanishes_on_repeats =
      a.flags().vanishes_on_repeats || b.flags().vanishes_on_repeats;
  return MultiKernel(
      "(" + a.name() + " * " + b.name() + ")", a.arity(), a.dim(), flags,
      [a, b](const Mat& pts) { return a(pts) * b(pts); },
      grad ? MultiKernel::Grad([a, b](const Mat& pts) {
        return (a.gradient(pts) * b(pts) + a(pts) * b.gradient(pts)).eval();
      })
           : MultiKernel::Grad());
}

MultiKernel kernel_scale(const MultiKernel& a, double c) {
  const bool grad = a.has_analytic_gradient();
  return MultiKernel(
      std::to_string(c) + "*" + a.name(), a.arity(), a.dim(), a.flags(),
      [a, c](const Mat& pts) { return c * a(pts); },
      grad ? MultiKernel::Grad(
                 [a, c](const Mat& pts) { return (c * a.gradient(pts)).eval(); })
           : MultiKernel::Grad());
}

MultiKernel kernel_add_constant(const MultiKernel& a, double c) {
  const bool grad = a.has_analytic_gradient();
  KernelFlags flags = a.flags();
  if (c != 0.0) flags.vanishes_on_repeats = false;
  return MultiKernel(
      "(" + a.name() + " + " + std::to_string(c) + ")", a.arity(), a.dim(),
      flags, [a, c](const Mat& pts) { return a(pts) + c; },
      grad ? MultiKernel::Grad(
                 [a](const Mat& pts) { return a.gradient(pts); })
           : MultiKernel::Grad());
}

MultiKernel lift_kernel(const MultiKernel& base, int n,
                        const std::vector<std::vector<int>>& perms) {
  const int k = base.arity();
  require(k >= 2, "lift_kernel: base arity must be >= 2");
  require(n >= k, "lift_kernel: target arity must be >= base arity");
  require(base.flags().symmetric_first_two || base.flags().symmetric_all,
          "lift_kernel: base must be symmetric in its first two inputs");
  require(!perms.empty(), "lift_kernel: need at least one permutation");
  for (const auto& p : perms) {
    require(static_cast<int>(p.size()) == n - 2,
            "lift_kernel: each permutation must cover all n-2 tail positions");
    std::vector<bool> seen(n, false);
    for (int idx : p) {
      require(idx >= 2 && idx < n && !seen[idx],
              "lift_kernel: permutation entries must be distinct positions in "
              "{2..n-1}");
      seen[idx] = true;
    }
  }
  KernelFlags flags = base.flags();
  flags.symmetric_all = false;
  flags.symmetric_first_two = true;
  // A repeat in the lifted tuple need not land inside the base tuple unless
  // the lift uses every input.
  flags.vanishes_on_repeats = (n == k) && base.flags().vanishes_on_repeats;
  const auto perms_copy = perms;  // owned by the closure
  auto assemble = [k, perms_copy](const Mat& pts, Mat& tuple, std::size_t p) {
    tuple.col(0) = pts.col(0);
    tuple.col(1) = pts.col(1);
    for (int c = 2; c < k; ++c) tuple.col(c) = pts.col(perms_copy[p][c - 2]);
  };
  return MultiKernel(
      "lift[" + std::to_string(n) + "](" + base.name() + ")", n, base.dim(),
      flags,
      [base, k, perms_copy, assemble](const Mat& pts) {
        Mat tuple(pts.rows(), k);
        double acc = 0.0;
        for (std::size_t p = 0; p < perms_copy.size(); ++p) {
          assemble(pts, tuple, p);
          acc += base(tuple);
        }
        return acc / static_cast<double>(perms_copy.size());
      },
      base.has_analytic_gradient()
          ? MultiKernel::Grad([base, k, perms_copy, assemble, n](const Mat& pts) {
              Mat tuple(pts.rows(), k);
              Mat g = Mat::Zero(pts.rows(), n);
              for (std::size_t p = 0; p < perms_copy.size(); ++p) {
                assemble(pts, tuple, p);
                const Mat gt = base.gradient(tuple);
                g.col(0) += gt.col(0);
                g.col(1) += gt.col(1);
                for (int c = 2; c < k; ++c)
                  g.col(perms_copy[p][c - 2]) += gt.col(c);
              }
              return (g / static_cast<double>(perms_copy.size())).eval();
            })
          : MultiKernel::Grad());
}

namespace {

void for_each_permutation(int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  do {
    fn(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

}  // namespace

MultiKernel symmetrize(const MultiKernel& base) {
  const int k = base.arity();
  if (base.flags().symmetric_all) return base;
  KernelFlags flags = base.flags();
  flags.symmetric_all = true;
  flags.symmetric_first_two = true;
  const double count = factorial(k);
  return MultiKernel(
      "sym(" + base.name() + ")", k, base.dim(), flags,
      [base, k, count](const Mat& pts) {
        Mat tuple(pts.rows(), k);
        double acc = 0.0;
        for_each_permutation(k, [&](const std::vector<int>& idx) {
          for (int c = 0; c < k; ++c) tuple.col(c) = pts.col(idx[c]);
          acc += base(tuple);
        });
        return acc / count;
      },
      base.has_analytic_gradient()
          ? MultiKernel::Grad([base, k, count](const Mat& pts) {
              Mat tuple(pts.rows(), k);
              Mat g = Mat::Zero(pts.rows(), k);
              for_each_permutation(k, [&](const std::vector<int>& idx) {
                for (int c = 0; c < k; ++c) tuple.col(c) = pts.col(idx[c]);
                const Mat gt = base.gradient(tuple);
                for (int c = 0; c < k; ++c) g.col(idx[c]) += gt.col(c);
              });
              return (g / count).eval();
            })
          : MultiKernel::Grad());
}

PotentialSlice slice(const MultiKernel& kernel, const Mat& tail) {
  const int k = kernel.arity();
  require(k >= 2, "slice: kernel arity must be >= 2");
  require(tail.cols() == k - 2 && tail.rows() == kernel.dim(),
          "slice: tail must supply the remaining k-2 points");
  KernelFlags flags = kernel.flags();
  flags.symmetric_first_two =
      kernel.flags().symmetric_first_two || kernel.flags().symmetric_all;
  flags.symmetric_all = flags.symmetric_first_two;
  PotentialSlice out;
  out.tail = tail;
  Mat tail_copy = tail;
  out.two_point = MultiKernel(
      "slice(" + kernel.name() + ")", 2, kernel.dim(), flags,
      [kernel, tail_copy, k](const Mat& xy) {
        Mat tuple(xy.rows(), k);
        tuple.col(0) = xy.col(0);
        tuple.col(1) = xy.col(1);
        if (k > 2) tuple.rightCols(k - 2) = tail_copy;
        return kernel(tuple);
      });
  return out;
}

}  // namespace sphere_energy
