#include "sphere_energy/geom.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sphere_energy {

namespace {

// Idempotent normalization: a vector that is already unit to rounding
// error is left untouched, so that saving and reloading a spherical
// configuration reproduces it bit for bit.
constexpr double kUnitSlack = 16 * std::numeric_limits<double>::epsilon();

}  // namespace

Point::Point(Vec coords, bool on_sphere) : x(std::move(coords)), spherical(on_sphere) {
  require(x.size() >= 1, "Point: empty coordinate vector");
  if (spherical) {
    const double n = x.norm();
    require(n != 0.0, "Point: cannot place origin on the sphere");
    if (std::abs(n - 1.0) > kUnitSlack) x /= n;
  }
}

PointConfig::PointConfig(Mat points, bool on_sphere)
    : pts_(std::move(points)), spherical_(on_sphere) {
  require(pts_.rows() >= 1, "PointConfig: dimension must be >= 1");
  if (spherical_) {
    for (int j = 0; j < pts_.cols(); ++j) {
      const double n = pts_.col(j).norm();
      require(n != 0.0, "PointConfig: cannot place origin on the sphere");
      if (std::abs(n - 1.0) > kUnitSlack) pts_.col(j) /= n;
    }
  }
}

PointConfig PointConfig::from_points(const std::vector<Point>& pts) {
  require(!pts.empty(), "PointConfig: no points");
  const int d = pts[0].dim();
  const bool sph = pts[0].spherical;
  Mat m(d, static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(pts[i].dim() == d, "PointConfig: mixed dimensions");
    require(pts[i].spherical == sph, "PointConfig: mixed spherical flags");
    m.col(static_cast<int>(i)) = pts[i].x;
  }
  return PointConfig(std::move(m), sph);
}

double factorial(int n) {
  require(n >= 0, "factorial: negative argument");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

// Recursive cofactor expansion along the first row.  n! terms: only used
// for n <= 6 where it is exact-ish and branch-free enough.
double det_cofactor(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 1) return A(0, 0);
  if (n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  if (n == 3)
    return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
           A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
           A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
  double det = 0.0;
  Mat minor(n - 1, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = A(r, c);
      }
    }
    const double term = A(0, j) * det_cofactor(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

Mat drop_row_col(const Mat& A, int row, int col) {
  const int n = static_cast<int>(A.rows());
  Mat m(n - 1, n - 1);
  int rr = 0;
  for (int r = 0; r < n; ++r) {
    if (r == row) continue;
    int cc = 0;
    for (int c = 0; c < n; ++c) {
      if (c == col) continue;
      m(rr, cc++) = A(r, c);
    }
    ++rr;
  }
  return m;
}

}  // namespace

double det_dense(const Mat& A) {
  require(A.rows() == A.cols(), "det_dense: matrix not square");
  const int n = static_cast<int>(A.rows());
  if (n == 0) return 1.0;
  if (n <= 6) return det_cofactor(A);
  return Eigen::PartialPivLU<Mat>(A).determinant();
}

Mat adjugate(const Mat& A) {
  require(A.rows() == A.cols(), "adjugate: matrix not square");
  const int n = static_cast<int>(A.rows());
  if (n == 1) return Mat::Identity(1, 1);
  Mat adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double minor = det_dense(drop_row_col(A, i, j));
      // adj = transpose of the cofactor matrix.
      adj(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  return adj;
}

GramBundle gram(const Mat& pts) {
  require(pts.cols() >= 1, "gram: empty tuple");
  GramBundle g;
  g.U = pts.transpose() * pts;
  g.det = det_dense(g.U);
  g.adj = adjugate(g.U);
  g.dim = static_cast<int>(pts.rows());
  return g;
}

GramBundle gram(const PointConfig& config) { return gram(config.matrix()); }

double clamp_to_zero(double value, double scale, double tol) {
  if (value >= 0.0) return value;
  if (value < -tol * scale) {
    std::ostringstream msg;
    msg << "clamp_to_zero: value " << value << " is suspiciously negative (scale "
        << scale << ", tol " << tol << ")";
    throw std::domain_error(msg.str());
  }
  return 0.0;
}

double volume_parallelepiped_sq(const Mat& pts, bool* degenerate, double tol) {
  const int d = static_cast<int>(pts.rows());
  const int k = static_cast<int>(pts.cols());
  require(k >= 1, "volume_parallelepiped: empty tuple");
  if (degenerate) *degenerate = false;
  if (k > d) {  // rank-deficient by counting: volume identically zero
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  // Scale: Hadamard bound on |det U| in terms of column norms.
  double scale = 1.0;
  for (int j = 0; j < k; ++j) scale *= pts.col(j).squaredNorm();
  const double det = det_dense((pts.transpose() * pts).eval());
  return clamp_to_zero(det, std::max(scale, 1.0), tol);
}

double volume_parallelepiped(const Mat& pts, bool* degenerate, double tol) {
  return std::sqrt(volume_parallelepiped_sq(pts, degenerate, tol));
}

double volume_simplex_sq(const Mat& pts, bool* degenerate, double tol) {
  const int d = static_cast<int>(pts.rows());
  const int k = static_cast<int>(pts.cols());
  require(k >= 2, "volume_simplex: need at least 2 vertices");
  if (degenerate) *degenerate = false;
  if (k > d + 1) {  // a (k-1)-simplex needs k-1 <= d
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  Mat B(k + 1, k + 1);
  B.topLeftCorner(k, k) = pts.transpose() * pts;
  B.col(k).setOnes();
  B.row(k).setOnes();
  B(k, k) = 0.0;
  double scale = 1.0;
  for (int j = 0; j < k; ++j)
    scale *= std::max(1.0, pts.col(j).squaredNorm());
  const double fac = factorial(k - 1);
  return clamp_to_zero(-det_dense(B), std::max(scale, 1.0), tol) / (fac * fac);
}

double volume_simplex(const Mat& pts, bool* degenerate, double tol) {
  return std::sqrt(volume_simplex_sq(pts, degenerate, tol));
}

double volume_simplex_sq_edge_form(const Mat& pts) {
  const int k = static_cast<int>(pts.cols());
  require(k >= 2, "volume_simplex_sq_edge_form: need at least 2 vertices");
  Mat edges(pts.rows(), k - 1);
  for (int j = 1; j < k; ++j) edges.col(j - 1) = pts.col(j) - pts.col(0);
  const Mat G = edges.transpose() * edges;
  const double fac = factorial(k - 1);
  return std::max(det_dense(G), 0.0) / (fac * fac);
}

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

double face_functional(const PointConfig& config, int j, double s) {
  const int d = config.dim();
  const int N = config.size();
  require(N == d + 1, "face_functional: need exactly d+1 vertices");
  require(j >= 1 && j <= d, "face_functional: face dimension out of range");
  const Mat& pts = config.matrix();
  double total = 0.0;
  Mat face(d, j + 1);
  for_each_subset(N, j + 1, [&](const std::vector<int>& idx) {
    for (int c = 0; c <= j; ++c) face.col(c) = pts.col(idx[c]);
    total += std::pow(volume_simplex(face), s);
  });
  return total;
}

void write_config(std::ostream& os, const PointConfig& config) {
  os << config.size() << " " << config.dim() << "\n";
  os.precision(17);
  for (int i = 0; i < config.size(); ++i) {
    for (int r = 0; r < config.dim(); ++r) {
      if (r) os << " ";
      os << config.matrix()(r, i);
    }
    os << "\n";
  }
}

PointConfig read_config(std::istream& is, bool on_sphere) {
  int N = 0, d = 0;
  if (!(is >> N >> d) || N < 1 || d < 1)
    throw invalid_input("read_config: malformed header (want 'N d')");
  Mat pts(d, N);
  for (int i = 0; i < N; ++i)
    for (int r = 0; r < d; ++r)
      if (!(is >> pts(r, i)))
        throw invalid_input("read_config: truncated coordinate list");
  return PointConfig(std::move(pts), on_sphere);
}

}  // namespace sphere_energy
