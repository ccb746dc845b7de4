#pragma once

#include <iosfwd>
#include <vector>

#include "sphere_energy/common.hpp"

namespace sphere_energy {

// Single point of R^d.  With spherical=true the coordinates are
// renormalized to unit length at construction (zero vectors are rejected).
struct Point {
  Vec x;
  bool spherical = false;

  Point() = default;
  Point(Vec coords, bool on_sphere);
  int dim() const { return static_cast<int>(x.size()); }
};

// Ordered tuple of N points sharing one ambient dimension, stored as the
// columns of a d x N matrix.  Ordered because energies sum over ordered
// tuples; multiplicity is meaningful.
class PointConfig {
 public:
  PointConfig() = default;
  PointConfig(Mat points, bool on_sphere);
  static PointConfig from_points(const std::vector<Point>& pts);

  int dim() const { return static_cast<int>(pts_.rows()); }
  int size() const { return static_cast<int>(pts_.cols()); }
  bool spherical() const { return spherical_; }
  const Mat& matrix() const { return pts_; }
  Vec point(int i) const { return pts_.col(i); }

 private:
  Mat pts_;
  bool spherical_ = false;
};

// Gram matrix of a tuple together with its determinant and adjugate -- the
// three quantities every volume and gradient formula below consumes.
struct GramBundle {
  Mat U;       // k x k, U(i,j) = <x_i, x_j>
  double det;  // det U
  Mat adj;     // adjugate of U (adj of a 1x1 matrix is [1])
  int dim;     // ambient dimension d
};

double factorial(int n);

// Determinant: cofactor expansion up to 6x6, LU factorization beyond.
double det_dense(const Mat& A);
// Adjugate via the cofactor matrix; satisfies A * adj(A) = det(A) * I.
Mat adjugate(const Mat& A);

GramBundle gram(const Mat& pts);  // pts is d x k, columns are points
GramBundle gram(const PointConfig& config);

// Gram determinants of near-degenerate tuples come out as tiny negatives;
// clamp_to_zero maps them to 0 but treats anything below -tol * scale as a
// genuine error (std::domain_error), since no roundoff excuses it.
double clamp_to_zero(double value, double scale, double tol = 1e-10);

// k-dimensional volume of the parallelepiped spanned by k points of R^d
// (squared variant returns det of the Gram matrix, clamped).  k > d gives
// identically zero volume; *degenerate is set instead of erroring.
double volume_parallelepiped_sq(const Mat& pts, bool* degenerate = nullptr,
                                double tol = 1e-10);
double volume_parallelepiped(const Mat& pts, bool* degenerate = nullptr,
                             double tol = 1e-10);

// (k-1)-dimensional volume of the simplex with vertices x_1..x_k, via the
// bordered Gram determinant
//   ((k-1)!)^2 A^2 = -det [ U  1 ; 1^T 0 ].
// Works verbatim for points on a sphere or anywhere in R^d; k > d+1 gives
// zero volume with the degenerate flag.
double volume_simplex_sq(const Mat& pts, bool* degenerate = nullptr,
                         double tol = 1e-10);
double volume_simplex(const Mat& pts, bool* degenerate = nullptr,
                      double tol = 1e-10);

// Independent oracle for volume_simplex_sq: Gram determinant of the edge
// vectors x_i - x_1, divided by ((k-1)!)^2.
double volume_simplex_sq_edge_form(const Mat& pts);

// Sum of s-th powers of j-dimensional face volumes over all (j+1)-subsets
// of the vertices.  Requires N = d+1 vertices (a full-dimensional simplex)
// and 1 <= j <= d.
double face_functional(const PointConfig& config, int j, double s);

// Plain-text tuple format: first line "N d", then N lines of d coordinates
// written with 17 significant digits.
void write_config(std::ostream& os, const PointConfig& config);
PointConfig read_config(std::istream& is, bool on_sphere = false);

}  // namespace sphere_energy
