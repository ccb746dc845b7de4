#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sphere_energy/geom.hpp"
#include "sphere_energy/rng.hpp"

using namespace sphere_energy;

namespace {

// Points on the unit sphere realizing a prescribed Gram matrix.
Mat points_from_gram(const Mat& G) {
  Eigen::LLT<Mat> llt(G);
  REQUIRE(llt.info() == Eigen::Success);
  return Mat(llt.matrixL()).transpose();
}

Mat equilateral_triangle() {
  Mat pts(2, 3);
  const double c = std::cos(2.0 * M_PI / 3.0), s = std::sin(2.0 * M_PI / 3.0);
  pts.col(0) << 1.0, 0.0;
  pts.col(1) << c, s;
  pts.col(2) << c, -s;
  return pts;
}

Mat regular_tetrahedron() {
  Mat pts(3, 4);
  const double r = 1.0 / std::sqrt(3.0);
  pts.col(0) << r, r, r;
  pts.col(1) << r, -r, -r;
  pts.col(2) << -r, r, -r;
  pts.col(3) << -r, -r, r;
  return pts;
}

}  // namespace

TEST_CASE("determinants: small hardcoded cases match the LU path") {
  CounterRng rng(3, 1);
  for (int n : {1, 2, 3, 4, 5, 6, 7, 9}) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.next_gaussian();
    const double lu = Eigen::PartialPivLU<Mat>(A).determinant();
    CHECK(det_dense(A) == doctest::Approx(lu).epsilon(1e-10));
  }
  CHECK(det_dense(Mat::Zero(0, 0)) == 1.0);
}

TEST_CASE("adjugate satisfies A adj(A) = det(A) I") {
  CounterRng rng(4, 1);
  for (int n : {1, 2, 3, 5, 7}) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.next_gaussian();
    const Mat prod = A * adjugate(A);
    const Mat want = det_dense(A) * Mat::Identity(n, n);
    CHECK((prod - want).cwiseAbs().maxCoeff() < 1e-8 * prod.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("parallelepiped volume from a prescribed Gram matrix") {
  // All pairwise inner products 1/2: det = 1 - 3/4 + 2/8 = 1/2.
  Mat G(3, 3);
  G << 1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0;
  const Mat pts = points_from_gram(G);
  CHECK(volume_parallelepiped_sq(pts) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(volume_parallelepiped(pts) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("more columns than dimensions means zero volume, flagged degenerate") {
  Mat pts(2, 3);
  pts << 1.0, 0.0, 0.5, 0.0, 1.0, 0.5;
  bool degenerate = false;
  CHECK(volume_parallelepiped_sq(pts, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("equilateral triangle on the unit circle has squared area 27/16") {
  const Mat tri = equilateral_triangle();
  CHECK(volume_simplex_sq(tri) == doctest::Approx(27.0 / 16.0).epsilon(1e-12));
  CHECK(volume_simplex(tri) == doctest::Approx(std::sqrt(27.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("regular tetrahedron on the unit sphere has squared volume 64/243") {
  const Mat tet = regular_tetrahedron();
  CHECK(volume_simplex_sq(tet) == doctest::Approx(64.0 / 243.0).epsilon(1e-12));
}

TEST_CASE("bordered and edge-difference simplex volumes agree") {
  CounterRng rng(5, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 4, k = 3 + (trial % 3);
    Mat pts(d, k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < k; ++j) pts(i, j) = rng.next_gaussian();
    const double a = volume_simplex_sq(pts);
    const double b = volume_simplex_sq_edge_form(pts);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("simplex volume degenerates past d+1 points") {
  Mat pts(2, 4);
  pts << 1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0;
  bool degenerate = false;
  CHECK(volume_simplex_sq(pts, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("near-zero negative determinants clamp, genuinely negative ones throw") {
  CHECK(clamp_to_zero(-1e-14, 1.0) == 0.0);
  CHECK(clamp_to_zero(0.25, 1.0) == 0.25);
  CHECK_THROWS_AS(clamp_to_zero(-1e-3, 1.0), std::domain_error);
}

TEST_CASE("face functional on the triangle") {
  const PointConfig tri(equilateral_triangle(), true);
  // j=1: three edges of squared length 3, s=1 sums |e| = 3*sqrt(3).
  CHECK(face_functional(tri, 1, 1.0) ==
        doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
  // j=2: the single full face, s=2 gives the squared area itself.
  CHECK(face_functional(tri, 2, 2.0) == doctest::Approx(27.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("face functional rejects wrong point counts") {
  const PointConfig pair(Mat::Identity(3, 2), true);
  CHECK_THROWS_AS(face_functional(pair, 1, 1.0), invalid_input);
}

TEST_CASE("config io round-trips at full precision") {
  const Mat pts = sample_sphere(5, 7, 11, 0);
  const PointConfig cfg(pts, true);
  std::stringstream ss;
  write_config(ss, cfg);
  const PointConfig back = read_config(ss, true);
  CHECK(back.dim() == 5);
  CHECK(back.size() == 7);
  CHECK((back.matrix() - pts).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("point construction normalizes spherical points and rejects the origin") {
  Vec v(3);
  v << 3.0, 0.0, 4.0;
  const Point p(v, true);
  CHECK(p.x.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.x(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(Point(Vec::Zero(3), true), invalid_input);
}
