#include <doctest.h>

#include <cmath>

#include "sphere_energy/measures.hpp"

using namespace sphere_energy;

TEST_CASE("weights must be a probability vector") {
  Mat atoms = Mat::Identity(3, 2);
  Vec w(2);
  w << 0.5, 0.5;
  CHECK_NOTHROW(make_discrete(atoms, w));
  w << 0.5, 0.6;
  CHECK_THROWS_AS(make_discrete(atoms, w), invalid_input);
  w << -0.1, 1.1;
  CHECK_THROWS_AS(make_discrete(atoms, w), invalid_input);
  const DiscreteMeasure u = uniform_atoms(atoms);
  CHECK(u.weights(0) == doctest::Approx(0.5));
}

TEST_CASE("named measures have the advertised geometry") {
  const auto onb = make_named_measure("onb", 4).flatten();
  CHECK(onb.size() == 4);
  CHECK((onb.atoms - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  const auto simplex = make_named_measure("regular_simplex", 3).flatten();
  REQUIRE(simplex.size() == 4);
  const Mat G = simplex.atoms.transpose() * simplex.atoms;
  for (int i = 0; i < 4; ++i) {
    CHECK(G(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < i; ++j)
      CHECK(G(i, j) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  }

  const auto pair = make_named_measure("pair", 5).flatten();
  REQUIRE(pair.size() == 2);
  CHECK((pair.atoms.col(0) + pair.atoms.col(1)).norm() == 0.0);

  const auto cross = make_named_measure("cross", 3).flatten();
  CHECK(cross.size() == 6);
  CHECK(moments(cross).isotropic);

  CHECK(make_named_measure("sigma", 4).kind == MeasureSpec::Kind::UniformSphere);
  CHECK_THROWS_AS(make_named_measure("dodecahedron", 3), invalid_input);
}

TEST_CASE("regular simplex vertices exist in every dimension") {
  for (int d : {2, 3, 6, 9}) {
    const Mat V = regular_simplex_vertices(d);
    REQUIRE(V.rows() == d);
    REQUIRE(V.cols() == d + 1);
    const Mat G = V.transpose() * V;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        const double want = (i == j) ? 1.0 : -1.0 / d;
        CHECK(G(i, j) == doctest::Approx(want).epsilon(1e-11));
      }
  }
}

TEST_CASE("moment flags recognize the standard configurations") {
  const auto onb = moments(make_named_measure("onb", 3).flatten());
  CHECK_FALSE(onb.balanced);  // mean is (1,1,1)/3
  CHECK(onb.isotropic);       // second moment I/3
  CHECK(onb.unit_second_moment);

  const auto simplex = moments(make_named_measure("simplex", 3).flatten());
  CHECK(simplex.balanced);
  CHECK(simplex.isotropic);
  CHECK(simplex.unit_second_moment);
  CHECK(simplex.trace == doctest::Approx(1.0).epsilon(1e-12));

  // A lopsided two-atom measure is none of those things.
  Mat atoms(2, 2);
  atoms << 1.0, 0.0, 0.0, 1.0;
  Vec w(2);
  w << 0.9, 0.1;
  const auto lop = moments(make_discrete(atoms, w));
  CHECK_FALSE(lop.balanced);
  CHECK_FALSE(lop.isotropic);
  CHECK(lop.unit_second_moment);  // unit atoms always give trace 1
}

TEST_CASE("sampling is deterministic and batching-independent") {
  const MeasureSpec mu = MeasureSpec::sphere(3);
  const Mat a = sample(mu, 40, 11, 2);
  const Mat b = sample(mu, 40, 11, 2);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 0; j < a.cols(); ++j)
    CHECK(std::abs(a.col(j).norm() - 1.0) < 1e-12);
}

TEST_CASE("sampled sphere moments look uniform") {
  const auto rep = moments_sampled(MeasureSpec::sphere(4), 20000, 3);
  CHECK(rep.balanced);
  CHECK(rep.isotropic);
  CHECK(rep.unit_second_moment);
}

TEST_CASE("discrete sampling hits atoms with the right frequencies") {
  Mat atoms(2, 2);
  atoms.col(0) << 1.0, 0.0;
  atoms.col(1) << 0.0, 1.0;
  Vec w(2);
  w << 0.25, 0.75;
  const MeasureSpec mu = MeasureSpec::from_discrete(make_discrete(atoms, w));
  const Mat pts = sample(mu, 40000, 5, 0);
  int first = 0;
  for (int j = 0; j < pts.cols(); ++j)
    if (pts(0, j) > 0.5) ++first;
  CHECK(std::abs(first / 40000.0 - 0.25) < 0.01);
}

TEST_CASE("mixtures flatten by scaling the component weights") {
  Mat a1(2, 1), a2(2, 1);
  a1 << 1.0, 0.0;
  a2 << 0.0, 1.0;
  const auto mix = MeasureSpec::mixture(
      {0.3, 0.7},
      {MeasureSpec::from_discrete(uniform_atoms(a1)),
       MeasureSpec::from_discrete(uniform_atoms(a2))});
  CHECK(mix.finitely_supported());
  const DiscreteMeasure flat = mix.flatten();
  REQUIRE(flat.size() == 2);
  CHECK(flat.weights(0) == doctest::Approx(0.3));
  CHECK(flat.weights(1) == doctest::Approx(0.7));

  const auto with_sphere = MeasureSpec::mixture(
      {0.5, 0.5}, {MeasureSpec::sphere(2), mix});
  CHECK_FALSE(with_sphere.finitely_supported());
}

TEST_CASE("radial projection preserves mass and lands on the sphere") {
  // Atoms at radius 1/2 and sqrt(7)/2 with weights (2/3, 2/7)... choose
  // weights so the second moment trace is one: w1 r1^2 + w2 r2^2 = 1.
  Mat atoms(2, 2);
  atoms.col(0) << 0.5, 0.0;
  atoms.col(1) << 0.0, 1.5;
  Vec w(2);
  // 0.25 w1 + 2.25 w2 = 1 with w1 + w2 = 1 -> w1 = 5/8, w2 = 3/8.
  w << 5.0 / 8.0, 3.0 / 8.0;
  const DiscreteMeasure mu = make_discrete(atoms, w);
  CHECK(moments(mu).unit_second_moment);

  const DiscreteMeasure proj = project_pi(mu);
  CHECK(proj.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj.weights(0) == doctest::Approx(5.0 / 32.0).epsilon(1e-12));
  CHECK(proj.weights(1) == doctest::Approx(27.0 / 32.0).epsilon(1e-12));
  for (int j = 0; j < 2; ++j)
    CHECK(proj.atoms.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Without unit second moment the projection is not mass-preserving.
  Vec bad(2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(project_pi(make_discrete(atoms, bad)), invalid_input);
}

TEST_CASE("the affine lift lands on the higher sphere and contracts products") {
  Vec x(3);
  x << 0.0, 0.6, 0.8;
  const Vec lx = lift_psi_point(x);
  REQUIRE(lx.size() == 4);
  CHECK(lx.norm() == doctest::Approx(1.0).epsilon(1e-14));
  Vec y(3);
  y << 1.0, 0.0, 0.0;
  const Vec ly = lift_psi_point(y);
  const int d = 3;
  CHECK(lx.dot(ly) ==
        doctest::Approx(d / (d + 1.0) * x.dot(y) + 1.0 / (d + 1.0))
            .epsilon(1e-14));

  const auto simplex = make_named_measure("simplex", 2).flatten();
  const DiscreteMeasure lifted = lift_psi(simplex);
  CHECK(lifted.dim() == 3);
  // The lifted regular simplex of S^1 is an orthonormal triple in R^3:
  // inner products (2/3)(-1/2) + 1/3 = 0.
  const Mat G = lifted.atoms.transpose() * lifted.atoms;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) CHECK(std::abs(G(i, j)) < 1e-12);
  CHECK(moments(lifted).isotropic);
}
