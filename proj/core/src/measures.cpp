#include "sphere_energy/measures.hpp"

#include <cmath>

namespace sphere_energy {

DiscreteMeasure make_discrete(Mat atoms, Vec weights) {
  require(atoms.cols() == weights.size(), "make_discrete: one weight per atom");
  require(atoms.cols() >= 1, "make_discrete: empty support");
  double total = 0.0;
  for (int j = 0; j < weights.size(); ++j) {
    require(weights[j] >= 0.0, "make_discrete: negative weight");
    total += weights[j];
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "make_discrete: weights must sum to 1 (within 1e-12)");
  return DiscreteMeasure{std::move(atoms), std::move(weights)};
}

DiscreteMeasure uniform_atoms(Mat atoms) {
  const int n = static_cast<int>(atoms.cols());
  require(n >= 1, "uniform_atoms: empty support");
  Vec w = Vec::Constant(n, 1.0 / n);
  // 1/n summed n times can miss 1 by an ulp; renormalize exactly.
  w /= w.sum();
  return DiscreteMeasure{std::move(atoms), std::move(w)};
}

MeasureSpec MeasureSpec::sphere(int d) {
  require(d >= 1, "MeasureSpec::sphere: bad dimension");
  MeasureSpec s;
  s.kind = Kind::UniformSphere;
  s.dim = d;
  return s;
}

MeasureSpec MeasureSpec::from_discrete(DiscreteMeasure m) {
  MeasureSpec s;
  s.kind = Kind::Discrete;
  s.dim = m.dim();
  s.discrete = std::move(m);
  return s;
}

MeasureSpec MeasureSpec::mixture(std::vector<double> weights,
                                 std::vector<MeasureSpec> parts) {
  require(!parts.empty(), "MeasureSpec::mixture: no components");
  require(weights.size() == parts.size(),
          "MeasureSpec::mixture: one weight per component");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "MeasureSpec::mixture: negative weight");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "MeasureSpec::mixture: weights must sum to 1");
  const int d = parts[0].dim;
  for (const auto& p : parts)
    require(p.dim == d, "MeasureSpec::mixture: mixed dimensions");
  MeasureSpec s;
  s.kind = Kind::Mixture;
  s.dim = d;
  s.mix_weights = std::move(weights);
  s.mix_parts = std::move(parts);
  return s;
}

bool MeasureSpec::finitely_supported() const {
  switch (kind) {
    case Kind::Discrete:
      return true;
    case Kind::UniformSphere:
      return false;
    case Kind::Mixture:
      for (const auto& p : mix_parts)
        if (!p.finitely_supported()) return false;
      return true;
  }
  return false;
}

DiscreteMeasure MeasureSpec::flatten() const {
  require(finitely_supported(), "MeasureSpec::flatten: not finitely supported");
  if (kind == Kind::Discrete) return discrete;
  std::vector<DiscreteMeasure> parts;
  int total_atoms = 0;
  for (const auto& p : mix_parts) {
    parts.push_back(p.flatten());
    total_atoms += parts.back().size();
  }
  Mat atoms(dim, total_atoms);
  Vec weights(total_atoms);
  int at = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    atoms.middleCols(at, parts[c].size()) = parts[c].atoms;
    weights.segment(at, parts[c].size()) = mix_weights[c] * parts[c].weights;
    at += parts[c].size();
  }
  return DiscreteMeasure{std::move(atoms), std::move(weights)};
}

Vec draw_point(const MeasureSpec& mu, CounterRng& rng) {
  switch (mu.kind) {
    case MeasureSpec::Kind::UniformSphere: {
      Vec x(mu.dim);
      double n2 = 0.0;
      for (int r = 0; r < mu.dim; ++r) x[r] = rng.next_gaussian();
      n2 = x.squaredNorm();
      if (n2 == 0.0) {
        x.setZero();
        x[0] = 1.0;
        return x;
      }
      return x / std::sqrt(n2);
    }
    case MeasureSpec::Kind::Discrete: {
      const double u = rng.next_double();
      double acc = 0.0;
      const int n = mu.discrete.size();
      for (int j = 0; j < n; ++j) {
        acc += mu.discrete.weights[j];
        if (u <= acc) return mu.discrete.atoms.col(j);
      }
      return mu.discrete.atoms.col(n - 1);  // u landed in roundoff tail
    }
    case MeasureSpec::Kind::Mixture: {
      const double u = rng.next_double();
      double acc = 0.0;
      for (std::size_t c = 0; c < mu.mix_parts.size(); ++c) {
        acc += mu.mix_weights[c];
        if (u <= acc) return draw_point(mu.mix_parts[c], rng);
      }
      return draw_point(mu.mix_parts.back(), rng);
    }
  }
  throw invalid_input("draw_point: unknown measure kind");
}

Mat sample(const MeasureSpec& mu, int n, std::uint64_t seed,
           std::uint64_t stream) {
  require(n >= 0, "sample: negative count");
  CounterRng rng(seed, stream);
  Mat out(mu.dim, n);
  for (int j = 0; j < n; ++j) out.col(j) = draw_point(mu, rng);
  return out;
}

namespace {

MomentReport report_from(Vec mean, Mat second, double tol) {
  MomentReport rep;
  rep.mean = std::move(mean);
  rep.second_moment = std::move(second);
  rep.trace = rep.second_moment.trace();
  rep.tol = tol;
  const int d = static_cast<int>(rep.mean.size());
  rep.balanced = rep.mean.norm() <= tol;
  const Mat iso_part =
      rep.second_moment - (rep.trace / d) * Mat::Identity(d, d);
  rep.isotropic = iso_part.cwiseAbs().maxCoeff() <= tol;
  rep.unit_second_moment = std::abs(rep.trace - 1.0) <= tol;
  return rep;
}

}  // namespace

MomentReport moments(const DiscreteMeasure& mu, double tol) {
  Vec mean = Vec::Zero(mu.dim());
  Mat second = Mat::Zero(mu.dim(), mu.dim());
  for (int j = 0; j < mu.size(); ++j) {
    mean += mu.weights[j] * mu.atoms.col(j);
    second += mu.weights[j] * (mu.atoms.col(j) * mu.atoms.col(j).transpose());
  }
  return report_from(std::move(mean), std::move(second), tol);
}

MomentReport moments_sampled(const MeasureSpec& mu, int n, std::uint64_t seed) {
  require(n >= 1, "moments_sampled: need at least one sample");
  CounterRng rng(seed, CounterRng::derive_stream(0, 0x4d4f4d));
  Vec mean = Vec::Zero(mu.dim);
  Mat second = Mat::Zero(mu.dim, mu.dim);
  for (int j = 0; j < n; ++j) {
    const Vec x = draw_point(mu, rng);
    mean += x;
    second += x * x.transpose();
  }
  mean /= n;
  second /= n;
  // Entries live in [-1,1]-ish ranges; 5 standard errors of a bounded
  // variable is at most ~5/sqrt(n).
  return report_from(std::move(mean), std::move(second), 5.0 / std::sqrt(n));
}

DiscreteMeasure project_pi(const DiscreteMeasure& mu, double tol) {
  const MomentReport rep = moments(mu, tol);
  require(std::abs(rep.trace - 1.0) <= tol,
          "project_pi: needs unit second moment (got trace " +
              std::to_string(rep.trace) + ")");
  Mat atoms(mu.dim(), mu.size());
  Vec weights(mu.size());
  for (int j = 0; j < mu.size(); ++j) {
    const double norm = mu.atoms.col(j).norm();
    if (norm == 0.0)
      throw std::domain_error("project_pi: atom at the origin cannot be projected");
    atoms.col(j) = mu.atoms.col(j) / norm;
    weights[j] = mu.weights[j] * norm * norm;
  }
  // Masses sum to the second moment trace = 1 up to roundoff.
  weights /= weights.sum();
  return DiscreteMeasure{std::move(atoms), std::move(weights)};
}

Vec lift_psi_point(const Vec& x) {
  const int d = static_cast<int>(x.size());
  Vec y(d + 1);
  y.head(d) = std::sqrt(static_cast<double>(d) / (d + 1)) * x;
  y[d] = 1.0 / std::sqrt(static_cast<double>(d) + 1.0);
  return y;
}

DiscreteMeasure lift_psi(const DiscreteMeasure& mu) {
  Mat atoms(mu.dim() + 1, mu.size());
  for (int j = 0; j < mu.size(); ++j)
    atoms.col(j) = lift_psi_point(mu.atoms.col(j));
  return DiscreteMeasure{std::move(atoms), mu.weights};
}

Mat regular_simplex_vertices(int d) {
  require(d >= 1, "regular_simplex_vertices: bad dimension");
  const int n = d + 1;
  Mat G = Mat::Constant(n, n, -1.0 / d);
  G.diagonal().setOnes();
  Eigen::SelfAdjointEigenSolver<Mat> solver(G);
  require(solver.info() == Eigen::Success,
          "regular_simplex_vertices: eigensolve failed");
  // Eigenvalues ascend: one zero (the all-ones direction), then d copies
  // of (d+1)/d.  Drop the null direction and scale the rest.
  Mat verts(d, n);
  for (int r = 0; r < d; ++r) {
    const double lam = solver.eigenvalues()[r + 1];
    verts.row(r) = std::sqrt(std::max(lam, 0.0)) *
                   solver.eigenvectors().col(r + 1).transpose();
  }
  // Numerical unit-ness is ~1e-15; make it exact.
  for (int j = 0; j < n; ++j) verts.col(j).normalize();
  return verts;
}

MeasureSpec make_named_measure(const std::string& name, int d) {
  require(d >= 1, "make_named_measure: bad dimension");
  if (name == "sigma") return MeasureSpec::sphere(d);
  if (name == "orthonormal_basis" || name == "onb")
    return MeasureSpec::from_discrete(uniform_atoms(Mat::Identity(d, d)));
  if (name == "regular_simplex" || name == "simplex")
    return MeasureSpec::from_discrete(uniform_atoms(regular_simplex_vertices(d)));
  if (name == "antipodal_pair" || name == "pair") {
    Mat atoms = Mat::Zero(d, 2);
    atoms(0, 0) = 1.0;
    atoms(0, 1) = -1.0;
    return MeasureSpec::from_discrete(uniform_atoms(std::move(atoms)));
  }
  if (name == "cross_polytope" || name == "cross") {
    Mat atoms = Mat::Zero(d, 2 * d);
    for (int i = 0; i < d; ++i) {
      atoms(i, 2 * i) = 1.0;
      atoms(i, 2 * i + 1) = -1.0;
    }
    return MeasureSpec::from_discrete(uniform_atoms(std::move(atoms)));
  }
  throw invalid_input("make_named_measure: unknown name '" + name +
                      "' (want sigma, orthonormal_basis, regular_simplex, "
                      "antipodal_pair, cross_polytope)");
}

}  // namespace sphere_energy
