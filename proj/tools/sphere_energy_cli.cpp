// Command-line harness.  Every run prints a manifest -- command, version,
// seed, workers, parameters, wall time, and the result -- as JSON (or a
// flattened CSV), so any result can be reproduced from its own output.
// Exit codes: 0 success, 1 a check failed, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphere_energy/energy.hpp"
#include "sphere_energy/gegenbauer.hpp"
#include "sphere_energy/geom.hpp"
#include "sphere_energy/optimize.hpp"
#include "sphere_energy/parallel.hpp"
#include "sphere_energy/sdp.hpp"
#include "sphere_energy/spec_parse.hpp"

using json = nlohmann::json;
using namespace sphere_energy;

namespace {

#ifndef SPHERE_ENERGY_VERSION
#define SPHERE_ENERGY_VERSION "unknown"
#endif

struct GlobalOpts {
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  std::string format = "json";
};

// Flatten {"a":{"b":1}} into rows a.b,1 for the CSV output mode.
void flatten_json(const json& node, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items())
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      flatten_json(node[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, node.is_string() ? node.get<std::string>()
                                               : node.dump());
  }
}

void emit_manifest(const GlobalOpts& g, const std::string& command,
                   const json& params, const json& result, double wall_s) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = SPHERE_ENERGY_VERSION;
  manifest["seed"] = g.seed;
  manifest["workers"] = g.workers;
  manifest["params"] = params;
  manifest["wall_time_s"] = wall_s;
  manifest["result"] = result;
  if (g.format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten_json(manifest, "", rows);
    std::cout << "field,value\n";
    for (const auto& [key, value] : rows) {
      const bool quote = value.find(',') != std::string::npos;
      std::cout << key << "," << (quote ? "\"" + value + "\"" : value) << "\n";
    }
  } else {
    std::cout << manifest.dump(2) << "\n";
  }
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw invalid_input("cannot open output file " + g.out);
    f << manifest.dump(2) << "\n";
  }
}

// Recognize plain volume/area/frame kernels from their spec so results can
// be compared against the closed-form extremal values.
struct KernelShape {
  bool known = false;
  char kind = '?';  // 'A', 'V', or 'F'
  double s = 2.0;
};

KernelShape detect_shape(const std::string& spec) {
  KernelShape shape;
  const auto first = spec.find_first_not_of(" \t\n");
  if (first == std::string::npos) return shape;
  const std::string body = spec.substr(first);
  if (body[0] == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::exception&) {
      return shape;
    }
    if (!j.is_object() || !j.contains("kind")) return shape;
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "A" || kind == "V") {
      shape.known = true;
      shape.kind = kind[0];
      shape.s = j.value("s", 2.0);
    } else if (kind == "frame") {
      shape.known = true;
      shape.kind = 'F';
    }
    return shape;
  }
  const std::string head = body.substr(0, body.find(':'));
  std::size_t name_end = 0;
  while (name_end < head.size() &&
         std::isalpha(static_cast<unsigned char>(head[name_end])))
    ++name_end;
  const std::string name = head.substr(0, name_end);
  const std::string power = head.substr(name_end);
  if (name == "A" || name == "V") {
    shape.known = true;
    shape.kind = name[0];
    shape.s = power.empty() ? 2.0 : std::stod(power);
  } else if (name == "frame") {
    shape.known = true;
    shape.kind = 'F';
  }
  return shape;
}

// Closed-form extremal value of the energy when one is known: the maxima
// of squared-volume energies for s = 2, the Jensen transfer of those
// maxima for 0 < s < 2, and the frame-energy minimum.
bool known_extremal(const KernelShape& shape, int k, int d, long long N,
                    double* value, const char** which) {
  if (!shape.known) return false;
  try {
    if (shape.kind == 'F') {
      *value = closed_form_max(ClosedForm::FrameMin, d, k);
      *which = "minimum";
      return true;
    }
    if (shape.s <= 0.0 || shape.s > 2.0) return false;
    const double b = closed_form_max(
        shape.kind == 'A' ? ClosedForm::A2Max : ClosedForm::V2Max, d, k);
    const double s = shape.s;
    *value = jensen_bound(b, k, N, [s](double x) { return std::pow(x, 0.5 * s); });
    *which = "maximum";
    return true;
  } catch (const invalid_input&) {
    return false;
  }
}

json estimate_to_json(const EnergyEstimate& est) {
  json j;
  j["value"] = est.value;
  j["std_error"] = est.std_error;
  j["samples"] = est.samples;
  j["exact"] = est.exact;
  return j;
}

int cmd_energy(const GlobalOpts& g, const std::string& kernel_spec,
               const std::string& measure_spec, double mc) {
  const MeasureSpec mu = parse_measure(measure_spec);
  const MultiKernel kernel = parse_kernel(kernel_spec, mu.dim);
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyEstimate est =
      energy_integral(kernel, mu, std::llround(mc), g.seed);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json result = estimate_to_json(est);
  // For plain squared-volume and frame kernels the extremal value over all
  // probability measures has a closed form; report it (and the gap to it)
  // so runs against candidate optimizers are self-checking.
  const KernelShape shape = detect_shape(kernel_spec);
  if (shape.known && (shape.kind == 'F' || shape.s == 2.0)) {
    double closed = 0.0;
    try {
      closed = closed_form_max(shape.kind == 'F'   ? ClosedForm::FrameMin
                               : shape.kind == 'A' ? ClosedForm::A2Max
                                                   : ClosedForm::V2Max,
                               kernel.dim(), kernel.arity());
      result["closed_form"] = closed;
      if (est.exact)
        result["abs_error"] = std::abs(est.value - closed);
      else
        result["z_score"] = (est.value - closed) / est.std_error;
    } catch (const invalid_input&) {
      // no closed form for this (d, k); leave the estimate bare
    }
  }

  json params;
  params["kernel"] = kernel_spec;
  params["measure"] = measure_spec;
  params["mc"] = mc;
  emit_manifest(g, "energy", params, result, wall);
  return 0;
}

int cmd_optimize(const GlobalOpts& g, const std::string& kernel_spec,
                 bool face_mode, int face_j, double face_s, int N, int d,
                 int restarts, int iters, bool distinct, int certify_trials,
                 double certify_radius) {
  MultiKernel kernel;
  json params;
  if (face_mode) {
    require(d >= 1 && face_j >= 1 && face_j <= d,
            "optimize: face functional needs 1 <= j <= d");
    N = d + 1;  // the functional is defined for full-simplex configurations
    // With arity N, averaging over the N! distinct tuples of a permutation-
    // symmetric kernel is one evaluation of the functional itself.
    distinct = true;
    KernelFlags flags;
    flags.symmetric_all = true;
    flags.rotation_invariant = true;
    flags.spherical_only = true;
    const int j = face_j;
    const double s = face_s;
    kernel = MultiKernel(
        "face_functional(j=" + std::to_string(j) + ")", N, d, flags,
        [j, s](const Mat& pts) {
          return face_functional(PointConfig(pts, true), j, s);
        });
    params["face_functional"] = true;
    params["j"] = face_j;
    params["s"] = face_s;
  } else {
    kernel = parse_kernel(kernel_spec, d);
    params["kernel"] = kernel_spec;
  }
  params["N"] = N;
  params["d"] = d;
  params["restarts"] = restarts;
  params["max_iters"] = iters;
  params["distinct"] = distinct;

  AscentConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  cfg.distinct_tuples = distinct;

  const auto t0 = std::chrono::steady_clock::now();
  const AscentResult res = maximize_discrete(kernel, N, d, cfg);
  const CertificateReport cert = local_max_certificate(
      kernel, res.best, certify_trials, certify_radius, g.seed + 1, distinct);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json result;
  result["best_energy"] = res.best_energy;
  result["best_restart"] = res.best_index;
  result["converged"] = res.converged;
  result["degenerate_discarded"] = res.degenerate_discarded;
  double target = 0.0;
  const char* which = nullptr;
  if (!face_mode && !distinct &&
      known_extremal(detect_shape(kernel_spec), kernel.arity(), d, N, &target,
                     &which) &&
      detect_shape(kernel_spec).kind != 'F') {
    result["theoretical_max"] = target;
    result["gap"] = target - res.best_energy;
  }
  result["config"] = json::parse(config_to_json(res.best));
  json cj;
  cj["is_local_max"] = cert.is_local_max;
  cj["trials"] = cert.trials;
  cj["radius"] = cert.radius;
  cj["worst_gain"] = cert.worst_gain;
  result["certificate"] = cj;
  json rs = json::array();
  for (const auto& r : res.restarts) {
    json rj;
    rj["energy"] = r.energy;
    rj["iters"] = r.iters;
    rj["grad_norm"] = r.grad_norm;
    rj["converged"] = r.converged;
    rs.push_back(std::move(rj));
  }
  result["restarts"] = std::move(rs);

  emit_manifest(g, "optimize", params, result, wall);
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& identity, int d,
               long long trials, bool psd, const std::string& kernel_spec,
               int points, int tails, const std::string& measure_spec,
               const std::vector<std::string>& expect) {
  const auto t0 = std::chrono::steady_clock::now();
  json params, result;
  bool pass = false;
  if (psd) {
    require(!kernel_spec.empty(), "verify: --psd needs --kernel");
    const MultiKernel kernel = parse_kernel(kernel_spec, d);
    const auto rep = psd_empirical(kernel, points, tails, g.seed);
    params["mode"] = "psd";
    params["kernel"] = kernel_spec;
    params["d"] = d;
    params["points"] = points;
    params["tails"] = tails;
    result["min_eig_normalized"] = rep.min_eig_normalized;
    result["consistent"] = rep.consistent;
    result["n_points"] = rep.n_points;
    result["n_tails"] = rep.n_tails;
    pass = rep.consistent;
  } else if (!measure_spec.empty()) {
    const MeasureSpec mu = parse_measure(measure_spec);
    require(mu.finitely_supported(),
            "verify: moment checks need a finitely supported measure");
    const auto rep = moments(mu.flatten());
    params["mode"] = "moments";
    params["measure"] = measure_spec;
    json mean = json::array();
    for (int i = 0; i < rep.mean.size(); ++i) mean.push_back(rep.mean(i));
    result["mean"] = std::move(mean);
    result["second_moment_trace"] = rep.trace;
    result["balanced"] = rep.balanced;
    result["isotropic"] = rep.isotropic;
    result["unit_second_moment"] = rep.unit_second_moment;
    pass = true;
    for (const auto& e : expect) {
      if (e == "balanced")
        pass = pass && rep.balanced;
      else if (e == "isotropic")
        pass = pass && rep.isotropic;
      else if (e == "unit_second_moment")
        pass = pass && rep.unit_second_moment;
      else
        throw invalid_input("verify: unknown expectation '" + e + "'");
    }
    result["pass"] = pass;
  } else {
    require(!identity.empty(),
            "verify: pick one of --identity, --psd, or --measure");
    const auto rep =
        identity_check(identity, d, static_cast<int>(trials), g.seed);
    params["mode"] = "identity";
    params["identity"] = identity;
    params["d"] = d;
    params["trials"] = trials;
    result["name"] = rep.name;
    result["d"] = rep.d;
    result["trials"] = rep.trials;
    result["max_residual"] = rep.max_residual;
    result["tol"] = rep.tol;
    result["pass"] = rep.pass;
    pass = rep.pass;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  emit_manifest(g, "verify-identity", params, result, wall);
  return pass ? 0 : 1;
}

int cmd_psd_check(const GlobalOpts& g, const std::string& kernel_spec, int d,
                  int points, int tails) {
  const MultiKernel kernel = parse_kernel(kernel_spec, d);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = psd_empirical(kernel, points, tails, g.seed);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params, result;
  params["kernel"] = kernel_spec;
  params["d"] = d;
  params["points"] = points;
  params["tails"] = tails;
  result["min_eig_normalized"] = rep.min_eig_normalized;
  result["consistent"] = rep.consistent;
  result["n_points"] = rep.n_points;
  result["n_tails"] = rep.n_tails;
  emit_manifest(g, "psd-check", params, result, wall);
  return rep.consistent ? 0 : 1;
}

double radial_profile(char kind, double s, double t) {
  // Two-point kernels as functions of the inner product: distances
  // |x - y|^s = (2 - 2t)^{s/2}, parallelogram volumes (1 - t^2)^{s/2}.
  const double base = kind == 'A' ? std::max(0.0, 2.0 - 2.0 * t)
                                  : std::max(0.0, 1.0 - t * t);
  return std::pow(base, 0.5 * s);
}

int cmd_gegenbauer_expand(const GlobalOpts& g, char kind, double s, int d,
                          int degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ex = expand_in_gegenbauer(
      [kind, s](double t) { return radial_profile(kind, s, t); }, d, degree);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params, result;
  params["kind"] = std::string(1, kind);
  params["s"] = s;
  params["d"] = d;
  params["degree"] = degree;
  result["series"] = json::parse(series_to_json(ex.series));
  result["converged"] = ex.converged;
  result["max_refinement_delta"] = ex.max_refinement_delta;
  const auto pd = schoenberg_pd_test(ex.series, 1);
  result["coefficients_nonnegative_from_1"] = pd.pd;
  emit_manifest(g, "gegenbauer expand", params, result, wall);
  return 0;
}

int cmd_gegenbauer_sign_test(const GlobalOpts& g, char kind, double s,
                             int max_m) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = maclaurin_sign_test(kind, s, max_m);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params, result;
  params["kind"] = std::string(1, kind);
  params["s"] = s;
  params["max_m"] = max_m;
  result["coeffs"] = rep.coeffs;
  result["all_nonpositive_from_1"] = rep.all_nonpositive_from_1;
  emit_manifest(g, "gegenbauer sign-test", params, result, wall);
  return 0;
}

int cmd_report(const GlobalOpts& g, const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.path().extension() == ".json")
          files.push_back(entry.path().string());
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw invalid_input("report: no such manifest: " + in);
    }
  }
  std::sort(files.begin(), files.end());

  std::set<std::size_t> seen;
  std::vector<json> manifests;
  for (const auto& path : files) {
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string content = buf.str();
    const std::size_t hash = std::hash<std::string>{}(content);
    if (!seen.insert(hash).second) continue;  // duplicate content
    json m;
    try {
      m = json::parse(content);
    } catch (const json::exception& e) {
      throw invalid_input("report: " + path + " is not valid JSON (" +
                          e.what() + ")");
    }
    manifests.push_back(std::move(m));
  }

  auto status_of = [](const json& m) -> std::string {
    const auto& r = m.value("result", json::object());
    if (r.contains("pass")) return r["pass"].get<bool>() ? "pass" : "FAIL";
    if (r.contains("consistent"))
      return r["consistent"].get<bool>() ? "pass" : "FAIL";
    return "ok";
  };
  auto headline_of = [](const json& m) -> std::string {
    const auto& r = m.value("result", json::object());
    for (const char* key : {"value", "best_energy", "max_residual",
                            "min_eig_normalized"})
      if (r.contains(key)) return std::string(key) + "=" + r[key].dump();
    return "";
  };

  std::ostringstream csv;
  csv << "command,seed,workers,wall_time_s,status,headline\n";
  for (const auto& m : manifests) {
    const std::string head = headline_of(m);
    csv << m.value("command", "?") << "," << m.value("seed", 0ULL) << ","
        << m.value("workers", 0) << "," << m.value("wall_time_s", 0.0) << ","
        << status_of(m) << ","
        << (head.find(',') != std::string::npos ? "\"" + head + "\"" : head)
        << "\n";
  }
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw invalid_input("cannot open output file " + g.out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }

  // Human-readable roll-up.
  int failures = 0;
  for (const auto& m : manifests)
    if (status_of(m) == "FAIL") ++failures;
  std::cerr << manifests.size() << " run(s)";
  if (files.size() != manifests.size())
    std::cerr << " (" << files.size() - manifests.size()
              << " duplicate(s) dropped)";
  std::cerr << ", " << failures << " failed\n";
  for (const auto& m : manifests)
    std::cerr << "  " << status_of(m) << "  " << m.value("command", "?")
              << "  " << headline_of(m) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energies of point configurations and measures on spheres"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed,
                 "base seed for all randomized work (env SPHERE_ENERGY_SEED "
                 "overrides)");
  app.add_option("--workers", g.workers,
                 "worker thread cap, 0 = all cores (results do not depend on "
                 "this)");
  app.add_option("--out", g.out, "also write the run manifest to this file");
  app.add_option("--format", g.format, "stdout format")
      ->check(CLI::IsMember({"json", "csv"}));

  // energy
  auto* energy = app.add_subcommand(
      "energy", "energy of a measure under a kernel (exact or Monte Carlo)");
  energy->fallthrough();
  std::string kernel_spec, measure_spec;
  double mc = 100000;
  energy->add_option("--kernel", kernel_spec, "kernel spec (A2:k=3 or JSON)")
      ->required();
  energy->add_option("--measure", measure_spec, "measure spec (sigma:3 or JSON)")
      ->required();
  energy->add_option("--mc", mc, "Monte Carlo sample budget (used only for "
                                 "measures without finite support)");

  // optimize
  auto* optimize = app.add_subcommand(
      "optimize", "multistart ascent over spherical configurations");
  optimize->fallthrough();
  std::string opt_kernel;
  bool face_mode = false;
  int face_j = 1, opt_N = 0, opt_d = 0, restarts = 30, iters = 500;
  double face_s = 1.0;
  bool distinct = false;
  int certify_trials = 300;
  double certify_radius = 1e-4;
  optimize->add_option("--kernel", opt_kernel, "kernel spec");
  optimize->add_flag("--face-functional", face_mode,
                     "maximize the face functional instead of a kernel energy "
                     "(N is then d+1)");
  optimize->add_option("--j", face_j, "face dimension for --face-functional");
  optimize->add_option("--s", face_s, "face volume power for --face-functional");
  optimize->add_option("--N", opt_N, "number of points");
  optimize->add_option("--d", opt_d, "ambient dimension")->required();
  optimize->add_option("--restarts", restarts, "independent restarts");
  optimize->add_option("--iters", iters, "iteration cap per restart");
  optimize->add_flag("--distinct", distinct,
                     "average over pairwise-distinct tuples only");
  optimize->add_option("--certify-trials", certify_trials,
                       "random perturbations for the local-max certificate");
  optimize->add_option("--certify-radius", certify_radius,
                       "perturbation radius for the certificate");

  // verify-identity (alias verify)
  auto* verify = app.add_subcommand(
      "verify-identity",
      "check a registered identity, a PSD probe, or measure moments");
  verify->alias("verify");
  verify->fallthrough();
  std::string identity, verify_kernel, verify_measure;
  int verify_d = 3, points = 60, tails = 20;
  long long trials = 10000;
  bool psd = false;
  std::vector<std::string> expect;
  verify->add_option("--identity,--name", identity,
                     "identity name (see docs for the registry)");
  verify->add_option("--d", verify_d, "ambient dimension");
  verify->add_option("--trials", trials, "random tuples to test");
  verify->add_flag("--psd", psd, "probe sliced-matrix positive definiteness");
  verify->add_option("--kernel", verify_kernel, "kernel spec for --psd");
  verify->add_option("--points", points, "points per sliced matrix (--psd)");
  verify->add_option("--tails", tails, "random tails (--psd)");
  verify->add_option("--measure", verify_measure,
                     "finitely supported measure for a moment report");
  verify->add_option("--expect", expect,
                     "moment flags that must hold: balanced, isotropic, "
                     "unit_second_moment");

  // psd-check
  auto* psd_check = app.add_subcommand(
      "psd-check", "empirical positive-definiteness probe for a kernel");
  psd_check->fallthrough();
  std::string psd_kernel;
  int psd_d = 3, psd_points = 60, psd_tails = 20;
  psd_check->add_option("--kernel", psd_kernel, "kernel spec")->required();
  psd_check->add_option("--d", psd_d, "ambient dimension")->required();
  psd_check->add_option("--points", psd_points, "points per sliced matrix");
  psd_check->add_option("--tails", psd_tails, "random tails");

  // gegenbauer expand / sign-test
  auto* gegen = app.add_subcommand("gegenbauer",
                                   "orthogonal polynomial expansions");
  gegen->require_subcommand(1);
  gegen->fallthrough();
  auto* expand = gegen->add_subcommand(
      "expand", "expand a two-point radial kernel in the polynomial basis");
  expand->fallthrough();
  std::string gkind = "A";
  double gs = 1.0;
  int gd = 3, gdegree = 30, max_m = 25;
  expand->add_option("--kind", gkind, "A (distance) or V (parallelogram)")
      ->check(CLI::IsMember({"A", "V"}));
  expand->add_option("--s", gs, "power of the volume")->required();
  expand->add_option("--d", gd, "sphere dimension parameter");
  expand->add_option("--degree", gdegree, "truncation degree");
  auto* sign_test = gegen->add_subcommand(
      "sign-test", "series coefficients of the small-angle expansion");
  sign_test->fallthrough();
  sign_test->add_option("--kind", gkind, "A or V")
      ->check(CLI::IsMember({"A", "V"}));
  sign_test->add_option("--s", gs, "power of the volume")->required();
  sign_test->add_option("--max-m", max_m, "highest coefficient order");

  // report
  auto* report = app.add_subcommand(
      "report", "aggregate run manifests into a CSV table and summary");
  report->fallthrough();
  std::vector<std::string> inputs;
  report->add_option("manifests", inputs,
                     "manifest files or directories of *.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env_seed = std::getenv("SPHERE_ENERGY_SEED")) {
    try {
      g.seed = std::stoull(env_seed);
    } catch (const std::exception&) {
      std::cerr << "SPHERE_ENERGY_SEED is not an integer: " << env_seed
                << "\n";
      return 2;
    }
  }
  set_default_workers(g.workers);

  try {
    if (app.got_subcommand(energy))
      return cmd_energy(g, kernel_spec, measure_spec, mc);
    if (app.got_subcommand(optimize)) {
      require(face_mode || !opt_kernel.empty(),
              "optimize: need --kernel or --face-functional");
      require(face_mode || opt_N > 0, "optimize: need --N");
      return cmd_optimize(g, opt_kernel, face_mode, face_j, face_s, opt_N,
                          opt_d, restarts, iters, distinct, certify_trials,
                          certify_radius);
    }
    if (app.got_subcommand(verify))
      return cmd_verify(g, identity, verify_d, trials, psd, verify_kernel,
                        points, tails, verify_measure, expect);
    if (app.got_subcommand(psd_check))
      return cmd_psd_check(g, psd_kernel, psd_d, psd_points, psd_tails);
    if (app.got_subcommand(gegen)) {
      if (gegen->got_subcommand(expand))
        return cmd_gegenbauer_expand(g, gkind[0], gs, gd, gdegree);
      return cmd_gegenbauer_sign_test(g, gkind[0], gs, max_m);
    }
    if (app.got_subcommand(report)) return cmd_report(g, inputs);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
