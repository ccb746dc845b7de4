#include "sphere_energy/spec_parse.hpp"

#include <cctype>

#include <json.hpp>

#include "sphere_energy/sdp.hpp"

namespace sphere_energy {

using nlohmann::json;

namespace {

// All spec errors surface as invalid_input so callers can map them to a
// single usage-error path.
json parse_json_or_throw(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw invalid_input(std::string(what) + ": malformed JSON (" + e.what() +
                        ")");
  }
}

MultiKernel kernel_from_json(const json& spec, int d);

MultiKernel kernel_from_atom(const json& spec, int d) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (spec.contains("d"))
    require(spec["d"].get<int>() == d,
            "parse_kernel: spec dimension disagrees with the requested one");
  if (kind == "A" || kind == "V") {
    const int k = spec.value("k", kind == "A" ? 3 : 2);
    const double s = spec.value("s", 2.0);
    const bool singular = spec.value("singular", false);
    return kind == "A" ? kernel_A_pow(k, d, s, singular)
                       : kernel_V_pow(k, d, s, singular);
  }
  if (kind == "frame") return kernel_frame(d);
  if (kind == "Q")
    return make_Q_kernel(spec.value("k", 3), spec.value("l", 1), d);
  if (kind == "S")
    return make_S_kernel(
        YIndex{spec.value("m", 0), spec.value("i", 0), spec.value("j", 0)}, d);
  if (kind == "S-trace") {
    std::vector<Mat> blocks;
    for (const auto& b : spec.at("blocks")) {
      const int m = b.at("m").get<int>();
      const auto& entries = b.at("entries");
      const int rows = static_cast<int>(entries.size());
      require(rows >= 1, "parse_kernel: empty trace block");
      Mat A(rows, rows);
      for (int i = 0; i < rows; ++i) {
        require(static_cast<int>(entries[i].size()) == rows,
                "parse_kernel: trace blocks must be square");
        for (int j = 0; j < rows; ++j) A(i, j) = entries[i][j].get<double>();
      }
      if (static_cast<int>(blocks.size()) <= m) blocks.resize(m + 1);
      blocks[m] = std::move(A);
    }
    return trace_kernel(blocks, d);
  }
  throw invalid_input("parse_kernel: unknown kernel kind '" + kind + "'");
}

MultiKernel kernel_from_json(const json& spec, int d) {
  require(spec.is_object(), "parse_kernel: kernel spec must be a JSON object");
  if (spec.contains("kind")) return kernel_from_atom(spec, d);
  if (spec.contains("sum")) {
    const auto& parts = spec["sum"];
    require(parts.is_array() && !parts.empty(), "parse_kernel: empty sum");
    MultiKernel acc = kernel_from_json(parts[0], d);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = kernel_sum(acc, kernel_from_json(parts[i], d));
    return acc;
  }
  if (spec.contains("product")) {
    const auto& parts = spec["product"];
    require(parts.is_array() && !parts.empty(), "parse_kernel: empty product");
    MultiKernel acc = kernel_from_json(parts[0], d);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = kernel_product(acc, kernel_from_json(parts[i], d));
    return acc;
  }
  if (spec.contains("scale")) {
    const auto& node = spec["scale"];
    return kernel_scale(kernel_from_json(node.at("of"), d),
                        node.at("c").get<double>());
  }
  if (spec.contains("add_constant")) {
    const auto& node = spec["add_constant"];
    return kernel_add_constant(kernel_from_json(node.at("of"), d),
                               node.at("c").get<double>());
  }
  if (spec.contains("lift")) {
    const auto& node = spec["lift"];
    std::vector<std::vector<int>> perms;
    for (const auto& p : node.at("perms"))
      perms.push_back(p.get<std::vector<int>>());
    return lift_kernel(kernel_from_json(node.at("of"), d),
                       node.at("n").get<int>(), perms);
  }
  if (spec.contains("symmetrize"))
    return symmetrize(kernel_from_json(spec["symmetrize"], d));
  throw invalid_input(
      "parse_kernel: expected 'kind' or one of sum/product/scale/"
      "add_constant/lift/symmetrize");
}

// "A2:k=3" and friends.
MultiKernel kernel_from_compact(const std::string& spec, int d) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::size_t name_end = 0;
  while (name_end < head.size() && std::isalpha(static_cast<unsigned char>(head[name_end])))
    ++name_end;
  const std::string name = head.substr(0, name_end);
  const std::string power = head.substr(name_end);

  json j;
  if (name == "A" || name == "V") {
    j["kind"] = name;
    j["s"] = power.empty() ? 2.0 : std::stod(power);
  } else if (name == "frame") {
    require(power.empty(), "parse_kernel: 'frame' takes no exponent");
    j["kind"] = "frame";
  } else if (name == "Q") {
    require(power.empty(), "parse_kernel: 'Q' takes no exponent (use l=...)");
    j["kind"] = "Q";
  } else {
    throw invalid_input("parse_kernel: unknown compact kernel '" + name + "'");
  }

  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      const std::string item = rest.substr(pos, next - pos);
      const auto eq = item.find('=');
      require(eq != std::string::npos,
              "parse_kernel: expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      if (key == "k" || key == "l" || key == "d")
        j[key] = std::stoi(val);
      else if (key == "s")
        j[key] = std::stod(val);
      else if (key == "singular")
        j[key] = (val == "1" || val == "true");
      else
        throw invalid_input("parse_kernel: unknown key '" + key + "'");
      pos = next + 1;
    }
  }
  return kernel_from_atom(j, d);
}

}  // namespace

MultiKernel parse_kernel(const std::string& spec, int d) {
  require(!spec.empty(), "parse_kernel: empty kernel spec");
  const auto first = spec.find_first_not_of(" \t\n");
  require(first != std::string::npos, "parse_kernel: blank kernel spec");
  if (spec[first] == '{') {
    try {
      return kernel_from_json(parse_json_or_throw(spec, "parse_kernel"), d);
    } catch (const json::exception& e) {
      throw invalid_input(std::string("parse_kernel: bad spec (") + e.what() +
                          ")");
    }
  }
  return kernel_from_compact(spec.substr(first), d);
}

namespace {

MeasureSpec measure_from_json_node(const json& node) {
  // Nested specs may be compact strings ("pair:3") instead of objects.
  if (node.is_string()) return parse_measure(node.get<std::string>());
  require(node.is_object(), "parse_measure: measure spec must be an object");
  const std::string variant = node.at("variant").get<std::string>();
  if (variant == "uniform_sphere")
    return MeasureSpec::sphere(node.at("dim").get<int>());
  if (variant == "discrete") {
    const int dim = node.at("dim").get<int>();
    const auto& atoms_json = node.at("atoms");
    const int n = static_cast<int>(atoms_json.size());
    require(n >= 1, "parse_measure: discrete measure with no atoms");
    Mat atoms(dim, n);
    for (int j = 0; j < n; ++j) {
      require(static_cast<int>(atoms_json[j].size()) == dim,
              "parse_measure: atom coordinate count mismatch");
      for (int r = 0; r < dim; ++r) atoms(r, j) = atoms_json[j][r].get<double>();
    }
    Vec weights;
    if (node.contains("weights")) {
      weights.resize(n);
      require(static_cast<int>(node["weights"].size()) == n,
              "parse_measure: one weight per atom");
      for (int j = 0; j < n; ++j) weights[j] = node["weights"][j].get<double>();
      return MeasureSpec::from_discrete(make_discrete(std::move(atoms), weights));
    }
    return MeasureSpec::from_discrete(uniform_atoms(std::move(atoms)));
  }
  if (variant == "mixture") {
    std::vector<double> weights;
    std::vector<MeasureSpec> parts;
    for (const auto& c : node.at("components")) {
      weights.push_back(c.at("weight").get<double>());
      parts.push_back(measure_from_json_node(c.at("spec")));
    }
    return MeasureSpec::mixture(std::move(weights), std::move(parts));
  }
  throw invalid_input("parse_measure: unknown variant '" + variant + "'");
}

json measure_to_json_node(const MeasureSpec& mu) {
  json node;
  switch (mu.kind) {
    case MeasureSpec::Kind::UniformSphere:
      node["variant"] = "uniform_sphere";
      node["dim"] = mu.dim;
      return node;
    case MeasureSpec::Kind::Discrete: {
      node["variant"] = "discrete";
      node["dim"] = mu.dim;
      json atoms = json::array();
      for (int j = 0; j < mu.discrete.size(); ++j) {
        json row = json::array();
        for (int r = 0; r < mu.dim; ++r) row.push_back(mu.discrete.atoms(r, j));
        atoms.push_back(std::move(row));
      }
      node["atoms"] = std::move(atoms);
      json weights = json::array();
      for (int j = 0; j < mu.discrete.size(); ++j)
        weights.push_back(mu.discrete.weights[j]);
      node["weights"] = std::move(weights);
      return node;
    }
    case MeasureSpec::Kind::Mixture: {
      node["variant"] = "mixture";
      json comps = json::array();
      for (std::size_t c = 0; c < mu.mix_parts.size(); ++c) {
        json comp;
        comp["weight"] = mu.mix_weights[c];
        comp["spec"] = measure_to_json_node(mu.mix_parts[c]);
        comps.push_back(std::move(comp));
      }
      node["components"] = std::move(comps);
      return node;
    }
  }
  throw invalid_input("measure_to_json: unknown measure kind");
}

}  // namespace

MeasureSpec parse_measure(const std::string& spec) {
  require(!spec.empty(), "parse_measure: empty measure spec");
  const auto first = spec.find_first_not_of(" \t\n");
  require(first != std::string::npos, "parse_measure: blank measure spec");
  if (spec[first] == '{') {
    try {
      return measure_from_json_node(
          parse_json_or_throw(spec, "parse_measure"));
    } catch (const json::exception& e) {
      throw invalid_input(std::string("parse_measure: bad spec (") + e.what() +
                          ")");
    }
  }
  // name:dimension
  const std::string body = spec.substr(first);
  const auto colon = body.find(':');
  require(colon != std::string::npos,
          "parse_measure: compact form is name:dimension, e.g. sigma:3");
  const std::string name = body.substr(0, colon);
  const int d = std::stoi(body.substr(colon + 1));
  return make_named_measure(name, d);
}

std::string measure_to_json(const MeasureSpec& mu) {
  return measure_to_json_node(mu).dump();
}

std::string series_to_json(const GegenbauerSeries& series) {
  json j;
  j["d"] = series.d;
  json coeffs = json::array();
  for (int m = 0; m < series.coeffs.size(); ++m) coeffs.push_back(series.coeffs[m]);
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

GegenbauerSeries series_from_json(const std::string& text) {
  const json j = parse_json_or_throw(text, "series_from_json");
  GegenbauerSeries s;
  s.d = j.at("d").get<int>();
  const auto& coeffs = j.at("coeffs");
  s.coeffs.resize(static_cast<int>(coeffs.size()));
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    s.coeffs[static_cast<int>(m)] = coeffs[m].get<double>();
  return s;
}

std::string config_to_json(const PointConfig& config) {
  json j;
  j["dim"] = config.dim();
  json pts = json::array();
  for (int i = 0; i < config.size(); ++i) {
    json row = json::array();
    for (int r = 0; r < config.dim(); ++r) row.push_back(config.matrix()(r, i));
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return j.dump();
}

PointConfig config_from_json(const std::string& text, bool on_sphere) {
  const json j = parse_json_or_throw(text, "config_from_json");
  const int dim = j.at("dim").get<int>();
  const auto& pts = j.at("points");
  require(!pts.empty(), "config_from_json: no points");
  Mat m(dim, static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(static_cast<int>(pts[i].size()) == dim,
            "config_from_json: point coordinate count mismatch");
    for (int r = 0; r < dim; ++r)
      m(r, static_cast<int>(i)) = pts[i][r].get<double>();
  }
  return PointConfig(std::move(m), on_sphere);
}

}  // namespace sphere_energy
