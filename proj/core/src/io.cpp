#include "wk/io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace wk::io {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", path.empty() ? "/" : path);
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array", path.empty() ? "/" : path);
  return j;
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ParseError("unknown key '" + k + "'", child(path, k));
  }
}

const json& required(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'", child(path, key));
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number", path);
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", path);
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError("expected a boolean", path);
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError("expected a string", path);
  return j.get<std::string>();
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, child(path, key));
}

int int_or(const json& j, const std::string& path, const char* key, int fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as_int(*it, child(path, key));
}

std::vector<double> parse_real_vector(const json& j, const std::string& path) {
  require_array(j, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], child(path, i)));
  return out;
}

ComplexPoint parse_point(const json& j, int dim, const std::string& path) {
  auto z = parse_complex_vector(j, path);
  if (static_cast<int>(z.size()) != dim) {
    throw ParseError("point needs " + std::to_string(dim) + " components", path);
  }
  return ComplexPoint(std::move(z));
}

const json& params_of(const json& j, const std::string& path) {
  static const json empty = json::object();
  auto it = j.find("params");
  return it == j.end() ? empty : require_object(*it, child(path, "params"));
}

SampleTable parse_table(const json& p, const std::string& path, const char* values_key,
                        bool vectors) {
  allow_keys(p, path, {"points", values_key});
  const auto& pts = require_array(required(p, path, "points"), child(path, "points"));
  const auto& vals = require_array(required(p, path, values_key), child(path, values_key));
  if (pts.size() != vals.size() || pts.empty()) {
    throw ParseError("table needs one value per point, at least one", child(path, values_key));
  }
  SampleTable t;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    t.points.push_back(parse_complex_vector(pts[i], child(child(path, "points"), i)));
    const std::string vp = child(child(path, values_key), i);
    if (vectors) {
      auto v = parse_complex_vector(vals[i], vp);
      t.values.push_back(Eigen::Map<Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size())));
    } else {
      t.values.push_back(parse_complex_matrix(vals[i], vp));
    }
  }
  return t;
}

MetricField parse_metric(const json& j, int dim, const std::string& path) {
  allow_keys(j, path, {"family", "params"});
  const std::string family = as_string(required(j, path, "family"), child(path, "family"));
  const json& p = params_of(j, path);
  const std::string pp = child(path, "params");
  auto with_conformal = [&](MetricField m) {
    auto it = p.find("conformal");
    return it == p.end() ? m : m.with_conformal(parse_scalar_function(*it, child(pp, "conformal")));
  };
  if (family == "flat") {
    allow_keys(p, pp, {"conformal"});
    return with_conformal(MetricField::flat(dim));
  }
  if (family == "fubini_study") {
    allow_keys(p, pp, {"conformal"});
    return with_conformal(MetricField::fubini_study(dim));
  }
  if (family == "potential_derived") {
    allow_keys(p, pp, {"potential", "scale", "coefficients", "conformal"});
    Potential pot;
    const std::string kind = as_string(required(p, pp, "potential"), child(pp, "potential"));
    if (kind == "fubini_study") {
      pot.kind = Potential::Kind::fubini_study;
      pot.scale = number_or(p, pp, "scale", 0.5);
      if (p.contains("coefficients")) {
        throw ParseError("coefficients apply to radial_polynomial only", child(pp, "coefficients"));
      }
    } else if (kind == "radial_polynomial") {
      pot.kind = Potential::Kind::radial_polynomial;
      pot.coefficients =
          parse_real_vector(required(p, pp, "coefficients"), child(pp, "coefficients"));
      if (p.contains("scale")) throw ParseError("scale applies to fubini_study only", child(pp, "scale"));
    } else {
      throw ParseError("unknown potential '" + kind + "'", child(pp, "potential"));
    }
    return with_conformal(MetricField::from_potential(dim, pot));
  }
  if (family == "table_driven") return MetricField::from_table(dim, parse_table(p, pp, "matrices", false));
  throw ParseError("unknown metric family '" + family + "'", child(path, "family"));
}

GaugeField parse_gauge(const json& j, int dim, const std::string& path) {
  allow_keys(j, path, {"family", "params"});
  const std::string family = as_string(required(j, path, "family"), child(path, "family"));
  const json& p = params_of(j, path);
  const std::string pp = child(path, "params");
  if (family == "zero") {
    allow_keys(p, pp, {});
    return GaugeField::zero(dim);
  }
  if (family == "exact") {
    allow_keys(p, pp, {"f"});
    return GaugeField::exact(dim, parse_scalar_function(required(p, pp, "f"), child(pp, "f")));
  }
  if (family == "angular") {
    allow_keys(p, pp, {"c", "coordinate", "puncture"});
    const double c = as_number(required(p, pp, "c"), child(pp, "c"));
    const int coord = int_or(p, pp, "coordinate", 0);
    Complex puncture = 0.0;
    if (p.contains("puncture")) puncture = parse_complex(p["puncture"], child(pp, "puncture"));
    if (coord < 0 || coord >= dim) throw ParseError("coordinate out of range", child(pp, "coordinate"));
    return GaugeField::angular(dim, c, coord, puncture);
  }
  if (family == "table_driven") return GaugeField::from_table(dim, parse_table(p, pp, "vectors", true));
  throw ParseError("unknown gauge family '" + family + "'", child(path, "family"));
}

}  // namespace

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [re, im]", path);
  return {as_number(j[0], child(path, 0)), as_number(j[1], child(path, 1))};
}

std::vector<Complex> parse_complex_vector(const json& j, const std::string& path) {
  require_array(j, path);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], child(path, i)));
  return out;
}

Eigen::MatrixXcd parse_complex_matrix(const json& j, const std::string& path) {
  require_array(j, path);
  if (j.empty()) throw ParseError("matrix has no rows", path);
  std::vector<std::vector<Complex>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_complex_vector(j[i], child(path, i)));
    if (rows.back().size() != rows.front().size()) throw ParseError("ragged matrix row", child(path, i));
  }
  Eigen::MatrixXcd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

ScalarFunction parse_scalar_function(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = as_string(required(j, path, "kind"), child(path, "kind"));
  if (kind == "constant") {
    allow_keys(j, path, {"kind", "value"});
    return ScalarFunction::constant(as_number(required(j, path, "value"), child(path, "value")));
  }
  if (kind == "re_linear") {
    allow_keys(j, path, {"kind", "coefficients", "offset"});
    return ScalarFunction::re_linear(
        parse_complex_vector(required(j, path, "coefficients"), child(path, "coefficients")),
        number_or(j, path, "offset", 0.0));
  }
  if (kind == "radial_log" || kind == "radial_quadratic") {
    allow_keys(j, path, {"kind", "alpha"});
    const double alpha = as_number(required(j, path, "alpha"), child(path, "alpha"));
    return kind == "radial_log" ? ScalarFunction::radial_log(alpha)
                                : ScalarFunction::radial_quadratic(alpha);
  }
  throw ParseError("unknown scalar function kind '" + kind + "'", child(path, "kind"));
}

ManifoldSpec parse_manifold(const json& j, const std::string& path) {
  allow_keys(j, path, {"dim", "metric", "gauge"});
  const int dim = as_int(required(j, path, "dim"), child(path, "dim"));
  if (dim < 1) throw ParseError("dim must be >= 1", child(path, "dim"));
  MetricField metric = parse_metric(required(j, path, "metric"), dim, child(path, "metric"));
  GaugeField gauge = j.contains("gauge") ? parse_gauge(j["gauge"], dim, child(path, "gauge"))
                                         : GaugeField::zero(dim);
  return ManifoldSpec(std::move(metric), std::move(gauge));
}

Curve parse_curve(const json& j, int dim, const std::string& path) {
  allow_keys(j, path, {"kind", "params", "closed", "winding_hint"});
  const std::string kind = as_string(required(j, path, "kind"), child(path, "kind"));
  const json& p = params_of(j, path);
  const std::string pp = child(path, "params");
  std::optional<Curve> c;
  if (kind == "circle") {
    allow_keys(p, pp, {"center", "radius", "turns", "coordinate", "phase"});
    ComplexPoint center = p.contains("center") ? parse_point(p["center"], dim, child(pp, "center"))
                                               : ComplexPoint(std::vector<Complex>(dim));
    const int coord = int_or(p, pp, "coordinate", 0);
    if (coord < 0 || coord >= dim) throw ParseError("coordinate out of range", child(pp, "coordinate"));
    c = Curve::circle(center, number_or(p, pp, "radius", 1.0), int_or(p, pp, "turns", 1), coord,
                      number_or(p, pp, "phase", 0.0));
  } else if (kind == "polyline") {
    allow_keys(p, pp, {"vertices"});
    const auto& v = require_array(required(p, pp, "vertices"), child(pp, "vertices"));
    std::vector<ComplexPoint> verts;
    for (std::size_t i = 0; i < v.size(); ++i) {
      verts.push_back(parse_point(v[i], dim, child(child(pp, "vertices"), i)));
    }
    c = Curve::polyline(verts);
  } else if (kind == "parametric_table") {
    allow_keys(p, pp, {"times", "points"});
    auto times = parse_real_vector(required(p, pp, "times"), child(pp, "times"));
    const auto& v = require_array(required(p, pp, "points"), child(pp, "points"));
    std::vector<ComplexPoint> pts;
    for (std::size_t i = 0; i < v.size(); ++i) {
      pts.push_back(parse_point(v[i], dim, child(child(pp, "points"), i)));
    }
    c = Curve::parametric_table(times, pts);
  } else {
    throw ParseError("unknown curve kind '" + kind + "'", child(path, "kind"));
  }
  if (j.contains("closed") && as_bool(j["closed"], child(path, "closed")) != c->closed()) {
    throw ParseError("declared closedness does not match the curve", child(path, "closed"));
  }
  if (j.contains("winding_hint")) {
    const int hint = as_int(j["winding_hint"], child(path, "winding_hint"));
    c = Curve(c->dim(), [c0 = *c](double t) { return c0.position(t); },
              [c0 = *c](double t) { return c0.velocity(t); }, c->closed(), hint, c->chart());
  }
  return *c;
}

StateDescriptor parse_state(const json& j, const std::string& path) {
  if (j.is_array()) {
    auto z = parse_complex_vector(j, path);
    return {StateVector(Eigen::Map<Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(z.size()))),
            std::nullopt, 0};
  }
  allow_keys(j, path, {"state", "inner_form", "observable", "chart"});
  auto z = parse_complex_vector(required(j, path, "state"), child(path, "state"));
  std::optional<Eigen::MatrixXcd> delta;
  if (j.contains("inner_form")) delta = parse_complex_matrix(j["inner_form"], child(path, "inner_form"));
  StateDescriptor out{
      StateVector(Eigen::Map<Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(z.size())), delta),
      std::nullopt, int_or(j, path, "chart", 0)};
  if (j.contains("observable")) {
    out.observable = Observable(parse_complex_matrix(j["observable"], child(path, "observable")));
  }
  return out;
}

BlochPathDescriptor parse_bloch_path(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = as_string(required(j, path, "kind"), child(path, "kind"));
  std::optional<int> steps;
  if (j.contains("steps")) steps = as_int(j["steps"], child(path, "steps"));
  if (kind == "colatitude_circle") {
    allow_keys(j, path, {"kind", "theta", "steps", "phi0", "magnitude"});
    const double theta = as_number(required(j, path, "theta"), child(path, "theta"));
    return {BlochPath::colatitude_circle(theta, number_or(j, path, "phi0", 0.0),
                                         number_or(j, path, "magnitude", 1.0)),
            steps, theta};
  }
  if (kind == "polygon") {
    allow_keys(j, path, {"kind", "vertices", "steps"});
    const auto& v = require_array(required(j, path, "vertices"), child(path, "vertices"));
    std::vector<Eigen::Vector3d> verts;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto r = parse_real_vector(v[i], child(child(path, "vertices"), i));
      if (r.size() != 3) throw ParseError("vertex needs 3 components", child(child(path, "vertices"), i));
      verts.emplace_back(r[0], r[1], r[2]);
    }
    return {BlochPath::polygon(std::move(verts)), steps, std::nullopt};
  }
  throw ParseError("unknown Bloch path kind '" + kind + "'", child(path, "kind"));
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(Complex(v(i))));
  return out;
}

json to_json(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(Complex(m(r, c))));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace wk::io
