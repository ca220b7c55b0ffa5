#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "wk/classify.hpp"
#include "wk/io.hpp"
#include "wk/sampling.hpp"
#include "wk/state_space.hpp"
#include "wk/transport.hpp"

namespace wkgeom {

namespace {

// Raised for anything wrong with the inputs themselves (exit 2).
struct InputError {
  std::string kind;
  std::string message;
  std::string path;
};

template <class F>
auto load(F&& f) {
  try {
    return f();
  } catch (const wk::ParseError& e) {
    throw InputError{e.kind(), e.what(), e.path()};
  } catch (const wk::Error& e) {
    throw InputError{e.kind(), e.what(), {}};
  } catch (const nlohmann::json::exception& e) {
    throw InputError{"ParseError", e.what(), {}};
  }
}

void fail_input(const std::string& message) { throw InputError{"ValidationError", message, {}}; }

std::filesystem::path resolve(const RunConfig& c, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || c.base_dir.empty() ? path : c.base_dir / path;
}

json load_doc(const RunConfig& c, std::size_t i) {
  return load([&] { return wk::io::load_file(resolve(c, c.inputs.at(i))); });
}

void require_inputs(const RunConfig& c, std::size_t lo, std::size_t hi) {
  if (c.inputs.size() < lo || c.inputs.size() > hi) {
    std::ostringstream msg;
    msg << c.command << " expects " << lo;
    if (hi != lo) msg << " to " << hi;
    msg << " input file(s), got " << c.inputs.size();
    fail_input(msg.str());
  }
}

double principal(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

json complex_pair(wk::Complex z) { return wk::io::to_json(z); }

// ---------------------------------------------------------------------------

Outcome run_classify(const RunConfig& c) {
  require_inputs(c, 1, 1);
  json doc = load_doc(c, 0);
  wk::ManifoldSpec spec = load([&] { return wk::io::parse_manifold(doc); });
  wk::ClassifyOptions opts;
  if (c.semi == "skip") opts.semi = wk::SemiMode::skip;
  if (c.semi == "require") opts.semi = wk::SemiMode::require;

  auto samples = wk::polydisc_samples(spec.dim(), c.samples, c.seed);
  auto r = wk::classify(spec, samples, c.tolerance, opts);

  Outcome out;
  out.results["verdicts"] = r.verdicts;
  out.results["notes"] = r.notes;
  out.results["dim"] = spec.dim();
  out.results["metric_family"] = wk::to_string(spec.metric().family());
  out.results["gauge_family"] = wk::to_string(spec.gauge().family());
  out.results["classification"] = r.to_json();
  out.residuals = r.residuals;

  out.table.header = {"sample"};
  for (int mu = 0; mu < spec.dim(); ++mu) {
    out.table.header.push_back("re_z" + std::to_string(mu));
    out.table.header.push_back("im_z" + std::to_string(mu));
  }
  for (const auto& [name, values] : r.per_sample) out.table.header.push_back(name);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    std::vector<json> row{static_cast<int>(k)};
    for (wk::Complex z : samples[k].coords()) {
      row.emplace_back(z.real());
      row.emplace_back(z.imag());
    }
    for (const auto& [name, values] : r.per_sample) row.emplace_back(values[k]);
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

Outcome run_transport(const RunConfig& c) {
  require_inputs(c, 2, 3);
  json mdoc = load_doc(c, 0);
  json cdoc = load_doc(c, 1);
  wk::ManifoldSpec spec = load([&] { return wk::io::parse_manifold(mdoc); });
  wk::Curve curve = load([&] { return wk::io::parse_curve(cdoc, spec.dim()); });
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Unit(spec.dim(), 0);
  if (c.inputs.size() == 3) {
    json vdoc = load_doc(c, 2);
    auto v = load([&] { return wk::io::parse_complex_vector(vdoc); });
    if (static_cast<int>(v.size()) != spec.dim()) fail_input("initial vector dimension mismatch");
    for (int i = 0; i < spec.dim(); ++i) v0(i) = v[i];
  }

  auto tr = wk::parallel_transport(spec, curve, v0, c.steps);
  const wk::Complex line = wk::gauge_line_integral(spec, curve, c.steps);

  Outcome out;
  out.results["steps"] = tr.steps;
  out.results["closed"] = curve.closed();
  out.results["length_factor"] = tr.length_factor;
  out.results["phase"] = tr.phase;
  out.results["initial_vector"] = wk::io::to_json(v0);
  out.results["end_vector"] = wk::io::to_json(tr.end_vector);
  out.results["holonomy_matrix"] = wk::io::to_json(tr.holonomy_matrix);
  out.results["line_integral"] = complex_pair(line);
  out.residuals["convergence_delta"] = tr.convergence_delta;
  out.residuals["line_integral_imag"] = std::abs(line.imag());

  json winding = nullptr;
  if (curve.closed()) {
    auto loop = wk::loop_holonomy(spec, curve, c.steps);
    out.results["loop"] = {{"length_factor", loop.length_factor},
                           {"phase", loop.phase},
                           {"eigen_phases", loop.eigen_phases},
                           {"antilinear_norm", loop.antilinear_part.norm()}};
    out.residuals["unitarity"] = loop.unitarity_residual;
    out.residuals["length_law"] = std::abs(std::log(tr.length_factor) - line.real());
    if (spec.gauge().family() == wk::GaugeFamily::angular) {
      std::vector<wk::Complex> pc(spec.dim());
      pc[spec.gauge().coordinate()] = spec.gauge().puncture();
      const int n = wk::winding_number(curve, wk::ComplexPoint(pc), spec.gauge().coordinate());
      winding = n;
      out.results["quantized_length_factor"] = wk::length_holonomy_factor(n, c.lambda);
    }
  }
  out.results["winding_number"] = winding;

  out.table.header = {"steps", "closed", "length_factor", "phase", "line_integral", "winding_number"};
  out.table.rows.push_back({tr.steps, curve.closed(), tr.length_factor, tr.phase, line.real(), winding});
  return out;
}

Outcome run_berry(const RunConfig& c) {
  require_inputs(c, 1, 1);
  json doc = load_doc(c, 0);
  auto path = load([&] { return wk::io::parse_bloch_path(doc); });
  int steps = c.steps;
  if (!c.steps_explicit && path.steps) steps = *path.steps;
  if (steps < 16) fail_input("steps must be >= 16");

  const double phase = wk::berry_phase_two_level(path.path, steps);
  Outcome out;
  out.results["phase"] = phase;
  out.results["magnitude"] = std::abs(phase);
  out.results["steps"] = steps;
  json expected = nullptr;
  if (path.theta) {
    const double half = std::numbers::pi * (1.0 - std::cos(*path.theta));
    expected = half;
    out.results["theta"] = *path.theta;
    out.results["half_solid_angle"] = half;
    out.residuals["half_solid_angle"] = std::abs(principal(phase + half));
  }
  out.table.header = {"steps", "phase", "magnitude", "half_solid_angle"};
  out.table.rows.push_back({steps, phase, std::abs(phase), expected});
  return out;
}

Outcome run_potential(const RunConfig& c) {
  require_inputs(c, 1, 1);
  json doc = load_doc(c, 0);
  auto st = load([&] { return wk::io::parse_state(doc); });

  const double norm2 = wk::norm_squared(st.state);
  auto w = wk::to_projective(st.state, st.chart);
  const double k = wk::kahler_potential(w);
  Eigen::MatrixXcd g = wk::fubini_study_metric(w);

  Outcome out;
  out.results["components"] = wk::io::to_json(st.state.components());
  out.results["norm_squared"] = norm2;
  out.results["chart"] = w.chart;
  out.results["projective"] = wk::io::to_json(w.w);
  out.results["kahler_potential"] = k;
  out.results["fubini_study_metric"] = wk::io::to_json(g);
  json expect = nullptr;
  if (st.observable) expect = wk::expectation(st.state, *st.observable);
  out.results["expectation"] = expect;
  out.residuals["metric_hermitian"] = (g - g.adjoint()).cwiseAbs().maxCoeff();

  out.table.header = {"norm_squared", "chart", "kahler_potential", "expectation"};
  out.table.rows.push_back({norm2, w.chart, k, expect});
  return out;
}

Outcome run_weights(const RunConfig& c) {
  require_inputs(c, 0, 0);
  if (c.n_list.empty()) fail_input("weights needs at least one --n value");
  auto seq = wk::measurement_weight_sequence(c.n_list, c.lambda);
  Outcome out;
  json branches = json::array();
  out.table.header = {"index", "n", "lambda", "weight", "normalized"};
  for (std::size_t i = 0; i < seq.branches.size(); ++i) {
    const auto& b = seq.branches[i];
    branches.push_back({{"n", b.n}, {"lambda", b.lambda}, {"weight", b.weight}});
    out.table.rows.push_back({static_cast<int>(i), b.n, b.lambda, b.weight, seq.normalized[i]});
  }
  out.results["branches"] = branches;
  out.results["normalized"] = seq.normalized;
  return out;
}

RunConfig run_from_suite(const RunConfig& parent, const json& j, const std::string& path) {
  static const std::set<std::string> keys = {"command", "inputs", "steps", "tol", "lambda",
                                             "seed", "samples", "semi", "n"};
  if (!j.is_object()) throw InputError{"ParseError", "run must be an object", path};
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw InputError{"ParseError", "unknown key '" + k + "'", path + "/" + k};
  }
  RunConfig c = parent;
  c.inputs.clear();
  c.n_list.clear();
  try {
    c.command = j.at("command").get<std::string>();
    if (j.contains("inputs")) c.inputs = j["inputs"].get<std::vector<std::string>>();
    if (j.contains("steps")) {
      c.steps = j["steps"].get<int>();
      c.steps_explicit = true;
    }
    if (j.contains("tol")) c.tolerance = j["tol"].get<double>();
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("semi")) c.semi = j["semi"].get<std::string>();
    if (j.contains("n")) c.n_list = j["n"].get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError{"ParseError", e.what(), path};
  }
  if (c.command == "report") throw InputError{"ValidationError", "suites cannot nest", path};
  return c;
}

Outcome run_report(const RunConfig& c) {
  require_inputs(c, 1, 1);
  json doc = load_doc(c, 0);
  if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array()) {
    throw InputError{"ParseError", "suite needs a 'runs' array", "/runs"};
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "runs") throw InputError{"ParseError", "unknown key '" + k + "'", "/" + k};
  }
  RunConfig parent = c;
  parent.base_dir = resolve(c, c.inputs[0]).parent_path();

  Outcome out;
  json runs = json::array();
  out.table.header = {"index", "command", "inputs", "exit_code"};
  for (std::size_t i = 0; i < doc["runs"].size(); ++i) {
    RunConfig sub = run_from_suite(parent, doc["runs"][i], "/runs/" + std::to_string(i));
    Outcome o = run(sub);
    json entry = {{"command", sub.command},
                  {"inputs", sub.inputs},
                  {"exit_code", o.exit_code},
                  {"results", o.results},
                  {"residuals", o.residuals},
                  {"errors", o.errors}};
    runs.push_back(std::move(entry));
    for (auto& e : o.errors) {
      e["run"] = static_cast<int>(i);
      out.errors.push_back(e);
    }
    out.exit_code = std::max(out.exit_code, o.exit_code);
    std::string joined;
    for (const auto& s : sub.inputs) joined += (joined.empty() ? "" : ";") + s;
    out.table.rows.push_back({static_cast<int>(i), sub.command, joined, o.exit_code});
  }
  out.results["runs"] = runs;
  out.results["run_count"] = runs.size();
  return out;
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands = {"classify", "transport", "berry",
                                                 "potential", "weights", "report"};
  if (!commands.count(c.command)) fail_input("unknown command '" + c.command + "'");
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) fail_input("--tol must be > 0");
  if (c.steps < 16) fail_input("--steps must be >= 16");
  if (c.format != "json" && c.format != "csv") fail_input("--format must be json or csv");
  if (c.samples < 8) fail_input("--samples must be >= 8");
  if (c.semi != "auto" && c.semi != "skip" && c.semi != "require") {
    fail_input("--semi must be auto, skip or require");
  }
  if (!std::isfinite(c.lambda)) fail_input("--lambda must be finite");
}

}  // namespace

json RunConfig::to_json() const {
  return {{"command", command}, {"inputs", inputs},   {"tolerance", tolerance},
          {"steps", steps},     {"seed", seed},       {"lambda", lambda},
          {"format", format},   {"samples", samples}, {"semi", semi},
          {"n", n_list}};
}

Outcome run(const RunConfig& config) {
  Outcome out;
  try {
    validate(config);
    if (config.command == "classify") out = run_classify(config);
    else if (config.command == "transport") out = run_transport(config);
    else if (config.command == "berry") out = run_berry(config);
    else if (config.command == "potential") out = run_potential(config);
    else if (config.command == "weights") out = run_weights(config);
    else out = run_report(config);
  } catch (const InputError& e) {
    out = Outcome{};
    json err = {{"kind", e.kind}, {"message", e.message}};
    if (!e.path.empty()) err["path"] = e.path;
    out.errors.push_back(err);
    out.exit_code = 2;
  } catch (const wk::Error& e) {
    out = Outcome{};
    out.errors.push_back({{"kind", e.kind()}, {"message", e.what()}});
    out.exit_code = 3;
  } catch (const std::exception& e) {
    out = Outcome{};
    out.errors.push_back({{"kind", "InternalError"}, {"message", e.what()}});
    out.exit_code = 3;
  }
  return out;
}

json report(const RunConfig& config, const Outcome& outcome) {
  return {{"command", config.command},
          {"config", config.to_json()},
          {"results", outcome.results},
          {"residuals", outcome.residuals},
          {"errors", outcome.errors}};
}

std::string to_csv(const Table& table) {
  auto cell = [](const json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    return v.dump();
  };
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out += (i ? "," : "") + table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace wkgeom
