#pragma once

// Strict JSON descriptors for manifolds, curves, states and Bloch paths.
// Unknown keys, missing required keys and wrong types raise ParseError with
// the JSON pointer of the offending value.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wk/curve.hpp"
#include "wk/manifold.hpp"
#include "wk/state_space.hpp"

namespace wk::io {

using nlohmann::json;

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
json load_file(const std::filesystem::path& path);

/// [re, im] or a bare real number.
Complex parse_complex(const json& j, const std::string& path = "");
std::vector<Complex> parse_complex_vector(const json& j, const std::string& path = "");
/// Array of rows, each an array of complex entries.
Eigen::MatrixXcd parse_complex_matrix(const json& j, const std::string& path = "");

ScalarFunction parse_scalar_function(const json& j, const std::string& path = "");

/// {"dim", "metric": {"family", "params"}, "gauge": {"family", "params"}}.
ManifoldSpec parse_manifold(const json& j, const std::string& path = "");

/// {"kind": "circle"|"polyline"|"parametric_table", "params", "closed", "winding_hint"}.
Curve parse_curve(const json& j, int dim, const std::string& path = "");

struct StateDescriptor {
  StateVector state;
  std::optional<Observable> observable;
  int chart = 0;
};

/// Bare [[re, im], ...] array, or {"state", "inner_form", "observable", "chart"}.
StateDescriptor parse_state(const json& j, const std::string& path = "");

struct BlochPathDescriptor {
  BlochPath path;
  std::optional<int> steps;
  /// Colatitude for circles; unset for polygons.
  std::optional<double> theta;
};

/// {"kind": "colatitude_circle", "theta", "steps", "phi0", "magnitude"} or
/// {"kind": "polygon", "vertices": [[x, y, z], ...], "steps"}.
BlochPathDescriptor parse_bloch_path(const json& j, const std::string& path = "");

json to_json(Complex c);
json to_json(const Eigen::VectorXcd& v);
json to_json(const Eigen::MatrixXcd& m);

}  // namespace wk::io
