#pragma once

// Sample-based geometry classification: Hermitian, Kähler, Weyl-Kähler and
// semi-Weyl-Kähler verdicts from maximal residuals of the defining conditions.

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wk/field.hpp"
#include "wk/manifold.hpp"

namespace wk {

enum class SemiMode {
  skip,       // do not evaluate the semi-Weyl-Kähler conditions
  automatic,  // evaluate unless phi vanishes on every sample
  require,    // evaluate; DegenerateScalarError if phi vanishes
};

struct ClassifyOptions {
  SemiMode semi = SemiMode::automatic;
  /// Overrides scalar curvature as phi when set.
  ScalarField phi;
  double degenerate_threshold = 1e-12;
};

struct ClassificationReport {
  std::map<std::string, bool> verdicts;
  std::map<std::string, double> residuals;
  /// Residual per condition per sample, in sample order.
  std::map<std::string, std::vector<double>> per_sample;
  int sample_count = 0;
  double tolerance = 0.0;
  std::vector<std::string> notes;

  /// {"verdicts", "residuals", "tolerance", "samples"}.
  nlohmann::json to_json() const;
};

/// Condition names used as residual keys.
namespace residual {
inline constexpr const char* kHermitian = "hermitian";
inline constexpr const char* kMinEigenvalue = "min_eigenvalue";
inline constexpr const char* kDF = "dF";
inline constexpr const char* kGaugeField = "gauge_field";
inline constexpr const char* kMixedConnection = "weyl_mixed_connection";
inline constexpr const char* kDH = "dH";
inline constexpr const char* kDA = "dA";
inline constexpr const char* kNablaF = "nabla_F";
inline constexpr const char* kDPhiF = "d_phiF";
}  // namespace residual

ClassificationReport classify(const ManifoldSpec& spec, std::span<const ComplexPoint> samples,
                              double tol, const ClassifyOptions& options = {});

}  // namespace wk
