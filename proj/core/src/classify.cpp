#include "wk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wk/connection.hpp"
#include "wk/forms.hpp"

namespace wk {

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  j["verdicts"] = verdicts;
  j["residuals"] = residuals;
  j["tolerance"] = tolerance;
  j["samples"] = sample_count;
  return j;
}

namespace {

void record(ClassificationReport& r, const std::string& key, double v) {
  r.per_sample[key].push_back(v);
  auto [it, inserted] = r.residuals.emplace(key, v);
  if (!inserted) it->second = std::max(it->second, v);
}

bool below(const ClassificationReport& r, const char* key) {
  auto it = r.residuals.find(key);
  return it != r.residuals.end() && it->second < r.tolerance;
}

}  // namespace

ClassificationReport classify(const ManifoldSpec& spec, std::span<const ComplexPoint> samples,
                              double tol, const ClassifyOptions& options) {
  if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
  if (samples.size() < 8) throw DomainError("classification needs at least 8 sample points");
  if (!spec.differentiable()) {
    throw UnsupportedFamilyError("table_driven families cannot be classified");
  }
  const int n = spec.dim();

  ClassificationReport r;
  r.tolerance = tol;
  r.sample_count = static_cast<int>(samples.size());

  PForm f = fundamental_form(spec);
  PForm df = exterior_derivative(f);
  PForm dh = exterior_derivative(df);
  PForm da = exterior_derivative(gauge_form(spec));

  bool semi = options.semi != SemiMode::skip;
  ScalarField phi;
  PForm dphif(n, 3);
  if (semi) {
    phi = options.phi.valid() ? options.phi : scalar_curvature_field(spec);
    double peak = 0.0;
    for (const auto& p : samples) peak = std::max(peak, std::abs(phi(p.span())));
    if (!(peak > options.degenerate_threshold)) {
      if (options.semi == SemiMode::require) {
        throw DegenerateScalarError("phi vanishes on every sample; semi-Weyl-Kahler undefined");
      }
      r.notes.push_back("phi vanishes on every sample; semi-Weyl-Kahler conditions skipped");
      semi = false;
    } else {
      dphif = exterior_derivative(wedge(zero_form(n, phi), f));
    }
  }

  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    Eigen::MatrixXcd g = to_eigen(metric_matrix<0>(spec, p.span()));
    record(r, residual::kHermitian, (g - g.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());

    record(r, residual::kDF, df.max_abs(p));
    double amax = 0.0;
    for (Complex a : gauge_components<0>(spec, p.span())) amax = std::max(amax, std::abs(a));
    record(r, residual::kGaugeField, amax);

    auto conn = weyl_christoffel(spec, p);
    double mixed = 0.0;
    for (Complex c : conn.mixed.a) mixed = std::max(mixed, std::abs(c));
    record(r, residual::kMixedConnection, mixed);
    record(r, residual::kDH, dh.max_abs(p));
    record(r, residual::kDA, da.max_abs(p));

    if (semi) {
      record(r, residual::kNablaF, covariant_derivative_F(spec, p).max_abs());
      record(r, residual::kDPhiF, dphif.max_abs(p));
    }
  }
  r.residuals[residual::kMinEigenvalue] = min_eig;

  const bool hermitian = below(r, residual::kHermitian) && min_eig > 0.0;
  r.verdicts["hermitian"] = hermitian;
  r.verdicts["kahler"] = hermitian && below(r, residual::kDF) && below(r, residual::kGaugeField);
  r.verdicts["weyl_kahler"] = hermitian && below(r, residual::kMixedConnection) &&
                              below(r, residual::kDH) && below(r, residual::kDA);
  r.verdicts["semi_weyl_kahler"] =
      semi && hermitian && below(r, residual::kNablaF) && below(r, residual::kDPhiF);
  return r;
}

}  // namespace wk
