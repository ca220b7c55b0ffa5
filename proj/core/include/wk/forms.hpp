#pragma once

// Differential forms in the mixed dz / dzbar basis.
//
// A p-form stores one coefficient field per strictly increasing index tuple
// over the 2n Yano indices (0..n-1 for dz^mu, n..2n-1 for dzbar^mu). Forms of
// degree above 2n are representable but always empty.

#include <map>
#include <span>
#include <vector>

#include "wk/field.hpp"
#include "wk/manifold.hpp"

namespace wk {

using IndexTuple = std::vector<int>;

class PForm {
 public:
  PForm(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, ScalarField>& terms() const { return terms_; }

  /// Adds coeff dz^{i_1} ^ ... ^ dz^{i_p}. Indices may come in any order; the
  /// permutation sign is absorbed and repeated indices drop the term.
  void add(IndexTuple indices, const ScalarField& coeff);

  std::map<IndexTuple, Complex> evaluate(const ComplexPoint& p) const;
  double max_abs(const ComplexPoint& p) const;
  double max_abs(std::span<const ComplexPoint> samples) const;

  /// Conjugate form: every index swaps barred/unbarred, coefficients conjugate.
  PForm conjugated() const;
  PForm scaled(Complex c) const;
  /// Depth of dual levels still available on every coefficient.
  int depth() const;

  /// Marks the form as real (equal to its conjugate); informational.
  bool self_conjugate() const { return self_conjugate_; }
  void set_self_conjugate(bool v) { self_conjugate_ = v; }

  friend PForm operator+(const PForm& a, const PForm& b);
  friend PForm operator-(const PForm& a, const PForm& b);

 private:
  int dim_;
  int degree_;
  std::map<IndexTuple, ScalarField> terms_;
  bool self_conjugate_ = false;
};

/// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(IndexTuple& idx);

PForm zero_form(int dim, const ScalarField& f);

PForm wedge(const PForm& a, const PForm& b);

PForm exterior_derivative(const PForm& a);

/// A = A_mu dz^mu + A_mubar dzbar^mu.
PForm gauge_form(const ManifoldSpec& spec);

/// F = 2i g_{mu nubar} dz^mu ^ dzbar^nu.
PForm fundamental_form(const ManifoldSpec& spec);

struct GaugeThreeForm {
  PForm h;             // dF
  PForm wedge_form;    // 2 A ^ F
  double max_discrepancy = 0.0;  // max over samples of |dF - 2 A ^ F|
};

GaugeThreeForm gauge_three_form(const ManifoldSpec& spec, std::span<const ComplexPoint> samples);

/// phi F; throws DegenerateScalarError when phi vanishes on every sample.
PForm semi_weyl_form(const ManifoldSpec& spec, const ScalarField& phi,
                     std::span<const ComplexPoint> samples, double threshold = 1e-12);

}  // namespace wk
