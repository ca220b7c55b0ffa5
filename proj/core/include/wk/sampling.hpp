#pragma once

#include <cstdint>
#include <vector>

#include "wk/manifold.hpp"

namespace wk {

struct PolydiscSampling {
  double r_min = 0.05;
  double r_max = 0.9;
  int chart = 0;
};

/// Deterministic low-discrepancy points in the polydisc r_min <= |z^mu| <= r_max.
/// Halton sequence over 2n bases with a seed-derived Cranley-Patterson shift.
std::vector<ComplexPoint> polydisc_samples(int dim, int count, std::uint64_t seed = 0,
                                           const PolydiscSampling& opts = {});

}  // namespace wk
