#pragma once

#include <utility>
#include <vector>

namespace cgolab {

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (tau, value)
  double exponent = 0.0;                          // -slope of log v against log tau
  double intercept = 0.0;                         // log v at log tau = 0
  double r2 = 1.0;
};

/// Least-squares line through (log tau_i, log v_i). Needs >= 3 points and
/// v_i > 0. r2 is 1 when the values are exactly constant.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

RateFit fit_rate(const std::vector<double>& taus, const std::vector<double>& values);

}  // namespace cgolab
