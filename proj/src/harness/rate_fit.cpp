#include "cgolab/harness/rate_fit.hpp"

#include <algorithm>
#include <cmath>

#include "cgolab/errors.hpp"

namespace cgolab {

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw InvalidArgument("rate fit needs at least 3 points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [t, v] : points) {
    if (!(t > 0.0) || !(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("rate fit needs positive tau and positive finite values");
    }
    mx += std::log(t);
    my += std::log(v);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [t, v] : points) {
    const double dx = std::log(t) - mx;
    const double dy = std::log(v) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InvalidArgument("rate fit needs at least two distinct tau values");
  RateFit fit;
  fit.points = points;
  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

RateFit fit_rate(const std::vector<double>& taus, const std::vector<double>& values) {
  if (taus.size() != values.size()) throw InvalidArgument("tau and value counts differ");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < taus.size(); ++k) pts.emplace_back(taus[k], values[k]);
  return fit_rate(pts);
}

}  // namespace cgolab
