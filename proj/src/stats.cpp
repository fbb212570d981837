#include "boxmf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "boxmf/errors.hpp"

namespace boxmf {

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw NumericError("fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw NumericError("fit_line: need at least two points");

  const double mx = compensated_sum(x) / static_cast<double>(n);
  const double my = compensated_sum(y) / static_cast<double>(n);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  const double Sxx = sxx.value();
  const double Sxy = sxy.value();
  const double Syy = syy.value();
  if (!(Sxx > 0.0)) throw NumericError("fit_line: all x values are identical");

  LineFit fit;
  fit.slope = Sxy / Sxx;
  fit.intercept = my - fit.slope * mx;

  CompensatedSum ssr;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr.add(res * res);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(res));
  }
  fit.slope_stderr =
      n > 2 ? std::sqrt(std::max(ssr.value(), 0.0) / static_cast<double>(n - 2) / Sxx) : 0.0;

  // Degenerate convention: an exact fit (or y flat to round-off on a unit log
  // scale) reports r = sign(slope).
  double y_scale = 1.0;
  for (double v : y) y_scale = std::max(y_scale, std::abs(v));
  const double flat = 64.0 * std::numeric_limits<double>::epsilon() * y_scale;
  const bool y_flat = Syy <= static_cast<double>(n) * flat * flat;
  if (!y_flat && ssr.value() > 0.0) {
    fit.r = std::clamp(Sxy / std::sqrt(Sxx * Syy), -1.0, 1.0);
  } else {
    fit.r = fit.slope < 0.0 ? -1.0 : 1.0;
  }
  return fit;
}

}  // namespace boxmf
