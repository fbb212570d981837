#include "boxmf/spectrum.hpp"

#include "boxmf/errors.hpp"

namespace boxmf {

namespace {

// Derivative at x0 of the parabola through (x0,y0), (x1,y1), (x2,y2).
double parabola_slope_at(double at, double x0, double y0, double x1, double y1, double x2,
                         double y2) {
  const double d0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
  const double d1 = (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
  const double d2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
  return d0 * y0 + d1 * y1 + d2 * y2;
}

}  // namespace

SingularitySpectrum legendre_spectrum(const MomentGrid& grid, std::span<const double> tau) {
  const std::size_t n = grid.size();
  if (n < 3) throw ConfigError("Legendre transform needs at least 3 grid points");
  if (tau.size() != n) throw NumericError("tau does not match the moment grid");
  const auto q = grid.values();

  SingularitySpectrum spec{grid, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i == 0 ? 1 : (i == n - 1 ? n - 2 : i);
    if (c == i) {
      // Interior: central difference weighted for uneven spacing.
      const double h1 = q[i] - q[i - 1];
      const double h2 = q[i + 1] - q[i];
      spec.alpha[i] =
          (h1 * h1 * tau[i + 1] - h2 * h2 * tau[i - 1] + (h2 * h2 - h1 * h1) * tau[i]) /
          (h1 * h2 * (h1 + h2));
    } else {
      spec.alpha[i] = parabola_slope_at(q[i], q[c - 1], tau[c - 1], q[c], tau[c], q[c + 1],
                                        tau[c + 1]);
    }
    spec.f[i] = q[i] * spec.alpha[i] - tau[i];
  }

  std::size_t imin = 0;
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (spec.alpha[i] <= spec.alpha[imin]) imin = i;
    if (spec.alpha[i] > spec.alpha[imax]) imax = i;
  }
  spec.alpha_min_index = imin;
  spec.alpha_max_index = imax;
  spec.delta_alpha = spec.alpha[imax] - spec.alpha[imin];
  spec.F = 0.5 * (spec.f[imin] + spec.f[imax]);
  return spec;
}

SingularitySpectrum legendre_spectrum(const MassExponents& me) {
  return legendre_spectrum(me.grid, me.tau);
}

}  // namespace boxmf
