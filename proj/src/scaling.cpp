#include "boxmf/scaling.hpp"

#include <cmath>

#include "boxmf/errors.hpp"
#include "boxmf/stats.hpp"

namespace boxmf {

MassExponents fit_mass_exponents(const PartitionSurface& surface) {
  const auto& scheme = surface.scheme();
  if (scheme.size() < 2) throw NumericError("need at least 2 box sizes to fit tau(q)");

  std::vector<double> log_l(scheme.size());
  for (std::size_t j = 0; j < scheme.size(); ++j) {
    log_l[j] = std::log(static_cast<double>(scheme.sizes()[j]));
  }

  const auto& grid = surface.grid();
  MassExponents me{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const LineFit fit = fit_line(log_l, surface.row(i));
    me.tau[i] = fit.slope;
    me.r[i] = fit.r;
  }

  const LineFit line = fit_line(grid.values(), me.tau);
  me.alpha_bar = line.slope;
  me.alpha_bar_stderr = line.slope_stderr;
  me.tau_line_r = line.r;
  return me;
}

TauLinearity tau_linearity_report(const MassExponents& me) {
  const LineFit line = fit_line(me.grid.values(), me.tau);
  return {line.slope, line.slope_stderr, line.intercept, line.max_abs_residual};
}

}  // namespace boxmf
