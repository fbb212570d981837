#pragma once

#include <vector>

#include "boxmf/partition.hpp"

namespace boxmf {

/// Mass exponents tau(q) from log-log fits of chi_q(l) against l.
struct MassExponents {
  MomentGrid grid;
  std::vector<double> tau;
  /// Pearson correlation of each per-q log-log fit.
  std::vector<double> r;
  /// Slope of the straight line through (q, tau(q)), with its OLS standard
  /// error and the correlation of that line fit.
  double alpha_bar = 0.0;
  double alpha_bar_stderr = 0.0;
  double tau_line_r = 0.0;
};

/// tau(q) is the unweighted OLS slope of ln chi_q(l) on ln l over every box
/// size in the scheme.
MassExponents fit_mass_exponents(const PartitionSurface& surface);

struct TauLinearity {
  double alpha_bar = 0.0;
  double alpha_bar_stderr = 0.0;
  double intercept = 0.0;
  double max_abs_residual_from_line = 0.0;
};

/// Best straight line through (q, tau(q)) and the largest deviation from it.
TauLinearity tau_linearity_report(const MassExponents& me);

}  // namespace boxmf
