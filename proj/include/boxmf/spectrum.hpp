#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxmf/partition.hpp"
#include "boxmf/scaling.hpp"

namespace boxmf {

/// Singularity spectrum (alpha(q), f(alpha(q))) with its width and midpoint
/// height.
struct SingularitySpectrum {
  MomentGrid grid;
  std::vector<double> alpha;
  std::vector<double> f;
  std::size_t alpha_min_index = 0;
  std::size_t alpha_max_index = 0;
  /// alpha_max - alpha_min over the whole grid.
  double delta_alpha = 0.0;
  /// [f(alpha_min) + f(alpha_max)] / 2.
  double F = 0.0;
};

/// Legendre transform of tau sampled on `grid`. alpha = dtau/dq uses the
/// three-point non-uniform central difference inside the grid and the
/// three-point one-sided formula at both ends, so it is exact for quadratic
/// tau. f = q * alpha - tau. Extremes of alpha are searched over the whole
/// grid; among tied minima the largest q wins, among tied maxima the
/// smallest q. Throws ConfigError if the grid has fewer than 3 points.
SingularitySpectrum legendre_spectrum(const MomentGrid& grid, std::span<const double> tau);
SingularitySpectrum legendre_spectrum(const MassExponents& me);

struct SpectrumStats {
  double delta_alpha = 0.0;
  double F = 0.0;
};

inline SpectrumStats spectrum_stats(const SingularitySpectrum& spec) {
  return {spec.delta_alpha, spec.F};
}

}  // namespace boxmf
