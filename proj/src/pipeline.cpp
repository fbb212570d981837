#include "boxmf/pipeline.hpp"

namespace boxmf {

DayAnalysis analyze_series(std::span<const double> values, const BoxScheme& scheme,
                           const MomentGrid& grid) {
  PartitionSurface surface = partition_surface(values, scheme, grid);
  MassExponents exponents = fit_mass_exponents(surface);
  TauLinearity linearity = tau_linearity_report(exponents);
  SingularitySpectrum spectrum = legendre_spectrum(exponents);
  return {std::move(surface), std::move(exponents), linearity, std::move(spectrum)};
}

DayAnalysis analyze_series(const PriceSeries& series, const BoxScheme& scheme,
                           const MomentGrid& grid) {
  return analyze_series(series.values(), scheme, grid);
}

SpectrumStats spectrum_point_canonical(std::span<const double> canonical_values,
                                       const BoxScheme& scheme, const MomentGrid& grid) {
  const PartitionSurface surface = partition_surface_canonical(canonical_values, scheme, grid);
  return spectrum_stats(legendre_spectrum(fit_mass_exponents(surface)));
}

}  // namespace boxmf
