#pragma once

#include <span>

#include "boxmf/ingest.hpp"
#include "boxmf/partition.hpp"
#include "boxmf/scaling.hpp"
#include "boxmf/spectrum.hpp"

namespace boxmf {

/// Everything computed for one series.
struct DayAnalysis {
  PartitionSurface surface;
  MassExponents exponents;
  TauLinearity linearity;
  SingularitySpectrum spectrum;
};

/// measure -> partition -> scaling -> spectrum on one series.
DayAnalysis analyze_series(std::span<const double> values, const BoxScheme& scheme,
                           const MomentGrid& grid);
DayAnalysis analyze_series(const PriceSeries& series, const BoxScheme& scheme,
                           const MomentGrid& grid);

/// (delta_alpha, F) of a series whose scale is already canonical.
SpectrumStats spectrum_point_canonical(std::span<const double> canonical_values,
                                       const BoxScheme& scheme, const MomentGrid& grid);

}  // namespace boxmf
