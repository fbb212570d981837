#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxmf/ingest.hpp"
#include "boxmf/partition.hpp"
#include "boxmf/spectrum.hpp"

namespace boxmf {

struct BootstrapConfig {
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 0;
  double significance_level = 0.05;
  /// Worker threads for replicates; 0 means one per hardware thread. Has no
  /// effect on the results.
  unsigned workers = 0;

  /// Throws ConfigError unless replicates >= 1 and 0 < level < 1.
  void validate() const;
};

/// Fitted scatter law F_rnd = k * delta_alpha_rnd + b.
struct ScatterLine {
  double k = 0.0;
  double b = 0.0;
};

struct BootstrapReport {
  std::string day;
  SpectrumStats original;
  std::vector<SpectrumStats> replicates;
  /// Empty when every replicate has the same delta_alpha.
  std::optional<ScatterLine> line;
  /// #{delta_alpha <= delta_alpha_rnd} / B
  double p1 = 0.0;
  /// #{F >= F_rnd} / B
  double p2 = 0.0;
  double significance_level = 0.05;
  bool significant_1 = false;
  bool significant_2 = false;
};

/// Fisher-Yates permutation driven by Rng(replicate_seed(master_seed,
/// replicate_index)); position i (from the end) swaps with below(i + 1).
std::vector<double> shuffle_values(std::span<const double> values, std::uint64_t replicate_index,
                                   std::uint64_t master_seed);
PriceSeries shuffle_series(const PriceSeries& series, std::uint64_t replicate_index,
                           std::uint64_t master_seed);

/// OLS of F_rnd on delta_alpha_rnd. Throws NumericError on fewer than two
/// points or when all delta_alpha values coincide.
ScatterLine scatter_fit(std::span<const SpectrumStats> replicates);

/// Analyzes the series and B shuffles of it, then fits the scatter law and
/// computes both p-values with plain (uncorrected) fractions.
BootstrapReport bootstrap_analysis(const PriceSeries& series, const BoxScheme& scheme,
                                   const MomentGrid& grid, const BootstrapConfig& config);

struct BatchSummary {
  struct Day {
    std::string day;
    double p1 = 0.0;
    double p2 = 0.0;
    bool significant_1 = false;
    bool significant_2 = false;
  };
  double significance_level = 0.05;
  std::size_t day_count = 0;
  /// Percentages (0-100) of days with p <= level.
  double pct_p1_significant = 0.0;
  double pct_p2_significant = 0.0;
  std::vector<Day> per_day;
};

/// Throws ConfigError on empty input or a level outside (0, 1).
BatchSummary batch_summary(std::span<const BootstrapReport> reports, double level);

}  // namespace boxmf
