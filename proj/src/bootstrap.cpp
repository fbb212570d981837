#include "boxmf/bootstrap.hpp"

#include <utility>

#include "boxmf/errors.hpp"
#include "boxmf/measure.hpp"
#include "boxmf/parallel.hpp"
#include "boxmf/pipeline.hpp"
#include "boxmf/rng.hpp"
#include "boxmf/stats.hpp"

namespace boxmf {

void BootstrapConfig::validate() const {
  if (replicates < 1) throw ConfigError("bootstrap needs at least 1 replicate");
  if (!(significance_level > 0.0 && significance_level < 1.0)) {
    throw ConfigError("significance level must lie in (0, 1)");
  }
}

std::vector<double> shuffle_values(std::span<const double> values, std::uint64_t replicate_index,
                                   std::uint64_t master_seed) {
  std::vector<double> out(values.begin(), values.end());
  Rng rng(replicate_seed(master_seed, replicate_index));
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

PriceSeries shuffle_series(const PriceSeries& series, std::uint64_t replicate_index,
                           std::uint64_t master_seed) {
  return PriceSeries(series.day_id(), shuffle_values(series.values(), replicate_index, master_seed));
}

ScatterLine scatter_fit(std::span<const SpectrumStats> replicates) {
  if (replicates.size() < 2) throw NumericError("scatter fit needs at least 2 replicates");
  std::vector<double> x(replicates.size());
  std::vector<double> y(replicates.size());
  for (std::size_t i = 0; i < replicates.size(); ++i) {
    x[i] = replicates[i].delta_alpha;
    y[i] = replicates[i].F;
  }
  bool spread = false;
  for (double v : x) spread = spread || v != x.front();
  if (!spread) throw NumericError("scatter is unfittable: every delta_alpha is identical");
  const LineFit fit = fit_line(x, y);
  return {fit.slope, fit.intercept};
}

BootstrapReport bootstrap_analysis(const PriceSeries& series, const BoxScheme& scheme,
                                   const MomentGrid& grid, const BootstrapConfig& config) {
  config.validate();
  // Canonicalization is elementwise with permutation-invariant constants, so
  // shuffling the canonical values equals canonicalizing each shuffle.
  const std::vector<double> canonical = scale_canonical(series.values());

  BootstrapReport report;
  report.day = series.day_id();
  report.significance_level = config.significance_level;
  report.original = spectrum_point_canonical(canonical, scheme, grid);
  report.replicates.resize(config.replicates);

  parallel_for(config.replicates, config.workers, [&](std::size_t b) {
    const std::vector<double> shuffled = shuffle_values(canonical, b, config.master_seed);
    report.replicates[b] = spectrum_point_canonical(shuffled, scheme, grid);
  });

  std::size_t wider = 0;
  std::size_t higher = 0;
  for (const auto& rep : report.replicates) {
    if (report.original.delta_alpha <= rep.delta_alpha) ++wider;
    if (report.original.F >= rep.F) ++higher;
  }
  const auto count = static_cast<double>(config.replicates);
  report.p1 = static_cast<double>(wider) / count;
  report.p2 = static_cast<double>(higher) / count;
  report.significant_1 = report.p1 <= config.significance_level;
  report.significant_2 = report.p2 <= config.significance_level;

  try {
    report.line = scatter_fit(report.replicates);
  } catch (const NumericError&) {
    report.line.reset();
  }
  return report;
}

BatchSummary batch_summary(std::span<const BootstrapReport> reports, double level) {
  if (reports.empty()) throw ConfigError("batch summary needs at least one report");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("significance level must lie in (0, 1)");
  BatchSummary summary;
  summary.significance_level = level;
  summary.day_count = reports.size();
  std::size_t sig1 = 0;
  std::size_t sig2 = 0;
  for (const auto& r : reports) {
    const bool s1 = r.p1 <= level;
    const bool s2 = r.p2 <= level;
    sig1 += s1;
    sig2 += s2;
    summary.per_day.push_back({r.day, r.p1, r.p2, s1, s2});
  }
  const auto n = static_cast<double>(reports.size());
  summary.pct_p1_significant = 100.0 * static_cast<double>(sig1) / n;
  summary.pct_p2_significant = 100.0 * static_cast<double>(sig2) / n;
  return summary;
}

}  // namespace boxmf
