#include "boxmf/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxmf/errors.hpp"

namespace boxmf {

MomentGrid::MomentGrid(std::vector<double> q_values) : q_(std::move(q_values)) {
  if (q_.size() < 3) throw ConfigError("moment grid needs at least 3 points");
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!std::isfinite(q_[i])) throw ConfigError("moment grid contains a non-finite q");
    if (i > 0 && !(q_[i] > q_[i - 1])) {
      throw ConfigError("moment grid must be strictly increasing");
    }
  }
  if (!std::binary_search(q_.begin(), q_.end(), 0.0) ||
      !std::binary_search(q_.begin(), q_.end(), 1.0)) {
    throw ConfigError("moment grid must contain q = 0 and q = 1");
  }
}

MomentGrid MomentGrid::uniform(double q_min, double q_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("q step must be positive");
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_min < q_max)) {
    throw ConfigError("q range must satisfy q_min < q_max");
  }
  const double span = (q_max - q_min) / step;
  const double intervals = std::round(span);
  if (std::abs(span - intervals) > 1e-9 * std::max(1.0, span)) {
    throw ConfigError("q range is not a whole number of steps");
  }
  if (intervals > 1e7) throw ConfigError("moment grid too large");
  const auto n = static_cast<std::size_t>(intervals) + 1;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = q_min + static_cast<double>(i) * step;
    const double nearest = std::round(v);
    if (std::abs(v - nearest) <= 1e-9 * step) v = nearest;
    q[i] = v;
  }
  q.back() = q_max;
  return MomentGrid(std::move(q));
}

std::size_t MomentGrid::index_of(double q) const {
  const auto it = std::lower_bound(q_.begin(), q_.end(), q);
  if (it == q_.end() || *it != q) {
    throw ConfigError("q = " + std::to_string(q) + " is not on the moment grid");
  }
  return static_cast<std::size_t>(it - q_.begin());
}

PartitionSurface::PartitionSurface(MomentGrid grid, BoxScheme scheme, std::vector<double> log_chi)
    : grid_(std::move(grid)), scheme_(std::move(scheme)), log_chi_(std::move(log_chi)) {
  if (log_chi_.size() != grid_.size() * scheme_.size()) {
    throw NumericError("partition surface has the wrong number of cells");
  }
}

double log_partition_value(const BoxMeasure& measure, double q) {
  // max_n q*ln(u_n) is attained at the largest weight for q >= 0 and at the
  // smallest for q < 0.
  const double shift = q >= 0.0 ? q * measure.max_log_weight() : q * measure.min_log_weight();
  double sum = 0.0;
  for (double lw : measure.sorted_log_weights()) sum += std::exp(q * lw - shift);
  return shift + std::log(sum);
}

PartitionSurface partition_surface_canonical(std::span<const double> values,
                                             const BoxScheme& scheme, const MomentGrid& grid) {
  if (values.size() != scheme.series_length()) {
    throw ConfigError("box scheme is for length " + std::to_string(scheme.series_length()) +
                      " but the series has length " + std::to_string(values.size()));
  }
  const std::size_t cols = scheme.size();
  std::vector<double> log_chi(grid.size() * cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const BoxMeasure measure = build_box_measure(values, scheme.sizes()[j]);
    if (measure.box_count() == 1) {
      for (std::size_t i = 0; i < grid.size(); ++i) log_chi[i * cols + j] = 0.0;
      continue;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = log_partition_value(measure, grid[i]);
      if (!std::isfinite(v)) {
        throw NumericError("ln chi is not finite at q = " + std::to_string(grid[i]) +
                           ", l = " + std::to_string(scheme.sizes()[j]));
      }
      log_chi[i * cols + j] = v;
    }
  }
  return PartitionSurface(grid, scheme, std::move(log_chi));
}

PartitionSurface partition_surface(std::span<const double> values, const BoxScheme& scheme,
                                   const MomentGrid& grid) {
  const std::vector<double> canonical = scale_canonical(values);
  return partition_surface_canonical(canonical, scheme, grid);
}

PartitionSurface partition_surface(const PriceSeries& series, const BoxScheme& scheme,
                                   const MomentGrid& grid) {
  return partition_surface(series.values(), scheme, grid);
}

}  // namespace boxmf
