#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxmf/ingest.hpp"
#include "boxmf/measure.hpp"

namespace boxmf {

/// Strictly increasing, finite moment orders q. Always contains 0 and 1.
class MomentGrid {
 public:
  /// Throws ConfigError if the values are not strictly increasing and finite,
  /// or if 0 or 1 is missing.
  explicit MomentGrid(std::vector<double> q_values);

  /// q_min, q_min + step, ..., q_max. Points within 1e-9 * step of an
  /// integer are snapped onto it so 0 and 1 are represented exactly.
  static MomentGrid uniform(double q_min, double q_max, double step);

  /// Integers -120..120.
  static MomentGrid standard() { return uniform(-120.0, 120.0, 1.0); }

  std::span<const double> values() const { return q_; }
  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t i) const { return q_[i]; }
  double front() const { return q_.front(); }
  double back() const { return q_.back(); }
  /// Index of an exact grid value; throws ConfigError when absent.
  std::size_t index_of(double q) const;

 private:
  std::vector<double> q_;
};

/// ln chi_q(l) over a (q, l) grid; rows are q, columns are box sizes.
class PartitionSurface {
 public:
  PartitionSurface(MomentGrid grid, BoxScheme scheme, std::vector<double> log_chi);

  const MomentGrid& grid() const { return grid_; }
  const BoxScheme& scheme() const { return scheme_; }
  double log_chi(std::size_t q_index, std::size_t l_index) const {
    return log_chi_[q_index * scheme_.size() + l_index];
  }
  std::span<const double> row(std::size_t q_index) const {
    return std::span(log_chi_).subspan(q_index * scheme_.size(), scheme_.size());
  }

 private:
  MomentGrid grid_;
  BoxScheme scheme_;
  std::vector<double> log_chi_;
};

/// ln sum_n u_n^q, evaluated as s + ln sum_n exp(q ln u_n - s) with
/// s = max_n q ln u_n. Finite for either sign of q.
double log_partition_value(const BoxMeasure& measure, double q);

/// Evaluates the surface after canonicalizing the scale of `values` (see
/// scale_canonical). Each cell depends only on its own (q, l).
PartitionSurface partition_surface(std::span<const double> values, const BoxScheme& scheme,
                                   const MomentGrid& grid);
PartitionSurface partition_surface(const PriceSeries& series, const BoxScheme& scheme,
                                   const MomentGrid& grid);

/// Same as partition_surface but skips canonicalization; `values` must
/// already be canonical. Used on the bootstrap hot path.
PartitionSurface partition_surface_canonical(std::span<const double> values,
                                             const BoxScheme& scheme, const MomentGrid& grid);

}  // namespace boxmf
