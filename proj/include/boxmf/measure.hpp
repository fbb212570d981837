#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxmf/ingest.hpp"

namespace boxmf {

/// Box masses mu(n; l) of a series tiled by non-overlapping windows of
/// length l, with their normalized log-weights ln(mu_n / sum_m mu_m).
/// The total is accumulated over the sorted masses, so it is invariant under
/// reordering of the boxes. Immutable once built.
class BoxMeasure {
 public:
  std::size_t box_size() const { return box_size_; }
  std::size_t box_count() const { return raw_mass_.size(); }
  std::span<const double> raw_mass() const { return raw_mass_; }
  std::span<const double> log_weights() const { return log_weights_; }
  double total_mass() const { return total_mass_; }
  double max_log_weight() const { return max_log_weight_; }
  double min_log_weight() const { return min_log_weight_; }
  /// Log-weights in ascending order. Moments summed in this order depend
  /// only on the multiset of box masses, not on the box order.
  std::span<const double> sorted_log_weights() const { return sorted_log_weights_; }

 private:
  friend BoxMeasure build_box_measure(std::span<const double> values, std::size_t box_size);

  std::size_t box_size_ = 0;
  std::vector<double> raw_mass_;
  std::vector<double> log_weights_;
  std::vector<double> sorted_log_weights_;
  double total_mass_ = 0.0;
  double max_log_weight_ = 0.0;
  double min_log_weight_ = 0.0;
};

/// Throws ConfigError when box_size does not divide the length, NumericError
/// on a non-positive or non-finite value.
BoxMeasure build_box_measure(std::span<const double> values, std::size_t box_size);
BoxMeasure build_box_measure(const PriceSeries& series, std::size_t box_size);

/// Rescales a positive series to a canonical representative of its ray
/// {c * x : c > 0}. Each value is read through its shortest round-trip
/// decimal form, the decimals are brought to a common exponent, and the
/// resulting integers are divided by their gcd. Any decimal rescaling of the
/// input (e.g. prices x 7.3 written as text) therefore maps to bit-identical
/// output. Falls back to returning the input unchanged when the aligned
/// integers do not fit in 127 bits.
std::vector<double> scale_canonical(std::span<const double> values);

}  // namespace boxmf
