#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "boxmf/ingest.hpp"

namespace boxmf {

/// Constant series. Throws ConfigError if T < 2 or value <= 0.
PriceSeries constant_series(std::size_t length, double value, std::string day_id = "synthetic");

enum class NoiseKind {
  /// level * exp(sigma * z_t), z_t i.i.d. standard normal.
  iid_lognormal,
  /// level * exp(sigma * (z_1 + ... + z_t)), a geometric walk started at level.
  intraday_walk,
};

/// Parses "iid-lognormal" / "iid" and "intraday-walk" / "walk".
NoiseKind parse_noise_kind(std::string_view name);

struct NoiseParams {
  double sigma = 0.01;
  double level = 1.0;
};

/// Deterministic given the seed. Throws ConfigError on T < 2, a negative or
/// non-finite sigma, or a non-positive level.
PriceSeries random_positive_series(std::size_t length, NoiseKind kind, const NoiseParams& params,
                                   std::uint64_t seed, std::string day_id = "synthetic");

/// Binomial multiplicative cascade with 2^levels leaves.
struct CascadeSpec {
  double p = 0.6;
  unsigned levels = 12;
  double total_mass = 1.0;

  /// Throws ConfigError unless 0 < p < 1, 1 <= levels <= 30, total_mass > 0.
  void validate() const;
};

/// Splits total_mass `levels` times, fraction p to one child and 1 - p to
/// the other. Without a seed p always goes left; with a seed each node picks
/// its orientation by a fair coin.
PriceSeries binomial_cascade(const CascadeSpec& spec, std::optional<std::uint64_t> seed = {},
                             std::string day_id = "synthetic");

/// tau(q) = -log2(p^q + (1 - p)^q). Throws ConfigError unless 0 < p < 1.
double analytic_binomial_tau(double p, double q);
/// alpha(q) = dtau/dq in closed form.
double analytic_binomial_alpha(double p, double q);
/// f(alpha(q)) = q alpha(q) - tau(q).
double analytic_binomial_f(double p, double q);
/// |log2(p / (1 - p))|, the width of the full spectrum (q -> +-infinity).
double analytic_binomial_delta_alpha_limit(double p);

}  // namespace boxmf
