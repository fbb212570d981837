#include "boxmf/synth.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "boxmf/errors.hpp"
#include "boxmf/rng.hpp"

namespace boxmf {

namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("cascade p must lie in (0, 1)");
}

}  // namespace

PriceSeries constant_series(std::size_t length, double value, std::string day_id) {
  if (length < 2) throw ConfigError("series length must be at least 2");
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("constant value must be positive");
  return PriceSeries(std::move(day_id), std::vector<double>(length, value));
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "iid-lognormal" || name == "iid") return NoiseKind::iid_lognormal;
  if (name == "intraday-walk" || name == "walk") return NoiseKind::intraday_walk;
  throw ConfigError("unknown noise kind '" + std::string(name) + "'");
}

PriceSeries random_positive_series(std::size_t length, NoiseKind kind, const NoiseParams& params,
                                   std::uint64_t seed, std::string day_id) {
  if (length < 2) throw ConfigError("series length must be at least 2");
  if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma)) {
    throw ConfigError("sigma must be finite and non-negative");
  }
  if (!(params.level > 0.0) || !std::isfinite(params.level)) {
    throw ConfigError("level must be positive");
  }
  Rng rng(splitmix64(seed));
  std::vector<double> values(length);
  double log_offset = 0.0;
  for (std::size_t t = 0; t < length; ++t) {
    double v = 0.0;
    do {
      const double step = params.sigma * rng.normal();
      if (kind == NoiseKind::intraday_walk) {
        if (t > 0) log_offset += step;
        v = params.level * std::exp(log_offset);
      } else {
        v = params.level * std::exp(step);
      }
    } while (!(v > 0.0) || !std::isfinite(v));
    values[t] = v;
  }
  return PriceSeries(std::move(day_id), std::move(values));
}

void CascadeSpec::validate() const {
  check_probability(p);
  if (levels < 1 || levels > 30) throw ConfigError("cascade levels must lie in [1, 30]");
  if (!(total_mass > 0.0) || !std::isfinite(total_mass)) {
    throw ConfigError("cascade total mass must be positive");
  }
}

PriceSeries binomial_cascade(const CascadeSpec& spec, std::optional<std::uint64_t> seed,
                             std::string day_id) {
  spec.validate();
  std::optional<Rng> rng;
  if (seed) rng.emplace(splitmix64(*seed));
  std::vector<double> mass{spec.total_mass};
  for (unsigned level = 0; level < spec.levels; ++level) {
    std::vector<double> next(mass.size() * 2);
    for (std::size_t i = 0; i < mass.size(); ++i) {
      double left = spec.p;
      double right = 1.0 - spec.p;
      if (rng && rng->uniform() < 0.5) std::swap(left, right);
      next[2 * i] = mass[i] * left;
      next[2 * i + 1] = mass[i] * right;
    }
    mass = std::move(next);
  }
  return PriceSeries(std::move(day_id), std::move(mass));
}

double analytic_binomial_tau(double p, double q) {
  check_probability(p);
  const double a = q * std::log(p);
  const double b = q * std::log1p(-p);
  const double m = std::max(a, b);
  return -(m + std::log(std::exp(a - m) + std::exp(b - m))) / std::numbers::ln2;
}

double analytic_binomial_alpha(double p, double q) {
  check_probability(p);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double a = q * lp;
  const double b = q * lq;
  const double m = std::max(a, b);
  const double wa = std::exp(a - m);
  const double wb = std::exp(b - m);
  return -(wa * lp + wb * lq) / ((wa + wb) * std::numbers::ln2);
}

double analytic_binomial_f(double p, double q) {
  return q * analytic_binomial_alpha(p, q) - analytic_binomial_tau(p, q);
}

double analytic_binomial_delta_alpha_limit(double p) {
  check_probability(p);
  return std::abs(std::log2(p / (1.0 - p)));
}

}  // namespace boxmf
