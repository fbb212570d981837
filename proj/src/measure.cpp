#include "boxmf/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "boxmf/errors.hpp"
#include "boxmf/stats.hpp"

namespace boxmf {

namespace {

__extension__ typedef unsigned __int128 u128;

struct Decimal {
  std::uint64_t mantissa = 0;
  int exponent = 0;
};

// Shortest round-trip decimal form of a positive finite double.
bool to_decimal(double v, Decimal& out) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  if (ec != std::errc()) return false;
  // Shape: d[.ddd]e[+-]xx
  std::uint64_t mantissa = 0;
  int frac_digits = 0;
  bool in_frac = false;
  const char* p = buf;
  for (; p != end && *p != 'e'; ++p) {
    if (*p == '.') {
      in_frac = true;
      continue;
    }
    mantissa = mantissa * 10 + static_cast<std::uint64_t>(*p - '0');
    if (in_frac) ++frac_digits;
  }
  if (p == end) return false;
  int exp10 = 0;
  std::from_chars(p + 1 + (p[1] == '+' ? 1 : 0), end, exp10);
  out.mantissa = mantissa;
  out.exponent = exp10 - frac_digits;
  while (out.mantissa != 0 && out.mantissa % 10 == 0) {
    out.mantissa /= 10;
    ++out.exponent;
  }
  return out.mantissa != 0;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

BoxMeasure build_box_measure(std::span<const double> values, std::size_t box_size) {
  const std::size_t length = values.size();
  if (box_size == 0 || length == 0 || length % box_size != 0) {
    throw ConfigError("box size " + std::to_string(box_size) + " does not divide series length " +
                      std::to_string(length));
  }
  BoxMeasure m;
  m.box_size_ = box_size;
  const std::size_t boxes = length / box_size;
  m.raw_mass_.resize(boxes);

  for (std::size_t n = 0; n < boxes; ++n) {
    CompensatedSum box;
    for (std::size_t i = n * box_size; i < (n + 1) * box_size; ++i) {
      const double v = values[i];
      if (!std::isfinite(v) || !(v > 0.0)) {
        throw NumericError("non-positive or non-finite value at index " + std::to_string(i));
      }
      box.add(v);
    }
    m.raw_mass_[n] = box.value();
  }
  std::vector<double> sorted_mass = m.raw_mass_;
  std::sort(sorted_mass.begin(), sorted_mass.end());
  m.total_mass_ = compensated_sum(sorted_mass);

  const double log_total = std::log(m.total_mass_);
  m.log_weights_.resize(boxes);
  for (std::size_t n = 0; n < boxes; ++n) {
    m.log_weights_[n] = std::log(m.raw_mass_[n]) - log_total;
  }
  m.sorted_log_weights_.resize(boxes);
  for (std::size_t n = 0; n < boxes; ++n) {
    m.sorted_log_weights_[n] = std::log(sorted_mass[n]) - log_total;
  }
  m.min_log_weight_ = m.sorted_log_weights_.front();
  m.max_log_weight_ = m.sorted_log_weights_.back();
  return m;
}

BoxMeasure build_box_measure(const PriceSeries& series, std::size_t box_size) {
  return build_box_measure(series.values(), box_size);
}

std::vector<double> scale_canonical(std::span<const double> values) {
  std::vector<double> fallback(values.begin(), values.end());
  if (values.empty()) return fallback;

  std::vector<Decimal> decimals(values.size());
  int min_exponent = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !(values[i] > 0.0) || !to_decimal(values[i], decimals[i])) {
      return fallback;
    }
    min_exponent = i == 0 ? decimals[i].exponent : std::min(min_exponent, decimals[i].exponent);
  }

  constexpr u128 limit = static_cast<u128>(1) << 126;
  std::vector<u128> aligned(values.size());
  u128 common = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    u128 a = decimals[i].mantissa;
    for (int k = decimals[i].exponent - min_exponent; k > 0; --k) {
      if (a > limit / 10) return fallback;
      a *= 10;
    }
    aligned[i] = a;
    common = gcd128(common, a);
  }

  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<double>(aligned[i] / common);
  }
  return out;
}

}  // namespace boxmf
