#pragma once

#include <cmath>
#include <span>

namespace boxmf {

/// Ordinary least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  /// Pearson correlation of the fitted points; +-1 when the fit is exact.
  double r = 0.0;
  double max_abs_residual = 0.0;
};

/// Unweighted OLS of y on x. Throws NumericError on fewer than two points,
/// mismatched lengths, or when every x is identical.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

/// Running compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace boxmf
