#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boxmf {

/// One parsed CSV row.
struct PriceRecord {
  std::string date;
  std::string time;
  double price = 0.0;
  std::size_t row = 0;  // 1-based line number in the source, header is line 1

  std::string timestamp() const { return time.empty() ? date : date + ' ' + time; }
};

/// Header names of the columns to read. An empty `time` means the file has
/// no time column.
struct ColumnSpec {
  std::string date = "date";
  std::string time = "time";
  std::string price = "price";
};

/// Reads a comma-delimited file with a header row. Records come back in file
/// order, unfiltered. An empty file yields no records.
/// Throws IngestError on unreadable files, missing columns, rows with the
/// wrong field count, or prices that are not decimal numbers.
std::vector<PriceRecord> parse_intraday_csv(const std::filesystem::path& path,
                                            const ColumnSpec& columns = {});
std::vector<PriceRecord> parse_intraday_csv(std::istream& in, const ColumnSpec& columns = {},
                                            std::string_view source = "<stream>");

/// One trading day of strictly positive, finite values (T >= 2).
class PriceSeries {
 public:
  /// Throws ConfigError if the invariants do not hold.
  PriceSeries(std::string day_id, std::vector<double> values);

  const std::string& day_id() const { return day_id_; }
  std::span<const double> values() const { return values_; }
  std::size_t length() const { return values_.size(); }

 private:
  std::string day_id_;
  std::vector<double> values_;
};

struct DroppedDay {
  std::string day_id;
  std::size_t length = 0;
  std::string reason;
};

struct Segmentation {
  std::vector<PriceSeries> days;
  std::vector<DroppedDay> dropped;
};

/// Groups consecutive records by date. Days holding a non-positive or
/// non-finite price are dropped, then days whose length differs from the
/// modal length (ties go to the longer length) are dropped. Every drop is
/// listed in `dropped`; nothing is thrown.
Segmentation segment_by_day(std::span<const PriceRecord> records);

/// Strictly increasing box sizes, each dividing the series length.
class BoxScheme {
 public:
  /// Sorts and validates `sizes`. Throws ConfigError on a non-divisor, a
  /// duplicate, or fewer than two sizes.
  BoxScheme(std::vector<std::size_t> sizes, std::size_t series_length);

  std::span<const std::size_t> sizes() const { return sizes_; }
  std::size_t series_length() const { return series_length_; }
  std::size_t size() const { return sizes_.size(); }
  std::size_t box_count(std::size_t i) const { return series_length_ / sizes_[i]; }

 private:
  std::vector<std::size_t> sizes_;
  std::size_t series_length_;
};

/// Box sizes for a series of length T. T = 240, 405 and 390 use the preset
/// lists for minute data of the respective markets; any other T uses all of
/// its divisors. Throws ConfigError when T < 2.
BoxScheme derive_box_scheme(std::size_t series_length);

/// Explicit override, validated against the divisor invariant.
BoxScheme derive_box_scheme(std::size_t series_length, std::span<const std::size_t> sizes);

}  // namespace boxmf
