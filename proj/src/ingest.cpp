#include "boxmf/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "boxmf/errors.hpp"

namespace boxmf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

std::optional<double> parse_decimal(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         std::string_view source) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw IngestError(std::string(source) + ": missing column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::vector<PriceRecord> parse_intraday_csv(std::istream& in, const ColumnSpec& columns,
                                            std::string_view source) {
  std::vector<PriceRecord> records;
  std::string line;
  std::size_t row = 0;

  std::optional<std::vector<std::string>> header;
  while (!header && std::getline(in, line)) {
    ++row;
    if (row == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  if (!header) return records;

  const std::size_t date_col = column_index(*header, columns.date, source);
  const std::optional<std::size_t> time_col =
      columns.time.empty() ? std::nullopt
                           : std::optional(column_index(*header, columns.time, source));
  const std::size_t price_col = column_index(*header, columns.price, source);

  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header->size()) {
      std::ostringstream msg;
      msg << source << ": malformed row " << row << ": expected " << header->size()
          << " fields, found " << fields.size();
      throw IngestError(msg.str());
    }
    const auto price = parse_decimal(fields[price_col]);
    if (!price) {
      std::ostringstream msg;
      msg << source << ": malformed row " << row << ": price '" << fields[price_col]
          << "' is not a number";
      throw IngestError(msg.str());
    }
    PriceRecord rec;
    rec.date = fields[date_col];
    if (time_col) rec.time = fields[*time_col];
    rec.price = *price;
    rec.row = row;
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IngestError(std::string(source) + ": read error");
  return records;
}

std::vector<PriceRecord> parse_intraday_csv(const std::filesystem::path& path,
                                            const ColumnSpec& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open input file '" + path.string() + "'");
  return parse_intraday_csv(in, columns, path.string());
}

PriceSeries::PriceSeries(std::string day_id, std::vector<double> values)
    : day_id_(std::move(day_id)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ConfigError("series '" + day_id_ + "' needs at least 2 values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !(values_[i] > 0.0)) {
      throw ConfigError("series '" + day_id_ + "' has a non-positive or non-finite value at index " +
                        std::to_string(i));
    }
  }
}

Segmentation segment_by_day(std::span<const PriceRecord> records) {
  struct Day {
    std::string id;
    std::vector<double> values;
    bool clean = true;
  };
  std::vector<Day> days;
  for (const auto& rec : records) {
    if (days.empty() || days.back().id != rec.date) days.push_back({rec.date, {}, true});
    auto& day = days.back();
    day.values.push_back(rec.price);
    if (!std::isfinite(rec.price) || !(rec.price > 0.0)) day.clean = false;
  }

  Segmentation out;
  std::map<std::size_t, std::size_t> length_counts;
  for (const auto& day : days) {
    if (day.clean) ++length_counts[day.values.size()];
  }
  std::size_t modal_length = 0;
  std::size_t modal_count = 0;
  for (const auto& [length, count] : length_counts) {
    if (count >= modal_count) {  // ascending keys: ties resolve to the longer length
      modal_length = length;
      modal_count = count;
    }
  }

  for (auto& day : days) {
    const std::size_t n = day.values.size();
    if (!day.clean) {
      out.dropped.push_back({day.id, n, "non-positive or non-finite price"});
    } else if (n != modal_length) {
      out.dropped.push_back(
          {day.id, n, "length " + std::to_string(n) + " differs from modal length " +
                          std::to_string(modal_length)});
    } else if (n < 2) {
      out.dropped.push_back({day.id, n, "fewer than 2 values"});
    } else {
      out.days.emplace_back(std::move(day.id), std::move(day.values));
    }
  }
  return out;
}

BoxScheme::BoxScheme(std::vector<std::size_t> sizes, std::size_t series_length)
    : sizes_(std::move(sizes)), series_length_(series_length) {
  std::sort(sizes_.begin(), sizes_.end());
  if (sizes_.size() < 2) throw ConfigError("box scheme needs at least 2 box sizes");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    const std::size_t l = sizes_[i];
    if (l == 0 || l > series_length_ || series_length_ % l != 0) {
      throw ConfigError("box size " + std::to_string(l) + " does not divide series length " +
                        std::to_string(series_length_));
    }
    if (i > 0 && sizes_[i - 1] == l) {
      throw ConfigError("duplicate box size " + std::to_string(l));
    }
  }
}

BoxScheme derive_box_scheme(std::size_t series_length) {
  if (series_length < 2) throw ConfigError("series length must be at least 2");
  switch (series_length) {
    case 240:
      return BoxScheme({1, 2, 3, 4, 6, 10, 15, 20, 30, 40, 60, 80, 120, 240}, 240);
    case 405:
      return BoxScheme({1, 3, 5, 9, 15, 27, 45, 81, 135, 405}, 405);
    case 390:
      return BoxScheme({1, 2, 3, 5, 10, 13, 15, 26, 30, 39, 78, 130, 195, 390}, 390);
    default:
      break;
  }
  std::vector<std::size_t> divisors;
  for (std::size_t d = 1; d * d <= series_length; ++d) {
    if (series_length % d == 0) {
      divisors.push_back(d);
      if (d * d != series_length) divisors.push_back(series_length / d);
    }
  }
  return BoxScheme(std::move(divisors), series_length);
}

BoxScheme derive_box_scheme(std::size_t series_length, std::span<const std::size_t> sizes) {
  if (series_length < 2) throw ConfigError("series length must be at least 2");
  return BoxScheme(std::vector<std::size_t>(sizes.begin(), sizes.end()), series_length);
}

}  // namespace boxmf
