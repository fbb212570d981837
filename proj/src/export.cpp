#include "boxmf/export.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "boxmf/errors.hpp"

namespace boxmf {

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string surface_csv(const PartitionSurface& surface) {
  std::ostringstream out;
  out << "q";
  for (std::size_t l : surface.scheme().sizes()) out << ",l=" << l;
  out << '\n';
  for (std::size_t i = 0; i < surface.grid().size(); ++i) {
    out << format_number(surface.grid()[i]);
    for (double v : surface.row(i)) out << ',' << format_number(v);
    out << '\n';
  }
  return out.str();
}

std::string tau_csv(const MassExponents& me) {
  std::ostringstream out;
  out << "q,tau,r\n";
  for (std::size_t i = 0; i < me.grid.size(); ++i) {
    out << format_number(me.grid[i]) << ',' << format_number(me.tau[i]) << ','
        << format_number(me.r[i]) << '\n';
  }
  return out.str();
}

std::string spectrum_csv(const SingularitySpectrum& spec) {
  std::ostringstream out;
  out << "q,alpha,f\n";
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    out << format_number(spec.grid[i]) << ',' << format_number(spec.alpha[i]) << ','
        << format_number(spec.f[i]) << '\n';
  }
  return out.str();
}

std::string scatter_csv(const BootstrapReport& report) {
  std::ostringstream out;
  out << "delta_alpha_rnd,F_rnd\n";
  for (const auto& rep : report.replicates) {
    out << format_number(rep.delta_alpha) << ',' << format_number(rep.F) << '\n';
  }
  return out.str();
}

std::string series_csv(std::span<const PriceSeries> days) {
  std::ostringstream out;
  out << "date,time,price\n";
  for (const auto& day : days) {
    // Minute stamps from 09:30; series longer than a day roll past 24:00,
    // which is harmless because grouping is by the date column only.
    for (std::size_t t = 0; t < day.length(); ++t) {
      const std::size_t minute = 9 * 60 + 30 + t;
      char stamp[32];
      std::snprintf(stamp, sizeof stamp, "%02zu:%02zu", minute / 60, minute % 60);
      out << day.day_id() << ',' << stamp << ',' << format_number(day.values()[t]) << '\n';
    }
  }
  return out.str();
}

nlohmann::ordered_json day_summary_json(const std::string& day, const DayAnalysis& analysis) {
  nlohmann::ordered_json j;
  j["day"] = day;
  j["length"] = analysis.surface.scheme().series_length();
  j["box_sizes"] = std::vector<std::size_t>(analysis.surface.scheme().sizes().begin(),
                                            analysis.surface.scheme().sizes().end());
  j["alpha_bar"] = analysis.exponents.alpha_bar;
  j["alpha_bar_stderr"] = analysis.exponents.alpha_bar_stderr;
  j["tau_line_r"] = analysis.exponents.tau_line_r;
  j["max_tau_residual"] = analysis.linearity.max_abs_residual_from_line;
  j["delta_alpha"] = analysis.spectrum.delta_alpha;
  j["F"] = analysis.spectrum.F;
  return j;
}

nlohmann::ordered_json bootstrap_json(const BootstrapReport& report, bool with_replicates) {
  nlohmann::ordered_json j;
  j["day"] = report.day;
  j["delta_alpha"] = report.original.delta_alpha;
  j["F"] = report.original.F;
  if (report.line) {
    j["k"] = report.line->k;
    j["b"] = report.line->b;
  } else {
    j["k"] = nullptr;
    j["b"] = nullptr;
  }
  j["p1"] = report.p1;
  j["p2"] = report.p2;
  j["significant_1"] = report.significant_1;
  j["significant_2"] = report.significant_2;
  j["replicate_count"] = report.replicates.size();
  j["significance_level"] = report.significance_level;
  if (with_replicates) {
    auto reps = nlohmann::ordered_json::array();
    for (const auto& rep : report.replicates) reps.push_back({rep.delta_alpha, rep.F});
    j["replicates"] = std::move(reps);
  }
  return j;
}

nlohmann::ordered_json batch_summary_json(const BatchSummary& summary) {
  nlohmann::ordered_json j;
  j["significance_level"] = summary.significance_level;
  j["day_count"] = summary.day_count;
  j["pct_p1_significant"] = summary.pct_p1_significant;
  j["pct_p2_significant"] = summary.pct_p2_significant;
  auto days = nlohmann::ordered_json::array();
  for (const auto& d : summary.per_day) {
    nlohmann::ordered_json row;
    row["day"] = d.day;
    row["p1"] = d.p1;
    row["p2"] = d.p2;
    row["significant_1"] = d.significant_1;
    row["significant_2"] = d.significant_2;
    days.push_back(std::move(row));
  }
  j["per_day"] = std::move(days);
  return j;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string sanitize_day_id(std::string_view day) {
  std::string out;
  for (char c : day) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "day_" + out;
  return out;
}

}  // namespace boxmf
