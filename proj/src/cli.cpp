#include "boxmf/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ostream>

#include <CLI11.hpp>

#include "boxmf/bootstrap.hpp"
#include "boxmf/errors.hpp"
#include "boxmf/export.hpp"
#include "boxmf/parallel.hpp"
#include "boxmf/pipeline.hpp"
#include "boxmf/rng.hpp"
#include "boxmf/synth.hpp"

namespace boxmf::cli {

namespace {

struct LoadedInput {
  std::vector<PriceSeries> days;
  nlohmann::ordered_json report;
};

LoadedInput load_days(const RunConfig& cfg, std::ostream& log) {
  const auto records = parse_intraday_csv(cfg.input, cfg.columns);
  Segmentation seg = segment_by_day(records);
  nlohmann::ordered_json report;
  report["input"] = cfg.input.string();
  report["records"] = records.size();
  auto kept = nlohmann::ordered_json::array();
  for (const auto& d : seg.days) kept.push_back(d.day_id());
  report["days"] = std::move(kept);
  auto dropped = nlohmann::ordered_json::array();
  for (const auto& d : seg.dropped) {
    log << "dropped " << d.day_id << " (" << d.reason << ")\n";
    dropped.push_back({{"day", d.day_id}, {"length", d.length}, {"reason", d.reason}});
  }
  report["dropped"] = std::move(dropped);
  if (seg.days.empty()) {
    throw IngestError("'" + cfg.input.string() + "' contains no usable trading days");
  }
  return {std::move(seg.days), std::move(report)};
}

BoxScheme scheme_for(const RunConfig& cfg, std::size_t length) {
  return cfg.boxes.empty() ? derive_box_scheme(length) : derive_box_scheme(length, cfg.boxes);
}

MomentGrid grid_for(const RunConfig& cfg) {
  return MomentGrid::uniform(cfg.q_min, cfg.q_max, cfg.q_step);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<BootstrapReport> bootstrap_days(const RunConfig& cfg, const std::vector<PriceSeries>& days,
                                            std::ostream& log) {
  const MomentGrid grid = grid_for(cfg);
  BootstrapConfig bc;
  bc.replicates = cfg.bootstrap;
  bc.master_seed = cfg.seed;
  bc.significance_level = cfg.level;
  bc.workers = cfg.workers;
  std::vector<BootstrapReport> reports;
  reports.reserve(days.size());
  for (std::size_t d = 0; d < days.size(); ++d) {
    // Days get distinct permutation streams derived from the master seed.
    bc.master_seed = d == 0 ? cfg.seed : replicate_seed(cfg.seed, ~static_cast<std::uint64_t>(d));
    reports.push_back(
        bootstrap_analysis(days[d], scheme_for(cfg, days[d].length()), grid, bc));
    const auto& r = reports.back();
    if (std::abs(r.p1 - r.p2) > 0.1) {
      log << "note: " << r.day << " has |p1 - p2| = " << std::abs(r.p1 - r.p2) << "\n";
    }
  }
  return reports;
}

std::string date_plus_days(const std::string& start, std::size_t offset) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (std::sscanf(start.c_str(), "%d-%u-%u", &y, &m, &d) != 3) {
    throw ConfigError("start date must look like YYYY-MM-DD");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw ConfigError("invalid start date '" + start + "'");
  const std::chrono::year_month_day out{std::chrono::sys_days{ymd} +
                                        std::chrono::days{static_cast<long>(offset)}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(out.year()),
                static_cast<unsigned>(out.month()), static_cast<unsigned>(out.day()));
  return buf;
}

// 12 significant digits: short enough that any decimal rescaling of the
// written prices still round-trips through double exactly.
std::vector<double> quantize(std::span<const double> values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, values[i], std::chars_format::scientific, 11);
    std::from_chars(buf, res.ptr, out[i]);
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(q_min < 0.0 && q_max > 1.0)) throw ConfigError("q range must satisfy q_min < 0 < 1 < q_max");
  if (!(q_step > 0.0)) throw ConfigError("q step must be positive");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("significance level must lie in (0, 1)");
  if (bootstrap < 1) throw ConfigError("bootstrap count must be at least 1");
  if (command != Command::synth && input.empty()) throw ConfigError("--input is required");
  if (command == Command::synth && output.empty()) throw ConfigError("--output is required");
  if (command == Command::synth && days < 1) throw ConfigError("--days must be at least 1");
}

int run_analyze(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const MomentGrid grid = grid_for(cfg);
  LoadedInput input = load_days(cfg, log);
  const auto& days = input.days;

  std::vector<std::optional<DayAnalysis>> results(days.size());
  parallel_for(days.size(), cfg.workers, [&](std::size_t d) {
    results[d] = analyze_series(days[d], scheme_for(cfg, days[d].length()), grid);
  });

  std::filesystem::create_directories(cfg.outdir);
  write_file_atomic(cfg.outdir / "ingest_report.json", dump(input.report));
  for (std::size_t d = 0; d < days.size(); ++d) {
    const DayAnalysis& a = *results[d];
    const auto dir = cfg.outdir / sanitize_day_id(days[d].day_id());
    write_file_atomic(dir / "tau.csv", tau_csv(a.exponents));
    write_file_atomic(dir / "spectrum.csv", spectrum_csv(a.spectrum));
    if (cfg.exports.surface) write_file_atomic(dir / "surface.csv", surface_csv(a.surface));
    write_file_atomic(dir / "summary.json", dump(day_summary_json(days[d].day_id(), a)));
    log << days[d].day_id() << ": alpha_bar=" << format_number(a.exponents.alpha_bar)
        << " delta_alpha=" << format_number(a.spectrum.delta_alpha)
        << " F=" << format_number(a.spectrum.F) << "\n";
  }
  return kSuccess;
}

int run_shuffle_test(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  LoadedInput input = load_days(cfg, log);
  const auto reports = bootstrap_days(cfg, input.days, log);

  std::filesystem::create_directories(cfg.outdir);
  write_file_atomic(cfg.outdir / "ingest_report.json", dump(input.report));
  for (const auto& r : reports) {
    const auto dir = cfg.outdir / sanitize_day_id(r.day);
    write_file_atomic(dir / "bootstrap.json", dump(bootstrap_json(r, cfg.replicates_json)));
    if (cfg.exports.scatter) write_file_atomic(dir / "scatter.csv", scatter_csv(r));
    log << r.day << ": p1=" << format_number(r.p1) << " p2=" << format_number(r.p2) << "\n";
  }
  if (reports.size() > 1) {
    write_file_atomic(cfg.outdir / "batch_summary.json",
                      dump(batch_summary_json(batch_summary(reports, cfg.level))));
  }
  return kSuccess;
}

int run_batch(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  LoadedInput input = load_days(cfg, log);
  const auto reports = bootstrap_days(cfg, input.days, log);
  const BatchSummary summary = batch_summary(reports, cfg.level);
  std::filesystem::create_directories(cfg.outdir);
  write_file_atomic(cfg.outdir / "ingest_report.json", dump(input.report));
  write_file_atomic(cfg.outdir / "batch_summary.json", dump(batch_summary_json(summary)));
  log << summary.day_count << " days: p1<=level " << format_number(summary.pct_p1_significant)
      << "%, p2<=level " << format_number(summary.pct_p2_significant) << "%\n";
  return kSuccess;
}

int run_synth(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::vector<PriceSeries> days;
  days.reserve(cfg.days);
  for (std::size_t d = 0; d < cfg.days; ++d) {
    const std::string date = date_plus_days(cfg.start_date, d);
    const std::uint64_t day_seed = replicate_seed(cfg.seed, d);
    std::vector<double> values;
    if (cfg.kind == "constant") {
      const auto s = constant_series(cfg.length, cfg.value);
      values.assign(s.values().begin(), s.values().end());
    } else if (cfg.kind == "cascade") {
      CascadeSpec spec{cfg.p, cfg.levels, cfg.value};
      const auto s = binomial_cascade(
          spec, cfg.random_orientation ? std::optional(day_seed) : std::nullopt);
      values.assign(s.values().begin(), s.values().end());
    } else {
      const NoiseKind kind = parse_noise_kind(cfg.kind);
      const double level = kind == NoiseKind::intraday_walk ? cfg.start_level : cfg.value;
      const auto s = random_positive_series(cfg.length, kind, {cfg.sigma, level}, day_seed);
      values.assign(s.values().begin(), s.values().end());
    }
    days.emplace_back(date, quantize(values));
  }
  write_file_atomic(cfg.output, series_csv(days));
  log << "wrote " << days.size() << " day(s) of length " << days.front().length() << " to "
      << cfg.output.string() << "\n";
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Box-counting multifractal analysis with shuffle significance tests", "boxmf"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> export_list;

  auto add_common = [&](CLI::App* sub, bool bootstrap) {
    sub->add_option("--input", cfg.input, "Input CSV with a header row")->required();
    sub->add_option("--outdir", cfg.outdir, "Output directory");
    sub->add_option("--q-min", cfg.q_min, "Smallest moment order");
    sub->add_option("--q-max", cfg.q_max, "Largest moment order");
    sub->add_option("--q-step", cfg.q_step, "Moment order step");
    sub->add_option("--boxes", cfg.boxes, "Box sizes (comma list); default derived from T")
        ->delimiter(',');
    sub->add_option("--date-col", cfg.columns.date, "Date column name");
    sub->add_option("--time-col", cfg.columns.time, "Time column name ('' for none)");
    sub->add_option("--price-col", cfg.columns.price, "Price column name");
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
    sub->add_option("--export", export_list, "Extra artifacts: surface,tau,spectrum,scatter")
        ->delimiter(',')
        ->check(CLI::IsMember({"surface", "tau", "spectrum", "scatter"}));
    if (bootstrap) {
      sub->add_option("--bootstrap", cfg.bootstrap, "Shuffled replicates per day");
      sub->add_option("--seed", cfg.seed, "Master seed");
      sub->add_option("--level", cfg.level, "Significance level");
      sub->add_flag("--replicates-json", cfg.replicates_json,
                    "Include every replicate in bootstrap.json");
    }
  };

  auto* analyze = app.add_subcommand("analyze", "Spectrum of every day in the input");
  add_common(analyze, false);
  auto* shuffle = app.add_subcommand("shuffle-test", "Shuffle bootstrap test per day");
  add_common(shuffle, true);
  auto* batch = app.add_subcommand("batch", "Shuffle test over all days, summary only");
  add_common(batch, true);

  auto* synth = app.add_subcommand("synth", "Write synthetic control days as CSV");
  synth->add_option("--output", cfg.output, "Output CSV")->required();
  synth->add_option("--kind", cfg.kind, "constant | iid | walk | cascade")
      ->check(CLI::IsMember({"constant", "iid", "iid-lognormal", "walk", "intraday-walk", "cascade"}));
  synth->add_option("--days", cfg.days, "Number of days");
  synth->add_option("--length", cfg.length, "Samples per day (ignored for cascade)");
  synth->add_option("--start-date", cfg.start_date, "First date, YYYY-MM-DD");
  synth->add_option("--seed", cfg.seed, "Seed");
  synth->add_option("--value", cfg.value, "Constant value / iid level / cascade total mass");
  synth->add_option("--sigma", cfg.sigma, "Log-step (walk) or log-sd (iid)");
  synth->add_option("--start-level", cfg.start_level, "Walk starting level");
  synth->add_option("--p", cfg.p, "Cascade fraction");
  synth->add_option("--levels", cfg.levels, "Cascade levels (length 2^levels)");
  synth->add_flag("--random-orientation", cfg.random_orientation,
                  "Seeded random cascade orientation per node");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  for (const auto& name : export_list) {
    if (name == "surface") cfg.exports.surface = true;
    if (name == "scatter") cfg.exports.scatter = true;
  }

  try {
    if (analyze->parsed()) {
      cfg.command = Command::analyze;
      return run_analyze(cfg, out);
    }
    if (shuffle->parsed()) {
      cfg.command = Command::shuffle_test;
      return run_shuffle_test(cfg, out);
    }
    if (batch->parsed()) {
      cfg.command = Command::batch;
      return run_batch(cfg, out);
    }
    cfg.command = Command::synth;
    return run_synth(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IngestError& e) {
    err << "ingestion error: " << e.what() << "\n";
    return kIngestError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUnexpected;
  }
}

}  // namespace boxmf::cli
