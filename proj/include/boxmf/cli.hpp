#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "boxmf/ingest.hpp"

namespace boxmf::cli {

enum class Command { analyze, batch, shuffle_test, synth };

enum ExitCode : int {
  kSuccess = 0,
  kUnexpected = 1,
  kConfigError = 2,
  kIngestError = 3,
  kNumericError = 4,
};

struct ExportFlags {
  bool surface = false;
  bool scatter = false;
};

struct RunConfig {
  Command command = Command::analyze;
  std::filesystem::path input;
  std::filesystem::path outdir = "boxmf-out";
  ColumnSpec columns;

  double q_min = -120.0;
  double q_max = 120.0;
  double q_step = 1.0;
  std::vector<std::size_t> boxes;  // empty: derived from the day length

  std::size_t bootstrap = 1000;
  std::uint64_t seed = 0;
  double level = 0.05;
  unsigned workers = 0;
  ExportFlags exports;
  bool replicates_json = false;

  // synth
  std::filesystem::path output;
  std::string kind = "walk";
  std::size_t days = 1;
  std::size_t length = 240;
  std::string start_date = "2001-01-02";
  double value = 1.0;
  double sigma = 0.0005;
  double start_level = 15000.0;
  double p = 0.6;
  unsigned levels = 12;
  bool random_orientation = false;

  /// Throws ConfigError; requires q_min < 0 < 1 < q_max and q_step > 0.
  void validate() const;
};

/// Per day: summary.json, tau.csv, spectrum.csv and optionally surface.csv
/// under outdir/<day>/, plus outdir/ingest_report.json.
int run_analyze(const RunConfig& cfg, std::ostream& log);
/// Per day: bootstrap.json (and scatter.csv on request); batch_summary.json
/// when more than one day is present.
int run_shuffle_test(const RunConfig& cfg, std::ostream& log);
/// Bootstraps every day and writes only batch_summary.json.
int run_batch(const RunConfig& cfg, std::ostream& log);
/// Writes synthetic days in the ingestion CSV format.
int run_synth(const RunConfig& cfg, std::ostream& log);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boxmf::cli
