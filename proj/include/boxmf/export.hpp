#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "boxmf/bootstrap.hpp"
#include "boxmf/ingest.hpp"
#include "boxmf/pipeline.hpp"

namespace boxmf {

/// Shortest decimal that parses back to the same double.
std::string format_number(double v);

/// Rows q, one column per box size (header "q,l=1,l=2,..."), values ln chi.
std::string surface_csv(const PartitionSurface& surface);
/// Columns q,tau,r.
std::string tau_csv(const MassExponents& me);
/// Columns q,alpha,f.
std::string spectrum_csv(const SingularitySpectrum& spec);
/// Columns delta_alpha_rnd,F_rnd.
std::string scatter_csv(const BootstrapReport& report);
/// Columns date,time,price in the ingestion format, with minute stamps from
/// 09:30 and each day's id as its date.
std::string series_csv(std::span<const PriceSeries> days);

nlohmann::ordered_json day_summary_json(const std::string& day, const DayAnalysis& analysis);
nlohmann::ordered_json bootstrap_json(const BootstrapReport& report, bool with_replicates);
nlohmann::ordered_json batch_summary_json(const BatchSummary& summary);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Directory-safe form of a day id.
std::string sanitize_day_id(std::string_view day);

}  // namespace boxmf
