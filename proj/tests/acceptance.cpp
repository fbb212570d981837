// Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
// exits non-zero if any of them fails.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boxmf/bootstrap.hpp"
#include "boxmf/cli.hpp"
#include "boxmf/pipeline.hpp"
#include "boxmf/rng.hpp"
#include "boxmf/synth.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace boxmf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

NoiseParams walk_params() { return {0.0005, 15000.0}; }

Outcome normalization_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = MomentGrid::standard();
  const auto scheme = derive_box_scheme(240);
  const std::size_t q0 = grid.index_of(0.0);
  const std::size_t q1 = grid.index_of(1.0);
  double worst_tau = 0.0, worst_chi1 = 0.0, worst_chi0 = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto kind = i % 2 ? NoiseKind::intraday_walk : NoiseKind::iid_lognormal;
    const double sigma = 0.0005 * static_cast<double>(1 + i % 7) * (i % 2 ? 1.0 : 40.0);
    const auto s = random_positive_series(240, kind, {sigma, 100.0}, 1000 + i);
    const auto surface = partition_surface(s, scheme, grid);
    const auto me = fit_mass_exponents(surface);
    worst_tau = std::max({worst_tau, std::abs(me.tau[q1]), std::abs(me.tau[q0] + 1.0)});
    for (std::size_t j = 0; j < scheme.size(); ++j) {
      const double boxes = static_cast<double>(scheme.box_count(j));
      worst_chi1 = std::max(worst_chi1, std::abs(std::exp(surface.log_chi(q1, j)) - 1.0));
      worst_chi0 =
          std::max(worst_chi0, std::abs(std::exp(surface.log_chi(q0, j)) / boxes - 1.0));
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = worst_tau <= 1e-10 && worst_chi1 <= 1e-12 && worst_chi0 <= 1e-12 && secs < 5.0;
  o.detail = fmt("max|tau err|=%.2e max|chi_1-1|=%.2e max|chi_0/N-1|=%.2e time=%.2fs", worst_tau,
                 worst_chi1, worst_chi0, secs);
  return o;
}

Outcome constant_series_analytics() {
  const auto grid = MomentGrid::standard();
  double worst_tau = 0.0, worst_da = 0.0, worst_f = 0.0;
  for (double value : {1.0, 0.37, 15000.0, 2.5e-7}) {
    const auto day = analyze_series(constant_series(240, value), derive_box_scheme(240), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst_tau = std::max(worst_tau, std::abs(day.exponents.tau[i] - (grid[i] - 1.0)));
    }
    worst_da = std::max(worst_da, day.spectrum.delta_alpha);
    worst_f = std::max(worst_f, std::abs(day.spectrum.F - 1.0));
  }
  Outcome o;
  o.pass = worst_tau <= 1e-9 && worst_da <= 1e-9 && worst_f <= 1e-9;
  o.detail = fmt("max|tau-(q-1)|=%.2e max delta_alpha=%.2e max|F-1|=%.2e", worst_tau, worst_da,
                 worst_f);
  return o;
}

// Closed form written out here rather than taken from the synth module.
double binomial_tau(double p, double q) {
  return -std::log2(std::pow(p, q) + std::pow(1.0 - p, q));
}
double binomial_alpha(double p, double q) {
  const double a = std::pow(p, q), b = std::pow(1.0 - p, q);
  return -(a * std::log(p) + b * std::log(1.0 - p)) / ((a + b) * std::log(2.0));
}

Outcome binomial_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const double p = 0.6;
  const auto series = binomial_cascade({p, 12, 1.0});
  const auto scheme = derive_box_scheme(series.length());
  const auto grid = MomentGrid::uniform(-20.0, 20.0, 1.0);
  const auto day = analyze_series(series, scheme, grid);
  double worst = 0.0;
  for (int q = -10; q <= 10; ++q) {
    const double err = std::abs(day.exponents.tau[grid.index_of(q)] - binomial_tau(p, q));
    worst = std::max(worst, err);
  }
  const double analytic = binomial_alpha(p, -20.0) - binomial_alpha(p, 20.0);
  const double rel = std::abs(day.spectrum.delta_alpha - analytic) / analytic;
  const double secs = seconds_since(start);
  bool dyadic = scheme.size() == 13;
  for (std::size_t j = 0; j < scheme.size(); ++j) dyadic &= scheme.sizes()[j] == (1u << j);
  Outcome o;
  o.pass = dyadic && worst <= 0.05 && rel <= 0.15 && secs < 5.0;
  o.detail = fmt("dyadic=%s max|tau-oracle|=%.4f delta_alpha=%.5f analytic=%.5f rel=%.3f time=%.2fs",
                 dyadic ? "yes" : "no", worst, day.spectrum.delta_alpha, analytic, rel, secs);
  return o;
}

Outcome monofractal_slope() {
  const auto grid = MomentGrid::standard();
  const auto scheme = derive_box_scheme(240);
  double worst_bar = 0.0, min_r = 1.0;
  for (std::uint64_t d = 0; d < 20; ++d) {
    const auto s = random_positive_series(240, NoiseKind::intraday_walk, walk_params(), 500 + d);
    const auto me = fit_mass_exponents(partition_surface(s, scheme, grid));
    worst_bar = std::max(worst_bar, std::abs(me.alpha_bar - 1.0));
    min_r = std::min(min_r, me.tau_line_r);
  }
  Outcome o;
  o.pass = worst_bar <= 0.005 && min_r >= 0.9999;
  o.detail = fmt("20 walk days: max|alpha_bar-1|=%.2e min tau-q r=%.10f", worst_bar, min_r);
  return o;
}

Outcome scatter_law() {
  const auto s = random_positive_series(240, NoiseKind::intraday_walk, walk_params(), 7);
  BootstrapConfig cfg;
  cfg.replicates = 1000;
  cfg.master_seed = 2024;
  const auto start = std::chrono::steady_clock::now();
  const auto rep = bootstrap_analysis(s, derive_box_scheme(240), MomentGrid::standard(), cfg);
  const double secs = seconds_since(start);
  Outcome o;
  if (!rep.line) {
    o.pass = false;
    o.detail = "scatter fit undefined";
    return o;
  }
  o.pass = rep.line->k >= -32.0 && rep.line->k <= -28.0 && rep.line->b >= 0.95 &&
           rep.line->b <= 1.10 && secs < 30.0;
  o.detail = fmt("k=%.4f b=%.5f time=%.2fs", rep.line->k, rep.line->b, secs);
  return o;
}

Outcome null_uniformity() {
  const auto grid = MomentGrid::standard();
  const auto scheme = derive_box_scheme(240);
  BootstrapConfig cfg;
  cfg.replicates = 200;
  std::size_t rejected = 0;
  const std::size_t days = 200;
  for (std::uint64_t d = 0; d < days; ++d) {
    const auto s = random_positive_series(240, NoiseKind::iid_lognormal, {0.01, 100.0}, 9000 + d);
    cfg.master_seed = replicate_seed(77, d);
    if (bootstrap_analysis(s, scheme, grid, cfg).p1 <= 0.05) ++rejected;
  }
  const double fraction = static_cast<double>(rejected) / static_cast<double>(days);

  const auto cascade = binomial_cascade({});
  BootstrapConfig ccfg;
  ccfg.replicates = 1000;
  ccfg.master_seed = 31;
  const auto rep = bootstrap_analysis(cascade, derive_box_scheme(cascade.length()), grid, ccfg);

  Outcome o;
  o.pass = fraction >= 0.01 && fraction <= 0.10 && rep.p1 == 0.0 && rep.p2 == 0.0;
  o.detail = fmt("iid fraction p1<=0.05: %.3f; cascade p=0.6 k=12 B=1000: p1=%.3f p2=%.3f "
                 "(F=%.2e, F_rnd mean=%.4f)",
                 fraction, rep.p1, rep.p2, rep.original.F,
                 [&] {
                   double sum = 0.0;
                   for (const auto& r : rep.replicates) sum += r.F;
                   return sum / static_cast<double>(rep.replicates.size());
                 }());
  return o;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "boxmf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), root).generic_string();
    std::string body = slurp(e.path());
    if (rel == "ingest_report.json") {
      auto j = nlohmann::ordered_json::parse(body);
      j.erase("input");
      body = j.dump();
    }
    files[rel] = body;
  }
  return files;
}

void write_scaled_csv(const fs::path& from, const fs::path& to) {
  std::ifstream in(from);
  std::ofstream out(to, std::ios::binary);
  std::string line;
  std::getline(in, line);
  out << line << '\n';
  while (std::getline(in, line)) {
    const auto comma = line.rfind(',');
    double v = 0.0;
    const std::string price = line.substr(comma + 1);
    std::from_chars(price.data(), price.data() + price.size(), v);
    out << line.substr(0, comma + 1) << oracle::times_7_3_text(v) << '\n';
  }
}

Outcome determinism_and_invariance() {
  const fs::path dir = fs::temp_directory_path() / "boxmf_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Outcome o;
  std::vector<std::string> notes;

  const auto csv = dir / "walk.csv";
  const auto scaled = dir / "walk_x7_3.csv";
  if (run_cli({"synth", "--kind", "walk", "--days", "3", "--seed", "9", "--output", csv.string()}) != 0) {
    return {false, "synth failed"};
  }
  write_scaled_csv(csv, scaled);

  auto run_both = [&](const fs::path& input, const std::string& tag, const std::string& workers) {
    const auto a = dir / (tag + "_analyze");
    const auto b = dir / (tag + "_shuffle");
    const bool ok =
        run_cli({"analyze", "--input", input.string(), "--outdir", a.string(), "--export",
                 "surface,tau,spectrum", "--workers", workers}) == 0 &&
        run_cli({"shuffle-test", "--input", input.string(), "--outdir", b.string(), "--bootstrap",
                 "100", "--seed", "5", "--export", "scatter", "--replicates-json", "--workers",
                 workers}) == 0;
    auto files = tree(a);
    for (auto& [k, v] : tree(b)) files["shuffle/" + k] = v;
    return std::make_pair(ok, files);
  };

  const auto first = run_both(csv, "first", "1");
  const auto second = run_both(csv, "second", "1");
  const auto parallel = run_both(csv, "parallel", "4");
  const auto rescaled = run_both(scaled, "scaled", "1");
  if (!first.first || !second.first || !parallel.first || !rescaled.first) {
    return {false, "cli run failed"};
  }
  const bool repeat_ok = first.second == second.second;
  const bool workers_ok = first.second == parallel.second;
  const bool scale_ok = first.second == rescaled.second;

  bool shuffle_ok = true;
  const auto grid = MomentGrid::standard();
  for (std::uint64_t d = 0; d < 20; ++d) {
    const auto kind = d % 2 ? NoiseKind::intraday_walk : NoiseKind::iid_lognormal;
    const auto s = random_positive_series(240, kind, {0.02, 50.0}, 300 + d);
    const auto scheme = derive_box_scheme(240);
    const auto shuffled = shuffle_values(s.values(), d, 12345);
    const auto a = partition_surface(s.values(), scheme, grid);
    const auto b = partition_surface(shuffled, scheme, grid);
    const std::size_t last = scheme.size() - 1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      shuffle_ok &= a.log_chi(i, 0) == b.log_chi(i, 0);
      shuffle_ok &= a.log_chi(i, last) == b.log_chi(i, last);
    }
  }
  fs::remove_all(dir);

  o.pass = repeat_ok && workers_ok && scale_ok && shuffle_ok;
  o.detail = fmt("%zu output files; repeat=%s 1-vs-4 workers=%s x7.3=%s shuffle l=1,T=%s",
                 first.second.size(), repeat_ok ? "identical" : "DIFFERENT",
                 workers_ok ? "identical" : "DIFFERENT", scale_ok ? "identical" : "DIFFERENT",
                 shuffle_ok ? "identical" : "DIFFERENT");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 normalization exactness", normalization_exactness},
      {"2 constant-series analytics", constant_series_analytics},
      {"3 binomial oracle", binomial_oracle},
      {"4 monofractal slope", monofractal_slope},
      {"5 scatter law", scatter_law},
      {"6 null uniformity", null_uniformity},
      {"7 determinism and invariances", determinism_and_invariance},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %-32s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
