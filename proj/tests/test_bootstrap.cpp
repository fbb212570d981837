#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "boxmf/bootstrap.hpp"
#include "boxmf/errors.hpp"
#include "boxmf/rng.hpp"
#include "boxmf/synth.hpp"

using namespace boxmf;

TEST(ShuffleValues, PermutationAndDeterminism) {
  const auto s = random_positive_series(240, NoiseKind::iid_lognormal, {0.2, 1.0}, 5);
  const auto a = shuffle_values(s.values(), 3, 99);
  const auto b = shuffle_values(s.values(), 3, 99);
  EXPECT_EQ(a, b);
  auto sorted_a = a;
  std::vector<double> sorted_s(s.values().begin(), s.values().end());
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_s.begin(), sorted_s.end());
  EXPECT_EQ(sorted_a, sorted_s);
  EXPECT_NE(a, shuffle_values(s.values(), 4, 99));
  EXPECT_NE(a, shuffle_values(s.values(), 3, 100));

  const auto shuffled = shuffle_series(s, 3, 99);
  EXPECT_EQ(shuffled.day_id(), s.day_id());
  EXPECT_TRUE(std::equal(a.begin(), a.end(), shuffled.values().begin()));
}

TEST(ShuffleValues, SingleValueIsUnchanged) {
  const std::vector<double> one{42.0};
  EXPECT_EQ(shuffle_values(one, 0, 1), one);
}

TEST(ShuffleValues, AllPermutationsEquallyLikely) {
  const std::vector<double> v{0, 1, 2, 3};
  std::map<std::vector<double>, int> counts;
  const int draws = 48000;
  for (int i = 0; i < draws; ++i) ++counts[shuffle_values(v, static_cast<std::uint64_t>(i), 2024)];
  ASSERT_EQ(counts.size(), 24u);
  double chi2 = 0.0;
  const double expected = draws / 24.0;
  for (const auto& [perm, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 23 degrees of freedom; 49.7 is the 0.999 quantile.
  EXPECT_LT(chi2, 49.7);
}

TEST(RngBelow, StaysInRange) {
  Rng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 240ull, 1ull << 40}) {
    for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.below(bound), bound);
  }
  EXPECT_NE(replicate_seed(1, 0), replicate_seed(1, 1));
  EXPECT_NE(replicate_seed(1, 0), replicate_seed(2, 0));
}

TEST(ScatterFit, TwoPoints) {
  const std::vector<SpectrumStats> pts{{0.0, 1.0}, {0.01, 0.7}};
  const auto line = scatter_fit(pts);
  EXPECT_NEAR(line.k, -30.0, 1e-12);
  EXPECT_NEAR(line.b, 1.0, 1e-12);
}

TEST(ScatterFit, QuadraticTauFamilyGivesMinusQuarterQmax) {
  // For tau = q - eps q^2 / 2 - 1 on [-120, 120]: delta_alpha = 240 eps and
  // F = 1 - 7200 eps, hence F = 1 - 30 delta_alpha.
  const auto grid = MomentGrid::standard();
  std::vector<SpectrumStats> pts;
  for (double eps : {1e-6, 3e-6, 5e-6, 1e-5, 2e-5}) {
    std::vector<double> tau(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) tau[i] = grid[i] - eps * grid[i] * grid[i] / 2 - 1;
    pts.push_back(spectrum_stats(legendre_spectrum(grid, tau)));
  }
  const auto line = scatter_fit(pts);
  EXPECT_NEAR(line.k, -30.0, 1e-6);
  EXPECT_NEAR(line.b, 1.0, 1e-9);
}

TEST(ScatterFit, Degenerate) {
  const std::vector<SpectrumStats> same{{0.1, 1.0}, {0.1, 0.9}};
  EXPECT_THROW(scatter_fit(same), NumericError);
  const std::vector<SpectrumStats> one{{0.1, 1.0}};
  EXPECT_THROW(scatter_fit(one), NumericError);
}

TEST(BootstrapAnalysis, PValuesAreFractionsOfB) {
  const auto s = random_positive_series(240, NoiseKind::intraday_walk, {0.0005, 15000.0}, 17);
  BootstrapConfig cfg;
  cfg.replicates = 60;
  cfg.master_seed = 123;
  cfg.workers = 1;
  const auto rep = bootstrap_analysis(s, derive_box_scheme(240), MomentGrid::standard(), cfg);
  ASSERT_EQ(rep.replicates.size(), 60u);
  std::size_t wider = 0;
  std::size_t lower = 0;
  for (const auto& r : rep.replicates) {
    EXPECT_GE(r.delta_alpha, 0.0);
    wider += rep.original.delta_alpha <= r.delta_alpha;
    lower += rep.original.F >= r.F;
  }
  EXPECT_EQ(rep.p1, wider / 60.0);
  EXPECT_EQ(rep.p2, lower / 60.0);
  EXPECT_EQ(rep.p1 == 1.0, wider == 60u);
  EXPECT_DOUBLE_EQ(rep.p1 * 60.0, std::round(rep.p1 * 60.0));
  EXPECT_EQ(rep.significant_1, rep.p1 <= 0.05);
  EXPECT_EQ(rep.significant_2, rep.p2 <= 0.05);
  ASSERT_TRUE(rep.line.has_value());
}

TEST(BootstrapAnalysis, IndependentOfWorkerCount) {
  const auto s = random_positive_series(240, NoiseKind::intraday_walk, {0.0005, 15000.0}, 2);
  BootstrapConfig cfg;
  cfg.replicates = 40;
  cfg.master_seed = 9;
  cfg.workers = 1;
  const auto a = bootstrap_analysis(s, derive_box_scheme(240), MomentGrid::standard(), cfg);
  cfg.workers = 4;
  const auto b = bootstrap_analysis(s, derive_box_scheme(240), MomentGrid::standard(), cfg);
  ASSERT_EQ(a.replicates.size(), b.replicates.size());
  for (std::size_t i = 0; i < a.replicates.size(); ++i) {
    EXPECT_EQ(a.replicates[i].delta_alpha, b.replicates[i].delta_alpha);
    EXPECT_EQ(a.replicates[i].F, b.replicates[i].F);
  }
  EXPECT_EQ(a.line->k, b.line->k);
  EXPECT_EQ(a.p1, b.p1);
}

TEST(BootstrapAnalysis, ConstantSeriesCannotReject) {
  BootstrapConfig cfg;
  cfg.replicates = 10;
  const auto rep = bootstrap_analysis(constant_series(240, 2.0), derive_box_scheme(240),
                                      MomentGrid::standard(), cfg);
  EXPECT_EQ(rep.p1, 1.0);
  EXPECT_EQ(rep.p2, 1.0);
  EXPECT_FALSE(rep.line.has_value());
}

TEST(BootstrapAnalysis, StrongCascadeRejectedByWidth) {
  BootstrapConfig cfg;
  cfg.replicates = 100;
  cfg.master_seed = 5;
  const auto rep = bootstrap_analysis(binomial_cascade({0.6, 10, 1.0}), derive_box_scheme(1024),
                                      MomentGrid::standard(), cfg);
  EXPECT_EQ(rep.p1, 0.0);
  // Both extremes saturate at |q| = 120, where f tends to 0.
  EXPECT_NEAR(rep.original.F, 0.0, 1e-3);
}

TEST(BootstrapAnalysis, WeakCascadeRejectedByBoth) {
  BootstrapConfig cfg;
  cfg.replicates = 100;
  cfg.master_seed = 5;
  const auto rep = bootstrap_analysis(binomial_cascade({0.505, 12, 1.0}), derive_box_scheme(4096),
                                      MomentGrid::standard(), cfg);
  EXPECT_EQ(rep.p1, 0.0);
  EXPECT_EQ(rep.p2, 0.0);
}

TEST(BootstrapConfigTest, Validation) {
  BootstrapConfig cfg;
  cfg.replicates = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.replicates = 1;
  cfg.significance_level = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(BatchSummaryTest, Percentages) {
  std::vector<BootstrapReport> reports(4);
  for (auto& r : reports) r.p1 = r.p2 = 1.0;
  auto summary = batch_summary(reports, 0.05);
  EXPECT_EQ(summary.pct_p1_significant, 0.0);
  EXPECT_EQ(summary.pct_p2_significant, 0.0);
  reports[0].p1 = 0.05;
  reports[1].p1 = 0.0;
  reports[1].p2 = 0.01;
  reports[0].day = "a";
  summary = batch_summary(reports, 0.05);
  EXPECT_EQ(summary.pct_p1_significant, 50.0);
  EXPECT_EQ(summary.pct_p2_significant, 25.0);
  ASSERT_EQ(summary.per_day.size(), 4u);
  EXPECT_EQ(summary.per_day[0].day, "a");
  EXPECT_TRUE(summary.per_day[0].significant_1);
  EXPECT_THROW(batch_summary(std::span<const BootstrapReport>{}, 0.05), ConfigError);
}
