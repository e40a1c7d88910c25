#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lyricnet/dataio/synth.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/evalreport/metrics.hpp"
#include "lyricnet/evalreport/report_io.hpp"
#include "lyricnet/evalreport/residual.hpp"
#include "lyricnet/evalreport/scv.hpp"

using namespace lyricnet;
using namespace lyricnet::evalreport;

namespace {

FoldMetrics fold(std::size_t i, double val_mae) {
  FoldMetrics f;
  f.fold = i;
  f.val.mae = val_mae;
  return f;
}

dataio::TrackRecord record(const std::string& id, float artist_pop, std::optional<int> year) {
  dataio::TrackRecord r;
  r.track_id = id;
  r.metadata[dataio::kArtistPopularity] = artist_pop;
  r.release_year = year;
  return r;
}

}  // namespace

TEST(Metrics, HandComputed) {
  const std::vector<float> p = {0.5f, 0.25f, 1.0f}, y = {0.25f, 0.25f, 0.5f};
  const ErrorPair e = compute_metrics(p, y);
  EXPECT_DOUBLE_EQ(e.mae, 0.75 / 3.0);
  EXPECT_DOUBLE_EQ(e.mse, (0.0625 + 0.25) / 3.0);
  EXPECT_THROW(compute_metrics(p, std::vector<float>{1.0f}), DataError);
  EXPECT_THROW(compute_metrics(std::vector<float>{}, std::vector<float>{}), DataError);
}

TEST(Metrics, MaeNeverExceedsRootMse) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (int t = 0; t < 100; ++t) {
    std::vector<float> p(1 + t), y(1 + t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = u(rng);
      y[i] = u(rng);
    }
    const ErrorPair e = compute_metrics(p, y);
    EXPECT_LE(e.mae, std::sqrt(e.mse) + 1e-12);
  }
}

TEST(MedianFold, OddEvenAndTies) {
  const std::vector<FoldMetrics> five = {fold(0, 0.3), fold(1, 0.1), fold(2, 0.5), fold(3, 0.2), fold(4, 0.4)};
  EXPECT_EQ(median_val_fold(five), 0u);
  const std::vector<FoldMetrics> four = {fold(0, 0.4), fold(1, 0.1), fold(2, 0.3), fold(3, 0.2)};
  EXPECT_EQ(median_val_fold(four), 3u);
  const std::vector<FoldMetrics> tied = {fold(0, 0.2), fold(1, 0.2), fold(2, 0.2)};
  EXPECT_EQ(median_val_fold(tied), 1u);
  EXPECT_THROW(median_val_fold(std::vector<FoldMetrics>{}), DataError);
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
  EXPECT_THROW(quantile_sorted(std::vector<double>{}, 0.5), DataError);
}

TEST(Residual, YearwiseSkipsSparseYears) {
  std::vector<dataio::TrackRecord> recs;
  std::vector<float> p, y;
  for (int i = 0; i < 6; ++i) {
    recs.push_back(record("a" + std::to_string(i), 10.0f * i, 2001));
    p.push_back(0.5f);
    y.push_back(0.5f - 0.1f * i);
  }
  for (int i = 0; i < 4; ++i) {
    recs.push_back(record("b" + std::to_string(i), 50.0f, 2002));
    p.push_back(0.5f);
    y.push_back(0.5f);
  }
  recs.push_back(record("c", 50.0f, std::nullopt));
  p.push_back(0.1f);
  y.push_back(0.1f);
  const ResidualReport r = residual_report(p, y, recs);
  ASSERT_TRUE(r.yearwise.has_value());
  ASSERT_EQ(r.yearwise->size(), 1u);
  const YearError& ye = r.yearwise->front();
  EXPECT_EQ(ye.year, 2001);
  EXPECT_EQ(ye.count, 6u);
  EXPECT_NEAR(ye.median, 0.25, 1e-6);
  EXPECT_NEAR(ye.mae, 0.25, 1e-6);
  EXPECT_EQ(r.n, 11u);
  EXPECT_NEAR(r.residuals[1], 0.1, 1e-6);
  EXPECT_THROW(residual_report(p, std::vector<float>(3, 0.0f), recs), DataError);
}

TEST(Residual, CalibrationCoversAllPredictions) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<dataio::TrackRecord> recs;
  std::vector<float> p, y;
  for (int i = 0; i < 300; ++i) {
    recs.push_back(record("t" + std::to_string(i), u(rng) * 100.0f, 1990 + i % 7));
    p.push_back(u(rng));
    y.push_back(u(rng));
  }
  const ResidualReport r = residual_report(p, y, recs);
  ASSERT_EQ(r.calibration.size(), kCalibrationBins);
  std::size_t total = 0;
  for (const auto& b : r.calibration) {
    total += b.count;
    if (b.count) {
      EXPECT_GE(b.mean_predicted, b.lower);
      EXPECT_LE(b.mean_predicted, b.upper);
    }
  }
  EXPECT_EQ(total, 300u);
  ASSERT_TRUE(r.segments.has_value());
  std::size_t seg_total = 0;
  for (const auto& s : *r.segments) seg_total += s.count;
  EXPECT_EQ(seg_total, 300u);
  EXPECT_EQ(r.segments->at(0).name, "low");
  EXPECT_LE(r.segments->at(0).max_artist_popularity, r.segments->at(1).min_artist_popularity);
  EXPECT_LE(r.mae, std::sqrt(r.mse) + 1e-12);
}

TEST(ReportIo, MetricsJsonRoundTripAndCsv) {
  MetricsReport m;
  m.mask = "HH,LL,LR,M";
  m.model = "fusion";
  m.train = {0.05, 0.004};
  m.val = {0.07, 0.008};
  m.test = {0.072, 0.0081};
  m.folds = {{0, {0.05, 0.004}, {0.07, 0.008}, 12, "abc"}, {1, {0.051, 0.0041}, {0.069, 0.0079}, 9, "def"}};
  m.selected_fold = 1;
  m.config_fingerprint = "def";
  EXPECT_EQ(metrics_from_json(to_json(m)), m);
  const std::string csv = folds_csv(m);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_THROW(metrics_from_json(nlohmann::json::object()), IntegrityError);
}

TEST(Scv, MeanStdAndRepeatSeeds) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const MeanStd ms = mean_std(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.5);
  EXPECT_NEAR(ms.std, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_EQ(mean_std(std::vector<double>{7.0}).std, 0.0);
  EXPECT_EQ(repeat_seed(42, 0), 42u);
  EXPECT_NE(repeat_seed(42, 1), 42u);
  EXPECT_NE(repeat_seed(42, 1), repeat_seed(42, 2));
}

TEST(Scv, FoldsAggregateAndSelectMedian) {
  dataio::SynthOptions o;
  o.n = 150;
  o.seed = 2;
  o.embedding_dim = 32;
  const dataio::Corpus corpus = dataio::synth_dataset(o);
  fusenet::PipelineConfig c;
  c.scv_k = 3;
  c.strat_bins = 2;
  c.ae_epochs = 1;
  c.fusion_epochs = 2;
  c.mask = dataio::ModalityMask::parse("HH,M");
  const ScvResult r = run_scv(corpus, c);
  ASSERT_EQ(r.report.folds.size(), 3u);
  double val = 0.0;
  for (const auto& f : r.report.folds) val += f.val.mae;
  EXPECT_NEAR(r.report.val.mae, val / 3.0, 1e-12);
  EXPECT_EQ(r.report.selected_fold, median_val_fold(r.report.folds));
  EXPECT_EQ(r.test_indices, r.split.test_indices());
  EXPECT_EQ(r.report.test, compute_metrics(r.test_predictions, r.test_targets));
  EXPECT_EQ(r.report.config_fingerprint, r.selected.run_fingerprint());

  ScvOptions threaded;
  threaded.jobs = 3;
  EXPECT_EQ(run_scv(corpus, c, threaded).report, r.report);
}
