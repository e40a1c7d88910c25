#include "lyricnet/evalreport/scv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "lyricnet/dataio/cleaning.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::evalreport {

namespace {

// Runs task(i) for i in [0, count) on up to `jobs` threads. Each task writes
// only its own result slot; the exception of the lowest failing index wins.
void run_tasks(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct FoldRun {
  fusenet::TrainedPipeline pipeline;
  std::vector<float> predictions;
};

std::vector<float> gather(std::span<const float> values, std::span<const std::size_t> idx) {
  std::vector<float> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(values[i]);
  return out;
}

ScvResult summarize(const fusenet::PipelineConfig& config, const dataio::SplitPlan& split,
                    std::span<const float> targets, std::vector<FoldRun>& runs) {
  ScvResult r;
  r.split = split;
  r.report.mask = config.effective_mask().to_string();
  r.report.model = fusenet::to_string(config.model);
  const double k = static_cast<double>(runs.size());
  for (std::size_t f = 0; f < runs.size(); ++f) {
    const auto train_idx = split.train_indices(f);
    const auto val_idx = split.fold_indices(f);
    FoldMetrics fm;
    fm.fold = f;
    fm.train = compute_metrics(gather(runs[f].predictions, train_idx), gather(targets, train_idx));
    fm.val = compute_metrics(gather(runs[f].predictions, val_idx), gather(targets, val_idx));
    fm.best_epoch = runs[f].pipeline.head_best_epoch;
    fm.run_fingerprint = runs[f].pipeline.run_fingerprint();
    r.report.train.mae += fm.train.mae / k;
    r.report.train.mse += fm.train.mse / k;
    r.report.val.mae += fm.val.mae / k;
    r.report.val.mse += fm.val.mse / k;
    r.report.folds.push_back(std::move(fm));
  }
  const std::size_t sel = median_val_fold(r.report.folds);
  r.report.selected_fold = sel;
  r.report.config_fingerprint = r.report.folds[sel].run_fingerprint;
  r.test_indices = split.test_indices();
  r.test_predictions = gather(runs[sel].predictions, r.test_indices);
  r.test_targets = gather(targets, r.test_indices);
  r.report.test = compute_metrics(r.test_predictions, r.test_targets);
  r.selected = std::move(runs[sel].pipeline);
  return r;
}

std::vector<ScvResult> run_grid(const dataio::Corpus& corpus, const dataio::SplitPlan& split,
                                std::span<const fusenet::PipelineConfig> configs, const ScvOptions& options,
                                fusenet::AeCache* cache) {
  const std::size_t k = split.k();
  std::vector<float> targets;
  targets.reserve(corpus.records.size());
  for (const auto& rec : corpus.records) targets.push_back(static_cast<float>(dataio::normalize_popularity(rec.popularity_raw)));

  fusenet::TrainContext base;
  base.cache = cache;
  base.corpus_fingerprint =
      options.corpus_fingerprint.empty() ? dataio::corpus_fingerprint(corpus) : options.corpus_fingerprint;

  std::vector<FoldRun> runs(configs.size() * k);
  // Fold-major order so the autoencoders of fold 0 are trained first and
  // the remaining masks of that fold reuse them.
  run_tasks(runs.size(), options.jobs, [&](std::size_t t) {
    const std::size_t fold = t / configs.size();
    const std::size_t c = t % configs.size();
    fusenet::TrainContext ctx = base;
    FoldRun& run = runs[c * k + fold];
    ctx.predictions = &run.predictions;
    run.pipeline = fusenet::train_pipeline(corpus, split, fold, configs[c], ctx);
  });

  std::vector<ScvResult> out;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<FoldRun> cell(std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>(c * k)),
                              std::make_move_iterator(runs.begin() + static_cast<std::ptrdiff_t>((c + 1) * k)));
    out.push_back(summarize(configs[c], split, targets, cell));
  }
  return out;
}

}  // namespace

ScvResult run_scv(const dataio::Corpus& corpus, const fusenet::PipelineConfig& config, const ScvOptions& options) {
  config.validate();
  const dataio::SplitPlan split = fusenet::make_split(corpus, config);
  return std::move(run_grid(corpus, split, std::span(&config, 1), options, options.cache).front());
}

std::vector<AblationCell> run_ablation(const dataio::Corpus& corpus, std::span<const dataio::ModalityMask> masks,
                                       const fusenet::PipelineConfig& config, const ScvOptions& options) {
  if (masks.empty()) throw UsageError("run_ablation: no masks given");
  std::vector<fusenet::PipelineConfig> configs;
  for (const dataio::ModalityMask& m : masks) {
    if (m.empty()) throw UsageError("run_ablation: empty modality mask");
    fusenet::PipelineConfig c = config;
    c.mask = m;
    c.validate();
    configs.push_back(c);
  }
  if (std::any_of(masks.begin(), masks.end(), [](const auto& m) { return m.lr; }) &&
      config.model == fusenet::ModelKind::kFusion) {
    for (const auto& r : corpus.records) {
      if (!r.lyric_embedding) throw DataError("run_ablation: LR mask requested but track " + r.track_id + " has no embedding");
    }
  }
  const dataio::SplitPlan split = fusenet::make_split(corpus, config);
  fusenet::AeCache local;
  std::vector<ScvResult> results = run_grid(corpus, split, configs, options, options.cache ? options.cache : &local);

  std::vector<AblationCell> cells;
  for (std::size_t i = 0; i < results.size(); ++i) {
    cells.push_back({masks[i], std::move(results[i].report), split.fingerprint()});
  }
  return cells;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::uint64_t repeat_seed(std::uint64_t root, std::size_t r) {
  return r == 0 ? root : derive_seed(root, "repeat" + std::to_string(r));
}

std::vector<RepeatedCell> run_ablation_repeated(const dataio::Corpus& corpus,
                                                std::span<const dataio::ModalityMask> masks,
                                                const fusenet::PipelineConfig& config, std::size_t repeats,
                                                const ScvOptions& options) {
  if (repeats == 0) throw UsageError("run_ablation_repeated: need at least one repetition");
  std::vector<RepeatedCell> cells(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) cells[i].mask = masks[i];
  ScvOptions opts = options;
  if (opts.corpus_fingerprint.empty()) opts.corpus_fingerprint = dataio::corpus_fingerprint(corpus);
  for (std::size_t r = 0; r < repeats; ++r) {
    fusenet::PipelineConfig c = config;
    c.seed = repeat_seed(config.seed, r);
    opts.cache = nullptr;
    auto run = run_ablation(corpus, masks, c, opts);
    for (std::size_t i = 0; i < run.size(); ++i) cells[i].runs.push_back(std::move(run[i].report));
  }
  for (RepeatedCell& cell : cells) {
    std::vector<double> tmae, tmse, vmae;
    for (const MetricsReport& m : cell.runs) {
      tmae.push_back(m.test.mae);
      tmse.push_back(m.test.mse);
      vmae.push_back(m.val.mae);
    }
    cell.test_mae = mean_std(tmae);
    cell.test_mse = mean_std(tmse);
    cell.val_mae = mean_std(vmae);
  }
  return cells;
}

}  // namespace lyricnet::evalreport
