#include "lyricnet/fusenet/pipeline.hpp"

#include <string>

#include "lyricnet/dataio/cleaning.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/fusenet/models.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::fusenet {

using dataio::FeatureBundle;
using numcore::Matrix;

namespace {

template <typename F>
auto staged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const DivergenceError& e) {
    throw DivergenceError("stage " + stage + ": " + e.what());
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError("stage " + stage + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError("stage " + stage + ": " + e.what());
  }
}

std::string fold_label(const char* component, std::size_t fold) {
  return std::string(component) + "/fold" + std::to_string(fold);
}

void require_width(const Matrix& block, std::size_t expected, const char* name) {
  if (block.cols() != expected) {
    throw DataError(std::string("pipeline: ") + name + " width " + std::to_string(block.cols()) + " but the model expects " +
                    std::to_string(expected));
  }
}

FeatureBundle scaled_bundle(const TrainedPipeline& p, std::span<const dataio::TrackRecord> records) {
  FeatureBundle b = dataio::assemble_features(records, p.mask, p.scalers.stylo.has_value());
  if (p.scalers.hl) b.hl = p.scalers.hl->transform(b.hl);
  if (p.scalers.ll) b.ll = p.scalers.ll->transform(b.ll);
  if (p.scalers.lyr) {
    require_width(b.lyr, p.scalers.lyr->mean.size(), "lyric embedding");
    b.lyr = p.scalers.lyr->transform(b.lyr);
  }
  if (p.scalers.meta) b.meta = p.scalers.meta->transform(b.meta);
  if (p.scalers.stylo) b.stylo = p.scalers.stylo->transform(b.stylo);
  return b;
}

// Blocks that go through the baseline autoencoder, in canonical order.
Matrix baseline_concat(const FeatureBundle& b) {
  const Matrix* blocks[] = {&b.hl, &b.ll, &b.meta, &b.stylo};
  return numcore::hconcat(blocks);
}

Matrix inputs_from_scaled(const TrainedPipeline& p, const FeatureBundle& b) {
  if (p.config.model == ModelKind::kBaseline) return autoenc::encode(*p.audio_ae, baseline_concat(b));
  Matrix ll_code, lr_code;
  if (p.audio_ae) ll_code = autoenc::encode(*p.audio_ae, b.ll);
  else ll_code = Matrix(b.rows(), 0);
  if (p.lyrics_ae) lr_code = autoenc::encode(*p.lyrics_ae, b.lyr);
  else lr_code = Matrix(b.rows(), 0);
  const Matrix* blocks[] = {&b.hl, &ll_code, &lr_code, &b.meta};
  return numcore::hconcat(blocks);
}

}  // namespace

std::string TrainedPipeline::run_fingerprint() const {
  nlohmann::json j{{"config", to_json(config)},
                   {"corpus", provenance.corpus_fingerprint},
                   {"split", provenance.split_fingerprint},
                   {"fold", provenance.fold},
                   {"embedding_source", provenance.embedding_source}};
  return to_hex(sha256(j.dump()));
}

bool equivalent(const TrainedPipeline& a, const TrainedPipeline& b) {
  auto same_ae = [](const AePtr& x, const AePtr& y) { return (!x && !y) || (x && y && *x == *y); };
  return a.config == b.config && a.mask == b.mask && same_ae(a.audio_ae, b.audio_ae) &&
         same_ae(a.lyrics_ae, b.lyrics_ae) && a.head == b.head && a.scalers == b.scalers &&
         a.head_history == b.head_history && a.head_best_epoch == b.head_best_epoch && a.provenance == b.provenance;
}

dataio::SplitPlan make_split(const dataio::Corpus& corpus, const PipelineConfig& config) {
  std::vector<std::string> ids;
  std::vector<double> targets;
  ids.reserve(corpus.records.size());
  targets.reserve(corpus.records.size());
  for (const dataio::TrackRecord& r : corpus.records) {
    ids.push_back(r.track_id);
    targets.push_back(dataio::normalize_popularity(r.popularity_raw));
  }
  dataio::SplitOptions opts;
  opts.k = config.scv_k;
  opts.bins = config.strat_bins;
  opts.seed = derive_seed(config.seed, "split");
  opts.test_fraction = config.test_fraction;
  return dataio::stratified_kfold(ids, targets, opts);
}

AePtr AeCache::get_or_train(const std::string& key, const std::function<autoenc::TrainedAutoencoder()>& train) {
  std::shared_future<AePtr> future;
  std::optional<std::promise<AePtr>> promise;
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      future = it->second;
    } else {
      promise.emplace();
      future = promise->get_future().share();
      entries_.emplace(key, future);
    }
  }
  if (promise) {
    try {
      promise->set_value(std::make_shared<const autoenc::TrainedAutoencoder>(train()));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::size_t AeCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

TrainedPipeline train_pipeline(const dataio::Corpus& corpus, const dataio::SplitPlan& split, std::size_t fold,
                               const PipelineConfig& config, const TrainContext& context) {
  config.validate();
  const auto& records = corpus.records;
  if (split.ids().size() != records.size()) throw DataError("train_pipeline: split does not match corpus size");
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (split.ids()[i] != records[i].track_id) throw DataError("train_pipeline: split does not match corpus order");
  }
  if (fold >= split.k()) throw UsageError("train_pipeline: fold " + std::to_string(fold) + " out of range");

  TrainedPipeline p;
  p.config = config;
  p.mask = config.effective_mask();
  p.provenance.corpus_fingerprint =
      context.corpus_fingerprint.empty() ? dataio::corpus_fingerprint(corpus) : context.corpus_fingerprint;
  p.provenance.split_fingerprint = split.fingerprint();
  p.provenance.embedding_dim = corpus.header.embedding_dim;
  p.provenance.embedding_source = corpus.header.embedding_source;
  p.provenance.fold = fold;

  const std::vector<std::size_t> train_rows = split.train_indices(fold);
  const std::vector<std::size_t> val_rows = split.fold_indices(fold);
  const bool baseline = config.model == ModelKind::kBaseline;
  const bool stylo = baseline && config.include_stylometric;

  // Stage 1: scalers from training rows only.
  FeatureBundle raw = staged("features", [&] { return dataio::assemble_features(records, p.mask, stylo); });
  if (p.mask.hh) p.scalers.hl = dataio::MinMaxScaler::fit(raw.hl, train_rows);
  if (p.mask.ll) p.scalers.ll = dataio::MinMaxScaler::fit(raw.ll, train_rows);
  if (p.mask.lr) p.scalers.lyr = dataio::Standardizer::fit(raw.lyr, train_rows);
  if (p.mask.m) p.scalers.meta = dataio::MinMaxScaler::fit(raw.meta, train_rows);
  if (stylo) p.scalers.stylo = dataio::MinMaxScaler::fit(raw.stylo, train_rows);
  const FeatureBundle scaled = scaled_bundle(p, records);

  // Stage 2: autoencoders on training rows.
  auto ae_config = [&](std::uint64_t seed) {
    autoenc::AeTrainConfig c;
    c.epochs = config.ae_epochs;
    c.learning_rate = config.ae_lr;
    c.batch_size = config.ae_batch;
    c.seed = seed;
    c.val_fraction = config.ae_val_fraction;
    c.patience = config.ae_patience;
    return c;
  };
  auto obtain = [&](const std::string& key, std::function<autoenc::TrainedAutoencoder()> train) {
    return context.cache ? context.cache->get_or_train(key, train)
                         : std::make_shared<const autoenc::TrainedAutoencoder>(train());
  };

  if (baseline) {
    const std::string label = fold_label(stylo ? "baseline_ae_stylo" : "baseline_ae", fold);
    const std::uint64_t seed = derive_seed(config.seed, label);
    p.provenance.seeds[label] = seed;
    const Matrix x = numcore::select_rows(baseline_concat(scaled), train_rows);
    const autoenc::AutoencoderSpec spec = build_baseline(x.cols()).autoencoder;
    // The concatenated block depends on the mask, so the cache key does too.
    p.audio_ae = obtain(label + "/" + p.mask.to_string(),
                        [&] { return staged("baseline_ae", [&] { return autoenc::train_autoencoder(spec, x, ae_config(seed)); }); });
  } else {
    if (p.mask.ll) {
      const std::string label = fold_label("audio_ae", fold);
      const std::uint64_t seed = derive_seed(config.seed, label);
      p.provenance.seeds[label] = seed;
      p.audio_ae = obtain(label, [&] {
        const Matrix x = numcore::select_rows(scaled.ll, train_rows);
        return staged("audio_ae", [&] { return autoenc::train_autoencoder(autoenc::build_audio_ae(x.cols()), x, ae_config(seed)); });
      });
    }
    if (p.mask.lr) {
      const std::string label = fold_label("lyrics_ae", fold);
      const std::uint64_t seed = derive_seed(config.seed, label);
      p.provenance.seeds[label] = seed;
      p.lyrics_ae = obtain(label, [&] {
        const Matrix x = numcore::select_rows(scaled.lyr, train_rows);
        const autoenc::AutoencoderSpec spec =
            autoenc::build_lyrics_ae(x.cols(), config.bottleneck_divisor, config.lyrics_activation, config.lyrics_loss);
        return staged("lyrics_ae", [&] { return autoenc::train_autoencoder(spec, x, ae_config(seed)); });
      });
    }
  }

  // Stage 3: frozen encoders feed the regression head.
  const Matrix inputs = inputs_from_scaled(p, scaled);
  const std::string head_label = fold_label(baseline ? "baseline_head" : "fusion", fold);
  const std::uint64_t head_seed = derive_seed(config.seed, head_label);
  p.provenance.seeds[head_label] = head_seed;
  Network init = baseline ? Network(baseline_head_layers(inputs.cols()), derive_seed(head_seed, "init"))
                          : build_fusenet(inputs.cols(), derive_seed(head_seed, "init"), config.fusion_min_width);

  std::vector<float> y_train, y_val;
  for (std::size_t i : train_rows) y_train.push_back(scaled.target[i]);
  for (std::size_t i : val_rows) y_val.push_back(scaled.target[i]);
  RegressorTrainConfig rc;
  rc.epochs = config.fusion_epochs;
  rc.learning_rate = config.fusion_lr;
  rc.batch_size = config.fusion_batch;
  rc.dropout = config.fusion_dropout;
  rc.patience = config.fusion_patience;
  rc.seed = head_seed;
  TrainedRegressor head = staged(baseline ? "baseline_head" : "fusion", [&] {
    return train_regressor(std::move(init), numcore::select_rows(inputs, train_rows), y_train,
                           numcore::select_rows(inputs, val_rows), y_val, rc);
  });
  p.head = std::move(head.net);
  p.head_history = std::move(head.history);
  p.head_best_epoch = head.best_epoch;

  if (context.predictions) *context.predictions = predict_values(p.head, inputs);
  return p;
}

Matrix pipeline_inputs(const TrainedPipeline& p, std::span<const dataio::TrackRecord> records) {
  return inputs_from_scaled(p, scaled_bundle(p, records));
}

std::vector<float> predict_batch(const TrainedPipeline& p, std::span<const dataio::TrackRecord> records) {
  return predict_values(p.head, pipeline_inputs(p, records));
}

}  // namespace lyricnet::fusenet
