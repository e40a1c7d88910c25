#include "lyricnet/cli/commands.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <sstream>

#include "lyricnet/autoenc/autoencoder.hpp"
#include "lyricnet/binary_io.hpp"
#include "lyricnet/cli/checkpoint.hpp"
#include "lyricnet/cli/manifest.hpp"
#include "lyricnet/dataio/cleaning.hpp"
#include "lyricnet/dataio/corpus_io.hpp"
#include "lyricnet/dataio/sidecar.hpp"
#include "lyricnet/dataio/synth.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/evalreport/report_io.hpp"
#include "lyricnet/evalreport/residual.hpp"
#include "lyricnet/evalreport/scv.hpp"
#include "lyricnet/pooling/pooling.hpp"

namespace lyricnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Pipeline flags shared by train, ablate and print-config. Enum-like fields
// are parsed after CLI11 has filled the strings.
struct PipelineFlags {
  fusenet::PipelineConfig config;
  std::string mask = config.mask.to_string();
  std::string lyrics_activation{numcore::to_string(config.lyrics_activation)};
  std::string lyrics_loss = config.lyrics_loss.to_string();
  std::string config_file;
  CLI::App* owner = nullptr;

  void bind(CLI::App* app, bool with_mask) {
    owner = app;
    app->add_option("--config", config_file, "Flat key=value config file (keys are the long flag names)");
    if (with_mask) app->add_option("--mask", mask, "Modalities fed to the model, e.g. HH,LL,LR,M")->capture_default_str();
    app->add_option("--lyrics-activation", lyrics_activation, "relu|selu|silu|gelu")->capture_default_str();
    app->add_option("--lyrics-loss", lyrics_loss, "mse|directional|directional(a1,a2)")->capture_default_str();
    app->add_option("--bottleneck-divisor", config.bottleneck_divisor, "Lyrics bottleneck divisor (12 or 16)")
        ->capture_default_str();
    app->add_option("--ae-epochs", config.ae_epochs)->capture_default_str();
    app->add_option("--ae-lr", config.ae_lr)->capture_default_str();
    app->add_option("--ae-batch", config.ae_batch)->capture_default_str();
    app->add_option("--ae-val-fraction", config.ae_val_fraction)->capture_default_str();
    app->add_option("--ae-patience", config.ae_patience, "0 disables early stopping")->capture_default_str();
    app->add_option("--fusion-dropout", config.fusion_dropout)->capture_default_str();
    app->add_option("--fusion-lr", config.fusion_lr)->capture_default_str();
    app->add_option("--fusion-epochs", config.fusion_epochs)->capture_default_str();
    app->add_option("--fusion-batch", config.fusion_batch)->capture_default_str();
    app->add_option("--fusion-patience", config.fusion_patience, "0 disables early stopping")->capture_default_str();
    app->add_option("--fusion-min-width", config.fusion_min_width, "Lower bound on fusion hidden widths")
        ->capture_default_str();
    app->add_option("--seed", config.seed, "Root seed")->capture_default_str();
    app->add_option("--scv-k", config.scv_k, "Cross-validation folds")->capture_default_str();
    app->add_option("--strat-bins", config.strat_bins, "Target bins for stratification")->capture_default_str();
    app->add_option("--test-fraction", config.test_fraction)->capture_default_str();
    app->add_flag("--include-stylometric", config.include_stylometric, "Baseline: append stylometric columns");
  }

  // CLI11 only reads config files attached to the root app, so subcommand
  // files are applied here. Flags given on the command line win.
  void apply_config_file() {
    if (config_file.empty()) return;
    std::vector<CLI::ConfigItem> items;
    try {
      items = CLI::ConfigINI().from_file(config_file);
    } catch (const CLI::Error& e) {
      throw UsageError("config file " + config_file + ": " + e.what());
    }
    for (const CLI::ConfigItem& item : items) {
      std::string key = item.name;
      std::replace(key.begin(), key.end(), '_', '-');
      if (!item.parents.empty() || key == "config") throw UsageError("config file: unsupported key '" + item.fullname() + "'");
      CLI::Option* opt = owner->get_option_no_throw("--" + key);
      if (opt == nullptr) throw UsageError("config file: unknown key '" + item.name + "'");
      if (opt->count() > 0) continue;
      opt->add_result(item.inputs);
      try {
        opt->run_callback();
      } catch (const CLI::Error& e) {
        throw UsageError("config file: bad value for '" + item.name + "': " + e.what());
      }
    }
  }

  fusenet::PipelineConfig resolve() {
    apply_config_file();
    fusenet::PipelineConfig c = config;
    c.mask = dataio::ModalityMask::parse(mask);
    c.lyrics_activation = numcore::parse_activation(lyrics_activation);
    c.lyrics_loss = autoenc::ReconstructionLoss::parse(lyrics_loss);
    c.validate();
    return c;
  }
};

struct CorpusFlags {
  std::string corpus;
  std::string embeddings;
  std::string embedding_label;

  void bind(CLI::App* app) {
    app->add_option("--corpus", corpus, "Corpus file (.jsonl or binary)")->required();
    app->add_option("--embeddings", embeddings, "LEMB sidecar with lyric embeddings");
    app->add_option("--embedding-label", embedding_label, "Source label recorded for attached embeddings");
  }

  // Loads, attaches the sidecar and applies the cleaning rules.
  dataio::Corpus load(std::ostream& out) const {
    dataio::Corpus loaded = dataio::load_corpus(corpus).corpus;
    if (!embeddings.empty()) {
      const auto sidecar = dataio::read_sidecar(embeddings);
      const std::string label = embedding_label.empty() ? fs::path(embeddings).filename().string() : embedding_label;
      const auto attached = dataio::attach_embeddings(loaded, sidecar, label);
      out << "embeddings: attached " << attached.attached << ", missing " << attached.missing_ids.size() << "\n";
    }
    const std::size_t before = loaded.records.size();
    auto cleaned = dataio::clean_corpus(loaded.records);
    loaded.records = std::move(cleaned.kept);
    if (cleaned.rejected.total() > 0) {
      out << "cleaning: kept " << loaded.records.size() << " of " << before << " (too short "
          << cleaned.rejected.too_short << ", too long " << cleaned.rejected.too_long << ", language "
          << cleaned.rejected.language << ")\n";
    }
    if (loaded.records.empty()) throw DataError("corpus has no records after cleaning");
    return loaded;
  }
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

void write_json(const fs::path& path, const json& j) { write_file_text(path, j.dump(2) + "\n"); }

std::vector<dataio::TrackRecord> subset(const dataio::Corpus& corpus, const std::vector<std::size_t>& idx) {
  std::vector<dataio::TrackRecord> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(corpus.records[i]);
  return out;
}

// Rows a checkpoint is scored on: the held-out test rows of its own split
// when the corpus is the training corpus, every row otherwise.
struct EvalScope {
  std::string name;
  std::vector<std::size_t> indices;
};

EvalScope resolve_scope(const fusenet::TrainedPipeline& p, const RunManifest& m, const dataio::Corpus& corpus,
                        bool allow_new_corpus, std::ostream& out) {
  if (p.mask.lr && corpus.header.embedding_dim != m.embedding_dim) {
    throw IntegrityError("embedding_dim mismatch: checkpoint " + std::to_string(m.embedding_dim) + ", corpus " +
                         std::to_string(corpus.header.embedding_dim));
  }
  const std::string fp = dataio::corpus_fingerprint(corpus);
  EvalScope scope;
  if (fp != m.corpus_fingerprint) {
    if (!allow_new_corpus) {
      throw IntegrityError("corpus fingerprint mismatch\n  checkpoint: " + m.corpus_fingerprint + "\n  corpus:     " + fp);
    }
    out << "note: corpus differs from the training corpus; scoring every record\n";
    scope.name = "all";
    scope.indices.resize(corpus.records.size());
    for (std::size_t i = 0; i < scope.indices.size(); ++i) scope.indices[i] = i;
    return scope;
  }
  const dataio::SplitPlan split = fusenet::make_split(corpus, p.config);
  if (split.fingerprint() != m.split_fingerprint) {
    throw IntegrityError("split fingerprint mismatch\n  checkpoint: " + m.split_fingerprint +
                         "\n  recomputed: " + split.fingerprint());
  }
  scope.name = "test";
  scope.indices = split.test_indices();
  return scope;
}

int cmd_synth(const dataio::SynthOptions& opts, const std::string& out_path, const std::string& format,
              std::ostream& out) {
  const dataio::Corpus corpus = dataio::synth_dataset(opts);
  const auto fmt_kind = format.empty() ? dataio::format_for_path(out_path) : dataio::parse_corpus_format(format);
  dataio::save_corpus(corpus, out_path, fmt_kind);

  double sum = 0.0, sq = 0.0;
  std::map<std::string, std::size_t> languages;
  int min_year = 1 << 30, max_year = -(1 << 30);
  for (const auto& r : corpus.records) {
    sum += r.popularity_raw;
    languages[r.language]++;
    if (r.release_year) {
      min_year = std::min(min_year, *r.release_year);
      max_year = std::max(max_year, *r.release_year);
    }
  }
  const double n = static_cast<double>(corpus.records.size());
  const double mean = sum / n;
  for (const auto& r : corpus.records) sq += (r.popularity_raw - mean) * (r.popularity_raw - mean);
  const double sd = corpus.records.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;

  out << "wrote " << out_path << "\n";
  out << "tracks            " << corpus.records.size() << "\n";
  out << "popularity mean   " << fmt(mean, 2) << " (generator " << fmt(opts.label_mean, 2) << ")\n";
  out << "popularity std    " << fmt(sd, 2) << " (generator " << fmt(opts.label_std, 2) << " before rounding and clamping)\n";
  out << "normalized mean   " << fmt(mean / 100.0, 4) << "\n";
  out << "release years     " << min_year << "-" << max_year << "\n";
  out << "languages        ";
  for (const auto& [lang, count] : languages) out << " " << lang << ":" << count;
  out << "\n";
  out << "embedding dim     " << corpus.header.embedding_dim << "\n";
  out << "fingerprint       " << dataio::corpus_fingerprint(corpus) << "\n";
  return 0;
}

int cmd_train(const CorpusFlags& cf, const fusenet::PipelineConfig& config, const std::string& out_dir,
              std::size_t jobs, std::ostream& out) {
  const dataio::Corpus corpus = cf.load(out);
  evalreport::ScvOptions opts;
  opts.jobs = jobs;
  const evalreport::ScvResult r = evalreport::run_scv(corpus, config, opts);
  const fusenet::TrainedPipeline& p = r.selected;

  fs::create_directories(out_dir);
  const CheckpointContainer container = to_container(p);
  save_checkpoint(container, fs::path(out_dir) / "model.lnckpt");
  const std::string hash = container.manifest.hash();
  json manifest = container.manifest.to_json();
  manifest["manifest_hash"] = hash;
  write_json(fs::path(out_dir) / "manifest.json", manifest);
  json metrics = evalreport::to_json(r.report);
  metrics["manifest_hash"] = hash;
  write_json(fs::path(out_dir) / "metrics.json", metrics);
  write_file_text(fs::path(out_dir) / "folds.csv", evalreport::folds_csv(r.report));
  write_file_text(fs::path(out_dir) / "head_history.csv", fusenet::regressor_history_csv(p.head_history));
  if (p.audio_ae) {
    const char* name = config.model == fusenet::ModelKind::kBaseline ? "baseline_ae_history.csv" : "audio_ae_history.csv";
    write_file_text(fs::path(out_dir) / name, autoenc::history_csv(p.audio_ae->history));
  }
  if (p.lyrics_ae) write_file_text(fs::path(out_dir) / "lyrics_ae_history.csv", autoenc::history_csv(p.lyrics_ae->history));
  std::ostringstream preds;
  preds.precision(9);
  preds << "track_id,prediction,actual\n";
  for (std::size_t i = 0; i < r.test_indices.size(); ++i) {
    preds << corpus.records[r.test_indices[i]].track_id << ',' << r.test_predictions[i] << ',' << r.test_targets[i]
          << '\n';
  }
  write_file_text(fs::path(out_dir) / "test_predictions.csv", preds.str());

  out << "model " << fusenet::to_string(config.model) << ", mask " << p.mask.to_string() << ", head input width "
      << p.head_input_dim() << "\n";
  out << "folds " << r.report.folds.size() << ", selected fold " << r.report.selected_fold << "\n";
  out << "train MAE " << fmt(r.report.train.mae) << " MSE " << fmt(r.report.train.mse) << "\n";
  out << "val   MAE " << fmt(r.report.val.mae) << " MSE " << fmt(r.report.val.mse) << "\n";
  out << "test  MAE " << fmt(r.report.test.mae) << " MSE " << fmt(r.report.test.mse) << "  [manifest " << hash << "]\n";
  out << "wrote " << (fs::path(out_dir) / "model.lnckpt").string() << "\n";
  return 0;
}

int cmd_eval(const std::string& checkpoint, const CorpusFlags& cf, bool allow_new, const std::string& out_path,
             std::ostream& out) {
  RunManifest manifest;
  const fusenet::TrainedPipeline p = load_pipeline(checkpoint, &manifest);
  const dataio::Corpus corpus = cf.load(out);
  const EvalScope scope = resolve_scope(p, manifest, corpus, allow_new, out);
  const auto rows = subset(corpus, scope.indices);
  const std::vector<float> preds = fusenet::predict_batch(p, rows);
  std::vector<float> targets;
  for (const auto& r : rows) targets.push_back(static_cast<float>(dataio::normalize_popularity(r.popularity_raw)));
  const evalreport::ErrorPair e = evalreport::compute_metrics(preds, targets);
  const std::string hash = manifest.hash();
  out << scope.name << " n " << rows.size() << "\n";
  out << scope.name << " MAE " << fmt(e.mae) << " MSE " << fmt(e.mse) << "  [manifest " << hash << "]\n";
  if (!out_path.empty()) {
    write_json(out_path, json{{"scope", scope.name},
                              {"n", rows.size()},
                              {"mae", e.mae},
                              {"mse", e.mse},
                              {"manifest_hash", hash},
                              {"run_fingerprint", manifest.run_fingerprint}});
  }
  return 0;
}

int cmd_report(const std::string& checkpoint, const CorpusFlags& cf, bool allow_new, const std::string& out_dir,
               std::ostream& out) {
  RunManifest manifest;
  const fusenet::TrainedPipeline p = load_pipeline(checkpoint, &manifest);
  const dataio::Corpus corpus = cf.load(out);
  const EvalScope scope = resolve_scope(p, manifest, corpus, allow_new, out);
  const auto rows = subset(corpus, scope.indices);
  const std::vector<float> preds = fusenet::predict_batch(p, rows);
  std::vector<float> targets;
  for (const auto& r : rows) targets.push_back(static_cast<float>(dataio::normalize_popularity(r.popularity_raw)));
  const evalreport::ResidualReport report = evalreport::residual_report(preds, targets, rows);
  const std::string hash = manifest.hash();
  evalreport::write_residual_report(out_dir, report, rows, hash);

  out << scope.name << " n " << report.n << "  [manifest " << hash << "]\n";
  out << "MAE " << fmt(report.mae) << " MSE " << fmt(report.mse) << "\n";
  out << "mean actual " << fmt(report.mean_actual, 4) << ", mean predicted " << fmt(report.mean_predicted, 4) << "\n";
  out << "below 0.2: predicted " << fmt(report.tails.predicted_below, 4) << ", actual "
      << fmt(report.tails.actual_below, 4) << "\n";
  out << "above 0.8: predicted " << fmt(report.tails.predicted_above, 4) << ", actual "
      << fmt(report.tails.actual_above, 4) << "\n";
  if (report.segments) {
    for (const auto& s : *report.segments) out << "segment " << s.name << " n " << s.count << " MAE " << fmt(s.mae) << "\n";
  }
  out << "yearwise: " << (report.yearwise ? std::to_string(report.yearwise->size()) + " years" : "absent") << "\n";
  for (const std::string& note : report.notices) out << "notice: " << note << "\n";
  out << "wrote " << out_dir << "\n";
  return 0;
}

int cmd_ablate(const CorpusFlags& cf, const fusenet::PipelineConfig& config, const std::string& masks_text,
               std::size_t seeds, std::size_t jobs, const std::string& out_dir, std::ostream& out) {
  const dataio::Corpus corpus = cf.load(out);
  const std::vector<dataio::ModalityMask> masks =
      masks_text.empty() ? dataio::all_nonempty_masks() : dataio::parse_mask_list(masks_text);
  evalreport::ScvOptions opts;
  opts.jobs = jobs;
  if (!out_dir.empty()) fs::create_directories(out_dir);

  if (seeds <= 1) {
    const auto cells = evalreport::run_ablation(corpus, masks, config, opts);
    for (const auto& c : cells) {
      out << std::left << std::setw(12) << c.mask.to_string() << " test MAE " << fmt(c.report.test.mae) << " MSE "
          << fmt(c.report.test.mse) << "  [" << c.report.config_fingerprint.substr(0, 16) << "]\n";
    }
    if (!out_dir.empty()) {
      write_json(fs::path(out_dir) / "ablation.json", evalreport::ablation_to_json(std::span(cells)));
      write_file_text(fs::path(out_dir) / "ablation.csv", evalreport::ablation_csv(std::span(cells)));
    }
  } else {
    const auto cells = evalreport::run_ablation_repeated(corpus, masks, config, seeds, opts);
    for (const auto& c : cells) {
      out << std::left << std::setw(12) << c.mask.to_string() << " test MAE " << fmt(c.test_mae.mean) << " +- "
          << fmt(c.test_mae.std) << " over " << c.runs.size() << " seeds\n";
    }
    if (!out_dir.empty()) {
      write_json(fs::path(out_dir) / "ablation.json", evalreport::ablation_to_json(std::span(cells)));
      write_file_text(fs::path(out_dir) / "ablation.csv", evalreport::ablation_csv(std::span(cells)));
    }
  }
  return 0;
}

int cmd_pool(const std::string& ltok, const std::string& strategy, const std::string& out_path, std::ostream& out) {
  const auto s = pooling::parse_pooling(strategy);
  const pooling::TokenEmbeddingMatrix m = pooling::read_ltok(ltok);
  const std::vector<float> v = pooling::pool(m, s);
  const json j{{"strategy", std::string(pooling::to_string(s))}, {"tokens", m.tokens()}, {"dim", v.size()}, {"vector", v}};
  if (out_path.empty()) out << j.dump() << "\n";
  else write_json(out_path, j);
  return 0;
}

int dispatch(CLI::App& app, int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  dataio::SynthOptions synth_opts;
  std::string synth_out, synth_format;
  auto* synth = app.add_subcommand("synth", "Generate a planted-signal synthetic corpus");
  synth->add_option("--n", synth_opts.n, "Number of tracks")->capture_default_str();
  synth->add_option("--seed", synth_opts.seed)->capture_default_str();
  synth->add_option("--embedding-dim", synth_opts.embedding_dim)->capture_default_str();
  synth->add_option("--noise", synth_opts.noise, "Label noise relative to one modality")->capture_default_str();
  synth->add_option("--out", synth_out, "Output corpus path")->required();
  synth->add_option("--format", synth_format, "jsonl|binary (default: from extension)");

  PipelineFlags train_flags;
  CorpusFlags train_corpus;
  std::string train_out;
  std::size_t train_jobs = 1;
  bool baseline = false, full = false, train_print = false;
  auto* train = app.add_subcommand("train", "Cross-validated training; saves the median-val fold model");
  train_corpus.bind(train);
  train_flags.bind(train, true);
  auto* baseline_flag = train->add_flag("--baseline", baseline, "Train the single-autoencoder baseline");
  train->add_flag("--full", full, "Train the fusion model (default)")->excludes(baseline_flag);
  train->add_option("--out", train_out, "Output directory")->required();
  train->add_option("--jobs", train_jobs, "Parallel fold jobs")->capture_default_str();
  train->add_flag("--print-config", train_print, "Print the resolved configuration and exit");

  CorpusFlags eval_corpus;
  std::string eval_ckpt, eval_out;
  bool eval_allow = false;
  auto* eval = app.add_subcommand("eval", "Score a checkpoint on its held-out test rows");
  eval->add_option("--checkpoint", eval_ckpt)->required();
  eval_corpus.bind(eval);
  eval->add_flag("--allow-new-corpus", eval_allow, "Score every record of a different corpus");
  eval->add_option("--out", eval_out, "Write metrics JSON here");

  PipelineFlags ablate_flags;
  CorpusFlags ablate_corpus;
  std::string ablate_masks, ablate_out;
  std::size_t ablate_seeds = 1, ablate_jobs = 1;
  bool ablate_print = false;
  auto* ablate = app.add_subcommand("ablate", "Modality ablation grid over a shared split");
  ablate_corpus.bind(ablate);
  ablate_flags.bind(ablate, false);
  ablate->add_option("--masks", ablate_masks, "Mask list, e.g. HH,LL,LR,M;HH,LL,M;LR,M (default: all 15)");
  ablate->add_option("--seeds", ablate_seeds, "Repetitions under derived root seeds")->capture_default_str();
  ablate->add_option("--jobs", ablate_jobs, "Parallel jobs")->capture_default_str();
  ablate->add_option("--out", ablate_out, "Output directory");
  ablate->add_flag("--baseline", [&](std::int64_t) { ablate_flags.config.model = fusenet::ModelKind::kBaseline; },
                   "Ablate the baseline model");
  ablate->add_flag("--print-config", ablate_print, "Print the resolved configuration and exit");

  CorpusFlags report_corpus;
  std::string report_ckpt, report_out;
  bool report_allow = false;
  auto* report = app.add_subcommand("report", "Residual, calibration, segment and year-wise reports");
  report->add_option("--checkpoint", report_ckpt)->required();
  report_corpus.bind(report);
  report->add_flag("--allow-new-corpus", report_allow, "Report on every record of a different corpus");
  report->add_option("--out", report_out, "Output directory")->required();

  std::string pool_in, pool_strategy = "mean", pool_out;
  auto* pool = app.add_subcommand("pool", "Pool an LTOK token matrix into one vector");
  pool->add_option("--ltok", pool_in)->required();
  pool->add_option("--strategy", pool_strategy, "mean|max|concat_max_cls")->capture_default_str();
  pool->add_option("--out", pool_out, "Write JSON here instead of stdout");

  PipelineFlags print_flags;
  auto* print = app.add_subcommand("print-config", "Print the default (or given) configuration");
  print_flags.bind(print, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : to_int(ExitCode::kUsage);
  }

  if (synth->parsed()) return cmd_synth(synth_opts, synth_out, synth_format, out);
  if (train->parsed()) {
    train_flags.config.model = baseline ? fusenet::ModelKind::kBaseline : fusenet::ModelKind::kFusion;
    const fusenet::PipelineConfig config = train_flags.resolve();
    if (train_print) {
      out << train->config_to_str(true, false);
      return 0;
    }
    return cmd_train(train_corpus, config, train_out, train_jobs, out);
  }
  if (eval->parsed()) return cmd_eval(eval_ckpt, eval_corpus, eval_allow, eval_out, out);
  if (ablate->parsed()) {
    const fusenet::PipelineConfig config = ablate_flags.resolve();
    if (ablate_print) {
      out << ablate->config_to_str(true, false);
      return 0;
    }
    return cmd_ablate(ablate_corpus, config, ablate_masks, ablate_seeds, ablate_jobs, ablate_out, out);
  }
  if (report->parsed()) return cmd_report(report_ckpt, report_corpus, report_allow, report_out, out);
  if (pool->parsed()) return cmd_pool(pool_in, pool_strategy, pool_out, out);
  if (print->parsed()) {
    print_flags.resolve();
    out << print->config_to_str(true, true);
    return 0;
  }
  return to_int(ExitCode::kUsage);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multimodal music popularity regression"};
  app.name("lyricnet");
  try {
    return dispatch(app, argc, argv, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return to_int(e.exit_code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return to_int(ExitCode::kFailure);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lyricnet"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lyricnet::cli
