#include "lyricnet/evalreport/report_io.hpp"

#include <sstream>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"

namespace lyricnet::evalreport {

using nlohmann::json;

namespace {

std::ostringstream csv_stream() {
  std::ostringstream s;
  s.precision(9);
  return s;
}

json mean_std_json(const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.std}}; }

}  // namespace

json to_json(const ErrorPair& e) { return json{{"mae", e.mae}, {"mse", e.mse}}; }

json to_json(const MetricsReport& m) {
  json folds = json::array();
  for (const FoldMetrics& f : m.folds) {
    folds.push_back(json{{"fold", f.fold},
                         {"train", to_json(f.train)},
                         {"val", to_json(f.val)},
                         {"best_epoch", f.best_epoch},
                         {"run_fingerprint", f.run_fingerprint}});
  }
  return json{{"mask", m.mask},
              {"model", m.model},
              {"train", to_json(m.train)},
              {"val", to_json(m.val)},
              {"test", to_json(m.test)},
              {"folds", folds},
              {"selected_fold", m.selected_fold},
              {"config_fingerprint", m.config_fingerprint},
              {"scale", "normalized"}};
}

MetricsReport metrics_from_json(const json& j) {
  try {
    auto pair = [](const json& e) { return ErrorPair{e.at("mae").get<double>(), e.at("mse").get<double>()}; };
    MetricsReport m;
    m.mask = j.at("mask").get<std::string>();
    m.model = j.at("model").get<std::string>();
    m.train = pair(j.at("train"));
    m.val = pair(j.at("val"));
    m.test = pair(j.at("test"));
    for (const json& f : j.at("folds")) {
      m.folds.push_back({f.at("fold").get<std::size_t>(), pair(f.at("train")), pair(f.at("val")),
                         f.at("best_epoch").get<std::size_t>(), f.at("run_fingerprint").get<std::string>()});
    }
    m.selected_fold = j.at("selected_fold").get<std::size_t>();
    m.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("metrics report: ") + e.what());
  }
}

json to_json(const ResidualReport& r) {
  json calib = json::array();
  for (const CalibrationBin& b : r.calibration) {
    calib.push_back(json{{"lower", b.lower},
                         {"upper", b.upper},
                         {"count", b.count},
                         {"mean_predicted", b.count ? json(b.mean_predicted) : json(nullptr)},
                         {"mean_actual", b.count ? json(b.mean_actual) : json(nullptr)}});
  }
  json out{{"n", r.n},
           {"mae", r.mae},
           {"mse", r.mse},
           {"mean_actual", r.mean_actual},
           {"mean_predicted", r.mean_predicted},
           {"residual_stats",
            {{"mean", r.stats.mean}, {"stddev", r.stats.stddev}, {"min", r.stats.min}, {"max", r.stats.max}}},
           {"tails",
            {{"low_threshold", kLowTail},
             {"high_threshold", kHighTail},
             {"predicted_below", r.tails.predicted_below},
             {"actual_below", r.tails.actual_below},
             {"predicted_above", r.tails.predicted_above},
             {"actual_above", r.tails.actual_above}}},
           {"calibration", calib},
           {"notices", r.notices}};
  if (r.segments) {
    json segs = json::array();
    for (const SegmentError& s : *r.segments) {
      segs.push_back(json{{"name", s.name},
                          {"count", s.count},
                          {"min_artist_popularity", s.min_artist_popularity},
                          {"max_artist_popularity", s.max_artist_popularity},
                          {"mae", s.mae}});
    }
    out["segments"] = segs;
  } else {
    out["segments"] = nullptr;
  }
  if (r.yearwise) {
    json years = json::array();
    for (const YearError& y : *r.yearwise) {
      years.push_back(json{{"year", y.year},
                           {"count", y.count},
                           {"mae", y.mae},
                           {"q1", y.q1},
                           {"median", y.median},
                           {"q3", y.q3}});
    }
    out["yearwise"] = years;
  } else {
    out["yearwise"] = nullptr;
  }
  return out;
}

json ablation_to_json(std::span<const AblationCell> cells) {
  json out = json::array();
  for (const AblationCell& c : cells) {
    out.push_back(json{{"mask", c.mask.to_string()}, {"split_fingerprint", c.split_fingerprint}, {"report", to_json(c.report)}});
  }
  return out;
}

json ablation_to_json(std::span<const RepeatedCell> cells) {
  json out = json::array();
  for (const RepeatedCell& c : cells) {
    json runs = json::array();
    for (const MetricsReport& m : c.runs) runs.push_back(to_json(m));
    out.push_back(json{{"mask", c.mask.to_string()},
                       {"repeats", c.runs.size()},
                       {"test_mae", mean_std_json(c.test_mae)},
                       {"test_mse", mean_std_json(c.test_mse)},
                       {"val_mae", mean_std_json(c.val_mae)},
                       {"runs", runs}});
  }
  return out;
}

std::string folds_csv(const MetricsReport& m) {
  auto s = csv_stream();
  s << "fold,train_mae,train_mse,val_mae,val_mse,best_epoch,selected,run_fingerprint\n";
  for (const FoldMetrics& f : m.folds) {
    s << f.fold << ',' << f.train.mae << ',' << f.train.mse << ',' << f.val.mae << ',' << f.val.mse << ','
      << f.best_epoch << ',' << (f.fold == m.selected_fold) << ',' << f.run_fingerprint << '\n';
  }
  return s.str();
}

std::string calibration_csv(const ResidualReport& r) {
  auto s = csv_stream();
  s << "lower,upper,count,mean_predicted,mean_actual\n";
  for (const CalibrationBin& b : r.calibration) {
    s << b.lower << ',' << b.upper << ',' << b.count << ',';
    if (b.count) s << b.mean_predicted << ',' << b.mean_actual;
    else s << ',';
    s << '\n';
  }
  return s.str();
}

std::string segments_csv(const ResidualReport& r) {
  auto s = csv_stream();
  s << "segment,count,min_artist_popularity,max_artist_popularity,mae\n";
  if (r.segments) {
    for (const SegmentError& g : *r.segments) {
      s << g.name << ',' << g.count << ',' << g.min_artist_popularity << ',' << g.max_artist_popularity << ',' << g.mae
        << '\n';
    }
  }
  return s.str();
}

std::string yearwise_csv(const ResidualReport& r) {
  auto s = csv_stream();
  s << "year,count,mae,q1,median,q3\n";
  if (r.yearwise) {
    for (const YearError& y : *r.yearwise) {
      s << y.year << ',' << y.count << ',' << y.mae << ',' << y.q1 << ',' << y.median << ',' << y.q3 << '\n';
    }
  }
  return s.str();
}

std::string residuals_csv(const ResidualReport& r, std::span<const dataio::TrackRecord> records) {
  auto s = csv_stream();
  s << "track_id,residual\n";
  for (std::size_t i = 0; i < r.residuals.size(); ++i) s << records[i].track_id << ',' << r.residuals[i] << '\n';
  return s.str();
}

std::string ablation_csv(std::span<const AblationCell> cells) {
  auto s = csv_stream();
  s << "mask,train_mae,val_mae,val_mse,test_mae,test_mse,config_fingerprint\n";
  for (const AblationCell& c : cells) {
    const MetricsReport& m = c.report;
    s << '"' << c.mask.to_string() << "\"," << m.train.mae << ',' << m.val.mae << ',' << m.val.mse << ',' << m.test.mae
      << ',' << m.test.mse << ',' << m.config_fingerprint << '\n';
  }
  return s.str();
}

std::string ablation_csv(std::span<const RepeatedCell> cells) {
  auto s = csv_stream();
  s << "mask,repeats,test_mae_mean,test_mae_std,test_mse_mean,test_mse_std,val_mae_mean,val_mae_std\n";
  for (const RepeatedCell& c : cells) {
    s << '"' << c.mask.to_string() << "\"," << c.runs.size() << ',' << c.test_mae.mean << ',' << c.test_mae.std << ','
      << c.test_mse.mean << ',' << c.test_mse.std << ',' << c.val_mae.mean << ',' << c.val_mae.std << '\n';
  }
  return s.str();
}

void write_residual_report(const std::filesystem::path& dir, const ResidualReport& r,
                           std::span<const dataio::TrackRecord> records, const std::string& fingerprint) {
  std::filesystem::create_directories(dir);
  json j = to_json(r);
  j["fingerprint"] = fingerprint;
  write_file_text(dir / "report.json", j.dump(2) + "\n");
  const std::string stamp = "# fingerprint " + fingerprint + "\n";
  write_file_text(dir / "calibration.csv", stamp + calibration_csv(r));
  write_file_text(dir / "residuals.csv", stamp + residuals_csv(r, records));
  if (r.segments) write_file_text(dir / "segments.csv", stamp + segments_csv(r));
  if (r.yearwise) write_file_text(dir / "yearwise.csv", stamp + yearwise_csv(r));
}

}  // namespace lyricnet::evalreport
