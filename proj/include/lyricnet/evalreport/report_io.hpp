#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "lyricnet/dataio/track.hpp"
#include "lyricnet/evalreport/metrics.hpp"
#include "lyricnet/evalreport/residual.hpp"
#include "lyricnet/evalreport/scv.hpp"

namespace lyricnet::evalreport {

nlohmann::json to_json(const ErrorPair& e);
nlohmann::json to_json(const MetricsReport& m);
MetricsReport metrics_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json ablation_to_json(std::span<const AblationCell> cells);
nlohmann::json ablation_to_json(std::span<const RepeatedCell> cells);

std::string folds_csv(const MetricsReport& m);
std::string calibration_csv(const ResidualReport& r);
std::string segments_csv(const ResidualReport& r);
std::string yearwise_csv(const ResidualReport& r);
std::string residuals_csv(const ResidualReport& r, std::span<const dataio::TrackRecord> records);
std::string ablation_csv(std::span<const AblationCell> cells);
std::string ablation_csv(std::span<const RepeatedCell> cells);

// report.json plus one CSV per present section under `dir`, every file
// stamped with `fingerprint`.
void write_residual_report(const std::filesystem::path& dir, const ResidualReport& r,
                           std::span<const dataio::TrackRecord> records, const std::string& fingerprint);

}  // namespace lyricnet::evalreport
