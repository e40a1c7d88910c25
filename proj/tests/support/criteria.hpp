#pragma once

// Acceptance checks shared by the acceptance binary and the unit suite.
// Each returns a verdict plus the measured numbers behind it.

#include <filesystem>
#include <string>

namespace criteria {

struct Verdict {
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

// Tolerances and budgets.
inline constexpr double kGradRelTol = 1e-3;
inline constexpr std::size_t kGradCases = 100;
inline constexpr double kGradBudgetSeconds = 60.0;
inline constexpr std::size_t kTiedAdamSteps = 50;
inline constexpr std::size_t kCosineSeeds = 5;
inline constexpr double kCompressMseTarget = 1e-3;
inline constexpr std::size_t kCompressMaxEpochs = 200;
inline constexpr double kCompressPcaFactor = 10.0;
inline constexpr double kCompressBudgetSeconds = 300.0;
inline constexpr std::size_t kScvRecords = 10000;
inline constexpr std::size_t kAblationRecords = 5000;
inline constexpr std::size_t kAblationSeeds = 5;
inline constexpr double kAblationBudgetSeconds = 900.0;
inline constexpr double kFullScaleTol = 0.005;
inline constexpr double kReferenceFullMae = 0.0772;
inline constexpr double kReferenceBaselineMae = 0.0862;

Verdict gradient_correctness(std::size_t cases = kGradCases);
Verdict tied_weights_invariant();
Verdict directional_loss_reduction(std::size_t seeds = kCosineSeeds);
Verdict architecture_schedules();
Verdict autoencoder_compressibility();
Verdict cleaning_rule();
Verdict stratified_scv(std::size_t records = kScvRecords);
Verdict ablation_ordering(std::size_t records = kAblationRecords, std::size_t seeds = kAblationSeeds);
Verdict end_to_end_determinism(const std::filesystem::path& scratch);
Verdict report_correctness();
Verdict pooling_oracles();
// Runs only when LYRICNET_SPD_CORPUS (and optionally LYRICNET_SPD_EMBEDDINGS)
// point at a real cleaned corpus; skipped otherwise.
Verdict full_scale(const std::filesystem::path& scratch);

}  // namespace criteria
