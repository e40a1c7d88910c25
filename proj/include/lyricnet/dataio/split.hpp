#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lyricnet::dataio {

inline constexpr std::int32_t kTestFold = -1;

struct SplitOptions {
  std::size_t k = 5;
  std::size_t bins = 10;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
};

// Deterministic stratified train/test + k-fold assignment, keyed by id.
class SplitPlan {
 public:
  SplitPlan() = default;
  SplitPlan(SplitOptions options, std::vector<std::string> ids, std::vector<std::int32_t> assignment,
            std::vector<std::size_t> bin_of);

  const SplitOptions& options() const noexcept { return options_; }
  std::uint64_t seed() const noexcept { return options_.seed; }
  std::size_t k() const noexcept { return options_.k; }
  std::size_t strat_bins() const noexcept { return options_.bins; }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  // Fold index per input position, kTestFold for held-out test records.
  const std::vector<std::int32_t>& assignment() const noexcept { return assignment_; }
  const std::vector<std::size_t>& bin_of() const noexcept { return bin_of_; }

  std::optional<std::int32_t> fold_of(const std::string& id) const;
  bool is_test(const std::string& id) const;

  std::vector<std::size_t> test_indices() const;
  std::vector<std::size_t> fold_indices(std::size_t fold) const;
  // All non-test indices outside `fold`.
  std::vector<std::size_t> train_indices(std::size_t fold) const;

  std::string fingerprint() const;

 private:
  SplitOptions options_;
  std::vector<std::string> ids_;
  std::vector<std::int32_t> assignment_;
  std::vector<std::size_t> bin_of_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Equal-width bin of a normalized target in [0, 1]; 1.0 falls in the last bin.
std::size_t target_bin(double target, std::size_t bins);

// Carves a stratified test set (round(n * test_fraction) records), then deals
// the remaining records into k stratified folds. Records are shuffled within
// each bin under `seed` and dealt round-robin with the fold counter carried
// across bins, so per-bin and overall fold sizes differ by at most one.
// Throws DataError when a non-empty bin has fewer than k members.
SplitPlan stratified_kfold(std::span<const std::string> ids, std::span<const double> targets,
                           const SplitOptions& options);

}  // namespace lyricnet::dataio
