#include "lyricnet/dataio/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lyricnet/binary_io.hpp"
#include "lyricnet/errors.hpp"
#include "lyricnet/hashing.hpp"

namespace lyricnet::dataio {

SplitPlan::SplitPlan(SplitOptions options, std::vector<std::string> ids, std::vector<std::int32_t> assignment,
                     std::vector<std::size_t> bin_of)
    : options_(options), ids_(std::move(ids)), assignment_(std::move(assignment)), bin_of_(std::move(bin_of)) {
  if (ids_.size() != assignment_.size() || ids_.size() != bin_of_.size()) {
    throw DataError("split plan: ids/assignment length mismatch");
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) throw DataError("split plan: duplicate track id " + ids_[i]);
  }
}

std::optional<std::int32_t> SplitPlan::fold_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end() || assignment_[it->second] == kTestFold) return std::nullopt;
  return assignment_[it->second];
}

bool SplitPlan::is_test(const std::string& id) const {
  auto it = index_.find(id);
  return it != index_.end() && assignment_[it->second] == kTestFold;
}

std::vector<std::size_t> SplitPlan::test_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == kTestFold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> SplitPlan::fold_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == static_cast<std::int32_t>(fold)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> SplitPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] != kTestFold && assignment_[i] != static_cast<std::int32_t>(fold)) out.push_back(i);
  }
  return out;
}

std::string SplitPlan::fingerprint() const {
  ByteWriter w;
  w.put_u64(options_.seed);
  w.put_u32(static_cast<std::uint32_t>(options_.k));
  w.put_u32(static_cast<std::uint32_t>(options_.bins));
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    w.put_string_u16(ids_[i]);
    w.put_i32(assignment_[i]);
  }
  return to_hex(sha256(w.bytes()));
}

std::size_t target_bin(double target, std::size_t bins) {
  if (!(target >= 0.0 && target <= 1.0)) {
    throw DataError("stratification target " + std::to_string(target) + " outside [0, 1]");
  }
  const auto b = static_cast<std::size_t>(std::floor(target * static_cast<double>(bins)));
  return std::min(b, bins - 1);
}

SplitPlan stratified_kfold(std::span<const std::string> ids, std::span<const double> targets,
                           const SplitOptions& options) {
  if (options.k < 2) throw UsageError("stratified_kfold: k must be at least 2");
  if (options.bins < 1) throw UsageError("stratified_kfold: bins must be at least 1");
  if (!(options.test_fraction >= 0.0 && options.test_fraction < 1.0)) {
    throw UsageError("stratified_kfold: test_fraction must lie in [0, 1)");
  }
  if (ids.size() != targets.size()) throw DataError("stratified_kfold: ids and targets differ in length");
  const std::size_t n = ids.size();

  std::vector<std::size_t> bin_of(n);
  std::vector<std::vector<std::size_t>> members(options.bins);
  for (std::size_t i = 0; i < n; ++i) {
    bin_of[i] = target_bin(targets[i], options.bins);
    members[bin_of[i]].push_back(i);
  }
  for (std::size_t b = 0; b < options.bins; ++b) {
    const std::size_t c = members[b].size();
    if (c > 0 && c < options.k) {
      throw DataError("stratification bin " + std::to_string(b) + " has " + std::to_string(c) +
                      " member(s), fewer than k=" + std::to_string(options.k) + "; use fewer bins");
    }
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (auto& bin : members) {
    std::shuffle(bin.begin(), bin.end(), rng);
    order.insert(order.end(), bin.begin(), bin.end());
  }

  const auto test_total = static_cast<std::size_t>(std::llround(static_cast<double>(n) * options.test_fraction));
  std::vector<std::int32_t> assignment(n, 0);
  std::size_t dealt = 0;
  for (std::size_t g = 0; g < n; ++g) {
    // Spread the test quota evenly over the bin-ordered sequence.
    const bool test = n > 0 && ((g + 1) * test_total) / n > (g * test_total) / n;
    if (test) {
      assignment[order[g]] = kTestFold;
    } else {
      assignment[order[g]] = static_cast<std::int32_t>(dealt++ % options.k);
    }
  }
  return SplitPlan(options, std::vector<std::string>(ids.begin(), ids.end()), std::move(assignment),
                   std::move(bin_of));
}

}  // namespace lyricnet::dataio
