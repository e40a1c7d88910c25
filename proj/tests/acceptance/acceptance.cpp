#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "criteria.hpp"

namespace {

struct Entry {
  const char* name;
  std::function<criteria::Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path scratch = std::filesystem::temp_directory_path() / "lyricnet_acceptance";
  std::filesystem::remove_all(scratch);
  const std::vector<Entry> entries = {
      {"gradient_correctness", [] { return criteria::gradient_correctness(); }},
      {"tied_weights_invariant", [] { return criteria::tied_weights_invariant(); }},
      {"directional_loss_reduction", [] { return criteria::directional_loss_reduction(); }},
      {"architecture_schedules", [] { return criteria::architecture_schedules(); }},
      {"autoencoder_compressibility", [] { return criteria::autoencoder_compressibility(); }},
      {"cleaning_rule", [] { return criteria::cleaning_rule(); }},
      {"stratified_scv", [] { return criteria::stratified_scv(); }},
      {"planted_signal_ablation", [] { return criteria::ablation_ordering(); }},
      {"end_to_end_determinism", [&] { return criteria::end_to_end_determinism(scratch / "determinism"); }},
      {"report_correctness", [] { return criteria::report_correctness(); }},
      {"pooling", [] { return criteria::pooling_oracles(); }},
      {"full_scale_reference", [&] { return criteria::full_scale(scratch / "full"); }},
  };

  // Optional filter: names of the criteria to run.
  auto selected = [&](const char* name) {
    if (argc < 2) return true;
    for (int i = 1; i < argc; ++i)
      if (std::strcmp(argv[i], name) == 0) return true;
    return false;
  };

  int failures = 0;
  for (const Entry& e : entries) {
    if (!selected(e.name)) continue;
    criteria::Verdict v;
    try {
      v = e.run();
    } catch (const std::exception& ex) {
      v.pass = false;
      v.detail = std::string("exception: ") + ex.what();
    }
    const char* status = v.skipped ? "SKIP" : (v.pass ? "PASS" : "FAIL");
    if (!v.pass) ++failures;
    std::printf("%s %-28s %7.1fs  %s\n", status, e.name, v.seconds, v.detail.c_str());
    std::fflush(stdout);
  }
  std::filesystem::remove_all(scratch);
  return failures == 0 ? 0 : 1;
}
