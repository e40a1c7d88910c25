#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lyricnet::cli {

// Entry point of the `lyricnet` tool. Returns the process exit code:
// 0 ok, 2 usage, 3 data validation, 4 training divergence, 5 integrity.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lyricnet::cli
