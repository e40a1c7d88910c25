#include "lyricnet/errors.hpp"

namespace lyricnet {

int to_int(ExitCode code) noexcept { return static_cast<int>(code); }

}  // namespace lyricnet
