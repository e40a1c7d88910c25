#pragma once

#include <stdexcept>
#include <string>

namespace lyricnet {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kDataValidation = 3,
  kDivergence = 4,
  kIntegrity = 5,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::kFailure)
      : std::runtime_error(what), code_(code) {}

  ExitCode exit_code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Matrix/tensor dimensions do not line up.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what, ExitCode::kFailure) {}
};

// Input that is mathematically undefined for the requested operation
// (e.g. the cosine of an all-zero vector).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error(what, ExitCode::kDataValidation) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what, ExitCode::kUsage) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what, ExitCode::kDataValidation) {}
};

// Non-finite loss or gradient during training.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(what, ExitCode::kDivergence) {}
};

// Corrupted, truncated or mismatched persisted artifacts.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(what, ExitCode::kIntegrity) {}
};

int to_int(ExitCode code) noexcept;

}  // namespace lyricnet
