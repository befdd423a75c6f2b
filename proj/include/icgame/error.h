#pragma once

#include <stdexcept>
#include <string>

namespace icgame {

enum class ErrorKind {
  kInvalidInput,
  kCapacity,
  kUnsupportedDimension,
  kDegenerateInput,
  kConfig,
  kNonzeroSilence,
};

const char* ErrorKindName(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace icgame
