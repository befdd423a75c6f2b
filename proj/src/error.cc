#include "icgame/error.h"

namespace icgame {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kNonzeroSilence: return "nonzero-silence";
  }
  return "unknown";
}

}  // namespace icgame
