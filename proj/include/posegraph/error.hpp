#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posegraph {

enum class ErrorKind {
  kMalformed,
  kDuplicateName,
  kDuplicateEdge,
  kSelfLoop,
  kDanglingIndex,
  kDisconnected,
  kMissingEdge,
  kExtraEdge,
  kInvalidLength,
  kCountMismatch,
  kInvalidVisibility,
  kMissingBBox,
  kEmptyCorpus,
  kUncoveredEdge,
  kInvalidVertex,
  kOracleTooLarge,
  kDegenerateScope,
  kInvalidArgument,
  kTableMismatch,
  kMissingLayout,
  kMissingWeight,
  kNormalization,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The message names the offending
/// element (keypoint, edge, annotation id) where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace posegraph
