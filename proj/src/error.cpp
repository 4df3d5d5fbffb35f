#include "posegraph/error.hpp"

namespace posegraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformed: return "malformed document";
    case ErrorKind::kDuplicateName: return "duplicate keypoint name";
    case ErrorKind::kDuplicateEdge: return "duplicate edge";
    case ErrorKind::kSelfLoop: return "self-loop";
    case ErrorKind::kDanglingIndex: return "dangling keypoint reference";
    case ErrorKind::kDisconnected: return "disconnected skeleton";
    case ErrorKind::kMissingEdge: return "missing edge length";
    case ErrorKind::kExtraEdge: return "extra edge length";
    case ErrorKind::kInvalidLength: return "non-positive or non-finite length";
    case ErrorKind::kCountMismatch: return "keypoint count mismatch";
    case ErrorKind::kInvalidVisibility: return "invalid visibility flag";
    case ErrorKind::kMissingBBox: return "missing bounding box";
    case ErrorKind::kEmptyCorpus: return "empty corpus";
    case ErrorKind::kUncoveredEdge: return "uncovered edge";
    case ErrorKind::kInvalidVertex: return "invalid vertex";
    case ErrorKind::kOracleTooLarge: return "graph too large for oracle";
    case ErrorKind::kDegenerateScope: return "degenerate centrality scope";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kTableMismatch: return "weight table does not match graph";
    case ErrorKind::kMissingLayout: return "missing layout coordinate";
    case ErrorKind::kMissingWeight: return "missing weight";
    case ErrorKind::kNormalization: return "normalization invariant violated";
  }
  return "unknown error";
}

}  // namespace posegraph
