// Linear-time sharing equality.
//
// The check runs in two phases. The blind check computes the spreading of the
// query (its closure under equivalence and downward propagation) as a
// canonic assignment, failing as soon as that closure cannot be homogeneous.
// The variables check then verifies the scoping conditions on the result:
// no two distinct free variables and no bound variables with unrelated
// binders are equated.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "shareq/graph.hpp"
#include "shareq/partition.hpp"

namespace shareq {

/// Unordered pairs of roots, duplicates and loops allowed.
using Query = std::vector<std::pair<NodeId, NodeId>>;

enum class FailureReason : std::uint8_t {
  ParentStillBuilding,  // a parent's class is still under construction
  SiblingInOtherClass,  // a query sibling already belongs to another class
  NotHomogeneous,       // nodes of different kinds end up in one class
  FreeVarsDistinct,     // a free variable is equated with another node
  BindersNotEquated,    // equated bound variables have unrelated binders
};

std::string_view reason_name(FailureReason reason);

struct Failure {
  FailureReason reason;
  NodeId node;   // node being processed when the check failed
  NodeId other;  // the parent, sibling or canonic it was compared with
};

/// Counters kept by every run. The two violation counters must stay zero:
/// they count writes to an already assigned canonic and repeated enqueues.
struct CheckStats {
  std::uint64_t transitions = 0;
  std::uint64_t max_query_edges = 0;  // directed entries, both orientations
  std::uint64_t canonic_rewrites = 0;
  std::uint64_t repeated_enqueues = 0;
};

struct BlindResult {
  /// canonic[n] is the representative of n's class, kNoNode where unassigned
  /// (only possible after a failure).
  std::vector<std::uint32_t> canonic;
  std::optional<Failure> failure;
  CheckStats stats;

  bool ok() const { return !failure; }
};

/// Raised when a query endpoint is not a root of the graph.
class QueryError : public std::invalid_argument {
 public:
  QueryError(NodeId node, const std::string& message) : std::invalid_argument(message), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

void check_query(const LamGraph& g, const Query& q);

/// Queue-based blind check (one class built at a time, FIFO per class).
BlindResult blind_check(const LamGraph& g, const Query& q);

/// Variant without class queues: canonics are set by a recursive visit that
/// tracks a per-node visiting flag. Must agree with blind_check on the
/// verdict and, on success, on the partition.
BlindResult blind_check_recursive(const LamGraph& g, const Query& q);

/// Variables check over a successful blind result.
std::optional<Failure> vars_check(const LamGraph& g, std::span<const std::uint32_t> canonic);

enum class Backend : std::uint8_t { Queue, Recursive };

struct SharingResult {
  std::optional<Failure> failure;
  /// Failed phase is the blind check (vs the variables check).
  bool blind_failed = false;
  NodePartition partition;  // meaningful on success only
  CheckStats stats;

  bool ok() const { return !failure; }
};

/// Blind check followed by the variables check. On success the partition is
/// the smallest sharing equivalence containing the query; success holds iff
/// every queried pair has equal readbacks.
SharingResult sharing_check(const LamGraph& g, const Query& q, Backend backend = Backend::Queue);

}  // namespace shareq
