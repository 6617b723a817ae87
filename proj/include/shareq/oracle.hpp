// Brute-force reference implementations of the theory of sharing equality.
// Nothing here is tuned for speed; these are the ground truth the checker is
// tested against on small graphs.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "shareq/checker.hpp"
#include "shareq/graph.hpp"
#include "shareq/partition.hpp"

namespace shareq {

/// Closure of `relation` under reflexivity, symmetry, transitivity and the
/// downward propagation rules (left, down, right). Works for any relation,
/// not only queries over roots.
NodePartition spread_query(const LamGraph& g, const std::vector<std::pair<NodeId, NodeId>>& relation);

/// Homogeneous and closed under downward propagation.
bool is_blind_sharing_equivalence(const LamGraph& g, const NodePartition& p);

/// Blind sharing equivalence that also equates binders of equated bound
/// variables and never equates a free variable with any other node.
bool is_sharing_equivalence(const LamGraph& g, const NodePartition& p);

class NotASharingEquivalence : public std::invalid_argument {
 public:
  NotASharingEquivalence() : std::invalid_argument("NotAShEq: partition is not a sharing equivalence") {}
};

struct Quotient {
  LamGraph graph;
  std::vector<NodeId> image;  // original node -> quotient node
};

/// Collapses every class of a sharing equivalence to one node. Quotient nodes
/// are numbered by the smallest original node of their class.
Quotient quotient(const LamGraph& g, const NodePartition& p);

/// True iff each queried pair unfolds to equal terms. Throws LimitExceeded.
bool readback_equal(const LamGraph& g, const Query& q, std::size_t limit);

}  // namespace shareq
