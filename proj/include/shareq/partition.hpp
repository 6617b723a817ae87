#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shareq/graph.hpp"

namespace shareq {

/// Equivalence relation over the nodes of one graph, as a union-find forest.
/// Two partitions compare equal when they relate the same pairs.
class NodePartition {
 public:
  NodePartition() = default;
  explicit NodePartition(std::size_t size);

  /// Partition whose classes are the sets of nodes sharing a representative.
  static NodePartition from_representatives(std::span<const std::uint32_t> representative);

  std::size_t size() const { return parent_.size(); }
  NodeId find(NodeId n) const;
  /// Returns false if the two nodes were already related.
  bool unite(NodeId a, NodeId b);
  bool same(NodeId a, NodeId b) const { return find(a) == find(b); }

  /// Each node mapped to the smallest node of its class.
  std::vector<std::uint32_t> normalized() const;
  std::size_t class_count() const;

  bool operator==(const NodePartition& other) const { return normalized() == other.normalized(); }

 private:
  mutable std::vector<std::uint32_t> parent_;
};

}  // namespace shareq
