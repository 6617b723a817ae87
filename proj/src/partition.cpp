#include "shareq/partition.hpp"

#include <numeric>

namespace shareq {

NodePartition::NodePartition(std::size_t size) : parent_(size) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

NodePartition NodePartition::from_representatives(std::span<const std::uint32_t> representative) {
  NodePartition p;
  p.parent_.assign(representative.begin(), representative.end());
  for (std::uint32_t i = 0; i < p.parent_.size(); ++i) {
    // A representative must point at itself; tolerate partial assignments by
    // leaving unassigned nodes as singletons.
    if (p.parent_[i] >= p.parent_.size()) p.parent_[i] = i;
  }
  return p;
}

NodeId NodePartition::find(NodeId n) const {
  std::uint32_t x = n.value;
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return NodeId{x};
}

bool NodePartition::unite(NodeId a, NodeId b) {
  const NodeId ra = find(a);
  const NodeId rb = find(b);
  if (ra == rb) return false;
  if (ra < rb) {
    parent_[rb.value] = ra.value;
  } else {
    parent_[ra.value] = rb.value;
  }
  return true;
}

std::vector<std::uint32_t> NodePartition::normalized() const {
  std::vector<std::uint32_t> smallest(parent_.size(), kNoNode);
  std::vector<std::uint32_t> out(parent_.size());
  for (std::uint32_t i = 0; i < parent_.size(); ++i) {
    const std::uint32_t r = find(NodeId{i}).value;
    if (smallest[r] == kNoNode) smallest[r] = i;
    out[i] = smallest[r];
  }
  return out;
}

std::size_t NodePartition::class_count() const {
  std::size_t count = 0;
  for (std::uint32_t i = 0; i < parent_.size(); ++i)
    if (find(NodeId{i}).value == i) ++count;
  return count;
}

}  // namespace shareq
