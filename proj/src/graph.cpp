#include "shareq/graph.hpp"

#include <algorithm>

namespace shareq {

std::string_view label_name(Label label) {
  switch (label) {
    case Label::App: return "App";
    case Label::Abs: return "Abs";
    case Label::BoundVar: return "BoundVar";
    case Label::FreeVar: return "FreeVar";
  }
  return "?";
}

std::string_view error_kind_name(GraphErrorKind kind) {
  switch (kind) {
    case GraphErrorKind::DanglingReference: return "DanglingReference";
    case GraphErrorKind::BinderNotAbs: return "BinderNotAbs";
    case GraphErrorKind::UnsetChild: return "UnsetChild";
    case GraphErrorKind::DuplicateFreeVar: return "DuplicateFreeVar";
    case GraphErrorKind::CyclicGraph: return "CyclicGraph";
    case GraphErrorKind::DominationViolation: return "DominationViolation";
    case GraphErrorKind::RootMismatch: return "RootMismatch";
    case GraphErrorKind::NoSuchPath: return "NoSuchPath";
    case GraphErrorKind::NotCrossed: return "NotCrossed";
    case GraphErrorKind::NotARoot: return "NotARoot";
  }
  return "?";
}

GraphError::GraphError(GraphErrorKind kind, std::vector<NodeId> nodes, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind), nodes_(std::move(nodes)) {}

AtomId AtomTable::intern(std::string_view name) {
  auto [it, inserted] = index_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return {it->second};
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return AtomId{it->second};
}

std::optional<NodeId> LamGraph::find_root_label(std::string_view name) const {
  auto it = root_labels_.find(std::string(name));
  if (it == root_labels_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string id_str(NodeId n) { return std::to_string(n.value); }

void check_references(const std::vector<Node>& nodes, const AtomTable& atoms) {
  const auto n = static_cast<std::uint32_t>(nodes.size());
  auto in_range = [&](NodeId id) { return id.value < n; };
  std::vector<std::uint32_t> free_owner(atoms.size(), kNoNode);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Node& node = nodes[i];
    NodeId self{i};
    switch (node.label()) {
      case Label::App:
        for (NodeId child : {node.left(), node.right()}) {
          if (child.value == kNoNode)
            throw GraphError(GraphErrorKind::UnsetChild, {self}, "node " + id_str(self) + " has an unset child");
          if (!in_range(child))
            throw GraphError(GraphErrorKind::DanglingReference, {self, child},
                             "node " + id_str(self) + " refers to missing node " + id_str(child));
        }
        break;
      case Label::Abs:
        if (node.body().value == kNoNode)
          throw GraphError(GraphErrorKind::UnsetChild, {self}, "abstraction " + id_str(self) + " has no body");
        if (!in_range(node.body()))
          throw GraphError(GraphErrorKind::DanglingReference, {self, node.body()},
                           "node " + id_str(self) + " refers to missing node " + id_str(node.body()));
        break;
      case Label::BoundVar:
        if (!in_range(node.binder()))
          throw GraphError(GraphErrorKind::DanglingReference, {self, node.binder()},
                           "variable " + id_str(self) + " refers to missing binder " + id_str(node.binder()));
        if (nodes[node.binder().value].label() != Label::Abs)
          throw GraphError(GraphErrorKind::BinderNotAbs, {self, node.binder()},
                           "binder " + id_str(node.binder()) + " of variable " + id_str(self) + " is not an abstraction");
        break;
      case Label::FreeVar: {
        const auto atom = node.atom().value;
        if (atom >= atoms.size())
          throw GraphError(GraphErrorKind::DanglingReference, {self},
                           "free variable " + id_str(self) + " refers to a missing atom");
        if (free_owner[atom] != kNoNode)
          throw GraphError(GraphErrorKind::DuplicateFreeVar, {NodeId{free_owner[atom]}, self},
                           "nodes " + std::to_string(free_owner[atom]) + " and " + id_str(self) +
                               " are both the free variable '" + atoms.name(node.atom()) + "'");
        free_owner[atom] = i;
        break;
      }
    }
  }
}

template <typename F>
void for_each_child(const Node& node, F&& f) {
  switch (node.label()) {
    case Label::App:
      f(node.left(), Direction::Left);
      f(node.right(), Direction::Right);
      break;
    case Label::Abs:
      f(node.body(), Direction::Down);
      break;
    default:
      break;
  }
}

}  // namespace

LamGraph build_graph(std::vector<Node> nodes, AtomTable atoms, bool validate) {
  check_references(nodes, atoms);

  LamGraph g;
  const std::size_t n = nodes.size();
  g.parent_offset_.assign(n + 1, 0);
  for (const Node& node : nodes) for_each_child(node, [&](NodeId c, Direction) { ++g.parent_offset_[c.value + 1]; });
  for (std::size_t i = 0; i < n; ++i) g.parent_offset_[i + 1] += g.parent_offset_[i];
  g.parent_edges_.resize(g.parent_offset_[n]);
  std::vector<std::uint32_t> fill(g.parent_offset_.begin(), g.parent_offset_.end() - 1);
  for (std::uint32_t i = 0; i < n; ++i)
    for_each_child(nodes[i], [&](NodeId c, Direction d) { g.parent_edges_[fill[c.value]++] = {NodeId{i}, d}; });
  for (std::uint32_t i = 0; i < n; ++i)
    if (g.parent_offset_[i] == g.parent_offset_[i + 1]) g.roots_.push_back(NodeId{i});

  g.nodes_ = std::move(nodes);
  g.atoms_ = std::move(atoms);
  if (validate) {
    validate_acyclic(g);
    validate_dominated(g);
  }
  return g;
}

void validate_acyclic(const LamGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> pending(n);
  std::vector<NodeId> ready;
  for (std::uint32_t i = 0; i < n; ++i) {
    pending[i] = static_cast<std::uint32_t>(g.parents(NodeId{i}).size());
    if (pending[i] == 0) ready.push_back(NodeId{i});
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    NodeId cur = ready.back();
    ready.pop_back();
    ++removed;
    for_each_child(g.node(cur), [&](NodeId c, Direction) {
      if (--pending[c.value] == 0) ready.push_back(c);
    });
  }
  if (removed == n) return;

  // Every leftover node has a leftover parent; walking up them must repeat.
  std::uint32_t start = 0;
  while (pending[start] == 0) ++start;
  std::vector<bool> seen(n, false);
  NodeId cur{start};
  while (!seen[cur.value]) {
    seen[cur.value] = true;
    for (const ParentEdge& pe : g.parents(cur)) {
      if (pending[pe.parent.value] != 0) {
        cur = pe.parent;
        break;
      }
    }
  }
  throw GraphError(GraphErrorKind::CyclicGraph, {cur}, "node " + id_str(cur) + " lies on a structural cycle");
}

void validate_dominated(const LamGraph& g) {
  const std::size_t n = g.size();
  // Bound variables grouped by binder.
  std::unordered_map<std::uint32_t, std::vector<NodeId>> by_binder;
  for (std::uint32_t i = 0; i < n; ++i)
    if (g.node(NodeId{i}).label() == Label::BoundVar) by_binder[g.node(NodeId{i}).binder().value].push_back(NodeId{i});

  std::vector<std::uint32_t> reached_from(n);
  std::vector<NodeId> stack;
  for (const auto& [binder, vars] : by_binder) {
    std::fill(reached_from.begin(), reached_from.end(), kNoNode);
    for (NodeId r : g.roots()) {
      if (r.value == binder || reached_from[r.value] != kNoNode) continue;
      reached_from[r.value] = r.value;
      stack.push_back(r);
      while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for_each_child(g.node(cur), [&](NodeId c, Direction) {
          if (c.value == binder || reached_from[c.value] != kNoNode) return;
          reached_from[c.value] = r.value;
          stack.push_back(c);
        });
      }
    }
    for (NodeId v : vars) {
      if (reached_from[v.value] != kNoNode) {
        NodeId root{reached_from[v.value]};
        throw GraphError(GraphErrorKind::DominationViolation, {v, NodeId{binder}, root},
                         "variable " + id_str(v) + " is reachable from root " + id_str(root) +
                             " without crossing its binder " + std::to_string(binder));
      }
    }
  }
}

NodeId follow(const LamGraph& g, NodeId start, std::span<const Direction> trace) {
  if (!g.contains(start)) throw GraphError(GraphErrorKind::DanglingReference, {start}, "no node " + id_str(start));
  NodeId cur = start;
  for (Direction d : trace) {
    const Node& node = g.node(cur);
    if (node.label() == Label::App && d == Direction::Left) {
      cur = node.left();
    } else if (node.label() == Label::App && d == Direction::Right) {
      cur = node.right();
    } else if (node.label() == Label::Abs && d == Direction::Down) {
      cur = node.body();
    } else {
      throw GraphError(GraphErrorKind::NoSuchPath, {cur},
                       "cannot step from " + std::string(label_name(node.label())) + " node " + id_str(cur));
    }
  }
  return cur;
}

std::uint32_t index_of(const LamGraph& g, NodeId root, std::span<const Direction> trace, NodeId binder) {
  if (!g.contains(root) || !g.is_root(root))
    throw GraphError(GraphErrorKind::NotARoot, {root}, "node " + id_str(root) + " is not a root");
  std::optional<std::uint32_t> index;
  auto visit = [&](NodeId n) {
    if (n == binder) {
      index = 0;
    } else if (index && g.node(n).label() == Label::Abs) {
      ++*index;
    }
  };
  NodeId cur = root;
  visit(cur);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    cur = follow(g, cur, trace.subspan(i, 1));
    visit(cur);
  }
  if (!index)
    throw GraphError(GraphErrorKind::NotCrossed, {binder}, "path does not cross node " + id_str(binder));
  return *index;
}

GraphBuilder::GraphBuilder(std::vector<Node> nodes, AtomTable atoms)
    : nodes_(std::move(nodes)), atoms_(std::move(atoms)) {
  for (std::uint32_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].label() == Label::FreeVar) free_nodes_.try_emplace(nodes_[i].atom().value, NodeId{i});
}

NodeId GraphBuilder::app(NodeId left, NodeId right) {
  nodes_.push_back(Node::app(left, right));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

NodeId GraphBuilder::abs(NodeId body) {
  nodes_.push_back(Node::abs(body));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

NodeId GraphBuilder::abs_placeholder() { return abs(NodeId{kNoNode}); }

void GraphBuilder::set_body(NodeId abs, NodeId body) {
  Node& node = nodes_.at(abs.value);
  if (node.label() != Label::Abs) throw std::logic_error("set_body on a non-abstraction");
  node = Node::abs(body);
}

NodeId GraphBuilder::bound_var(NodeId binder) {
  nodes_.push_back(Node::bound_var(binder));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

NodeId GraphBuilder::free_var(std::string_view name) {
  AtomId atom = atoms_.intern(name);
  auto [it, inserted] = free_nodes_.try_emplace(atom.value, NodeId{static_cast<std::uint32_t>(nodes_.size())});
  if (inserted) nodes_.push_back(Node::free_var(atom));
  return it->second;
}

std::vector<NodeId> GraphBuilder::append(const LamGraph& g) {
  const auto base = static_cast<std::uint32_t>(nodes_.size());
  std::vector<NodeId> map(g.size());
  // Free variables first so that merged ones do not leave holes.
  std::uint32_t next = base;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const Node& node = g.node(NodeId{i});
    if (node.label() == Label::FreeVar) {
      map[i] = free_var(g.atoms().name(node.atom()));
      next = static_cast<std::uint32_t>(nodes_.size());
    }
  }
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (g.node(NodeId{i}).label() != Label::FreeVar) map[i] = NodeId{next++};
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const Node& node = g.node(NodeId{i});
    switch (node.label()) {
      case Label::App: nodes_.push_back(Node::app(map[node.left().value], map[node.right().value])); break;
      case Label::Abs: nodes_.push_back(Node::abs(map[node.body().value])); break;
      case Label::BoundVar: nodes_.push_back(Node::bound_var(map[node.binder().value])); break;
      case Label::FreeVar: break;
    }
  }
  for (const auto& [name, root] : g.root_labels()) labels_.emplace_back(name, map[root.value]);
  return map;
}

LamGraph GraphBuilder::build(bool validate) && {
  LamGraph g = build_graph(std::move(nodes_), std::move(atoms_), validate);
  for (auto& [name, root] : labels_) {
    if (!g.contains(root) || !g.is_root(root))
      throw GraphError(GraphErrorKind::RootMismatch, {root}, "label '" + name + "' names non-root node " + id_str(root));
    g.root_labels_[name] = root;
  }
  return g;
}

}  // namespace shareq
