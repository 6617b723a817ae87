#include "shareq/oracle.hpp"

#include <map>

#include "shareq/term.hpp"

namespace shareq {

NodePartition spread_query(const LamGraph& g, const std::vector<std::pair<NodeId, NodeId>>& relation) {
  const auto n = static_cast<std::uint32_t>(g.size());
  NodePartition p(n);
  for (const auto& [a, b] : relation) p.unite(a, b);

  // Naive fixpoint: in every class, propagate each App (Abs) member against
  // the first App (Abs) member seen, until nothing changes.
  std::vector<std::uint32_t> first_app(n);
  std::vector<std::uint32_t> first_abs(n);
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(first_app.begin(), first_app.end(), kNoNode);
    std::fill(first_abs.begin(), first_abs.end(), kNoNode);
    for (std::uint32_t i = 0; i < n; ++i) {
      const Node& x = g.node(NodeId{i});
      const std::uint32_t r = p.find(NodeId{i}).value;
      if (x.label() == Label::App) {
        if (first_app[r] == kNoNode) {
          first_app[r] = i;
          continue;
        }
        const Node& y = g.node(NodeId{first_app[r]});
        changed |= p.unite(x.left(), y.left());
        changed |= p.unite(x.right(), y.right());
      } else if (x.label() == Label::Abs) {
        if (first_abs[r] == kNoNode) {
          first_abs[r] = i;
          continue;
        }
        changed |= p.unite(x.body(), g.node(NodeId{first_abs[r]}).body());
      }
    }
  }
  return p;
}

namespace {

std::vector<std::vector<NodeId>> classes_of(const NodePartition& p) {
  std::map<std::uint32_t, std::vector<NodeId>> by_rep;
  for (std::uint32_t i = 0; i < p.size(); ++i) by_rep[p.find(NodeId{i}).value].push_back(NodeId{i});
  std::vector<std::vector<NodeId>> out;
  for (auto& [rep, members] : by_rep) out.push_back(std::move(members));
  return out;
}

}  // namespace

bool is_blind_sharing_equivalence(const LamGraph& g, const NodePartition& p) {
  for (const auto& members : classes_of(p)) {
    for (NodeId x : members) {
      for (NodeId y : members) {
        const Node& a = g.node(x);
        const Node& b = g.node(y);
        if (a.label() != b.label()) return false;
        if (a.label() == Label::App && !(p.same(a.left(), b.left()) && p.same(a.right(), b.right()))) return false;
        if (a.label() == Label::Abs && !p.same(a.body(), b.body())) return false;
      }
    }
  }
  return true;
}

bool is_sharing_equivalence(const LamGraph& g, const NodePartition& p) {
  if (!is_blind_sharing_equivalence(g, p)) return false;
  for (const auto& members : classes_of(p)) {
    for (NodeId x : members) {
      for (NodeId y : members) {
        const Node& a = g.node(x);
        const Node& b = g.node(y);
        if (a.label() == Label::FreeVar && x != y) return false;
        if (a.label() == Label::BoundVar && !p.same(a.binder(), b.binder())) return false;
      }
    }
  }
  return true;
}

Quotient quotient(const LamGraph& g, const NodePartition& p) {
  if (!is_sharing_equivalence(g, p)) throw NotASharingEquivalence();
  const auto norm = p.normalized();
  const auto n = static_cast<std::uint32_t>(g.size());

  Quotient out;
  out.image.resize(n);
  std::vector<std::uint32_t> class_index(n, kNoNode);
  std::vector<NodeId> leaders;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (norm[i] == i) {
      class_index[i] = static_cast<std::uint32_t>(leaders.size());
      leaders.push_back(NodeId{i});
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) out.image[i] = NodeId{class_index[norm[i]]};

  std::vector<Node> nodes;
  nodes.reserve(leaders.size());
  auto img = [&](NodeId x) { return out.image[x.value]; };
  for (NodeId leader : leaders) {
    const Node& x = g.node(leader);
    switch (x.label()) {
      case Label::App: nodes.push_back(Node::app(img(x.left()), img(x.right()))); break;
      case Label::Abs: nodes.push_back(Node::abs(img(x.body()))); break;
      case Label::BoundVar: nodes.push_back(Node::bound_var(img(x.binder()))); break;
      case Label::FreeVar: nodes.push_back(Node::free_var(x.atom())); break;
    }
  }
  // Root labels follow their roots; classes holding a root contain only roots.
  GraphBuilder b(std::move(nodes), g.atoms());
  for (const auto& [name, root] : std::map<std::string, NodeId>(g.root_labels().begin(), g.root_labels().end()))
    b.label_root(name, img(root));
  out.graph = std::move(b).build();
  return out;
}

bool readback_equal(const LamGraph& g, const Query& q, std::size_t limit) {
  check_query(g, q);
  std::map<std::uint32_t, Term> cache;
  auto term_of = [&](NodeId r) -> const Term& {
    auto it = cache.find(r.value);
    if (it == cache.end()) it = cache.emplace(r.value, readback(g, r, limit)).first;
    return it->second;
  };
  for (const auto& [a, b] : q)
    if (!term_eq(term_of(a), term_of(b))) return false;
  return true;
}

}  // namespace shareq
