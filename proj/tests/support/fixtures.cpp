#include "fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace fixtures {

LamGraph four_lambdas() {
  std::vector<Node> n;
  n.push_back(Node::app(NodeId{2}, NodeId{3}));  // 0 r1
  n.push_back(Node::app(NodeId{4}, NodeId{4}));  // 1 r2
  n.push_back(Node::app(NodeId{5}, NodeId{5}));  // 2 P
  n.push_back(Node::app(NodeId{6}, NodeId{6}));  // 3 Q
  n.push_back(Node::app(NodeId{7}, NodeId{8}));  // 4 S
  for (std::uint32_t i = 0; i < 4; ++i) n.push_back(Node::abs(NodeId{9 + i}));
  for (std::uint32_t i = 0; i < 4; ++i) n.push_back(Node::bound_var(NodeId{5 + i}));
  return build_graph(std::move(n), AtomTable{});
}

LamGraph four_lambdas_collapsed() {
  std::vector<Node> n{Node::app(NodeId{1}, NodeId{1}), Node::app(NodeId{2}, NodeId{2}), Node::abs(NodeId{3}),
                      Node::bound_var(NodeId{2})};
  return build_graph(std::move(n), AtomTable{});
}

LamGraph two_identities() {
  std::vector<Node> n{Node::abs(NodeId{1}), Node::bound_var(NodeId{0}), Node::abs(NodeId{3}),
                      Node::bound_var(NodeId{2})};
  return build_graph(std::move(n), AtomTable{});
}

NodeId append_fully_unshared(GraphBuilder& b, const SurfaceAst& ast) {
  std::vector<std::pair<std::string, NodeId>> scope;
  std::function<NodeId(ExprId)> go = [&](ExprId id) -> NodeId {
    const Expr& e = ast.at(id);
    switch (e.kind) {
      case Expr::Kind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == e.name) return b.bound_var(it->second);
        return b.free_var(e.name);
      case Expr::Kind::App: {
        const NodeId l = go(e.first);
        const NodeId r = go(e.second);
        return b.app(l, r);
      }
      case Expr::Kind::Lam: {
        const NodeId lam = b.abs_placeholder();
        scope.emplace_back(e.name, lam);
        b.set_body(lam, go(e.first));
        scope.pop_back();
        return lam;
      }
      case Expr::Kind::Let:
        throw std::invalid_argument("append_fully_unshared: let not supported");
    }
    return {};
  };
  return go(ast.root);
}

SelfApp self_app() {
  GraphBuilder b;
  const NodeId shared = compile_into(b, parse_surface(kSelfAppShared));
  const NodeId tree = append_fully_unshared(b, parse_surface(kSelfAppTree));
  return {std::move(b).build(), shared, tree};
}

bool isomorphic(const LamGraph& a, const LamGraph& b) {
  if (a.size() != b.size() || a.roots().size() != b.roots().size()) return false;
  std::vector<NodeId> broots(b.roots().begin(), b.roots().end());
  std::sort(broots.begin(), broots.end());
  do {
    std::vector<std::uint32_t> fwd(a.size(), kNoNode), back(b.size(), kNoNode);
    std::vector<std::pair<NodeId, NodeId>> todo;
    for (std::size_t i = 0; i < broots.size(); ++i) todo.emplace_back(a.roots()[i], broots[i]);
    bool ok = true;
    while (ok && !todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      if (fwd[x.value] != kNoNode || back[y.value] != kNoNode) {
        ok = fwd[x.value] == y.value && back[y.value] == x.value;
        continue;
      }
      fwd[x.value] = y.value;
      back[y.value] = x.value;
      const Node& p = a.node(x);
      const Node& q = b.node(y);
      if (p.label() != q.label()) {
        ok = false;
        break;
      }
      switch (p.label()) {
        case Label::App:
          todo.emplace_back(p.left(), q.left());
          todo.emplace_back(p.right(), q.right());
          break;
        case Label::Abs: todo.emplace_back(p.body(), q.body()); break;
        case Label::BoundVar: todo.emplace_back(p.binder(), q.binder()); break;
        case Label::FreeVar: ok = a.atoms().name(p.atom()) == b.atoms().name(q.atom()); break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(broots.begin(), broots.end()));
  return false;
}

CompiledGraph compile(const std::string& text) { return compile_to_graph(parse_surface(text)); }

}  // namespace fixtures
