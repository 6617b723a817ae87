#include "shareq/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace shareq {

NodeId append_shared_power(GraphBuilder& builder, std::uint32_t n) {
  NodeId cur = builder.free_var("x");
  for (std::uint32_t k = 0; k < n; ++k) cur = builder.app(cur, cur);
  return cur;
}

CompiledGraph gen_shared_power(std::uint32_t n) {
  GraphBuilder b;
  const NodeId root = append_shared_power(b, n);
  return {std::move(b).build(), root};
}

NodeId append_unshared_tree(GraphBuilder& builder, std::uint32_t n) {
  if (n > 24) throw std::invalid_argument("unshared tree of depth > 24 refused");
  const NodeId x = builder.free_var("x");
  if (n == 0) return x;
  // Bottom-up by levels; level k holds 2^(n-k) subtrees.
  std::vector<NodeId> level(std::size_t{1} << n, x);
  for (std::uint32_t k = 0; k < n; ++k) {
    std::vector<NodeId> up(level.size() / 2);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = builder.app(level[2 * i], level[2 * i + 1]);
    level = std::move(up);
  }
  return level.front();
}

GraphPair gen_shared_power_pair(std::uint32_t n) {
  GraphBuilder b;
  const NodeId first = append_shared_power(b, n);
  const NodeId second = append_shared_power(b, n);
  return {std::move(b).build(), first, second};
}

namespace {

// Canonical code of a graph: depth-first numbering from the roots taken in
// `order`, atoms renamed by first occurrence. Also returns the numbering.
std::vector<std::uint32_t> dfs_code(const LamGraph& g, std::span<const NodeId> order,
                                    std::vector<std::uint32_t>* numbering_out) {
  const auto n = static_cast<std::uint32_t>(g.size());
  std::vector<std::uint32_t> number(n, kNoNode);
  std::vector<std::uint32_t> visit_order;
  std::vector<std::uint32_t> atom_number(g.atoms().size(), kNoNode);
  std::uint32_t atoms_seen = 0;
  std::vector<NodeId> stack;
  for (NodeId r : order) {
    stack.push_back(r);
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      if (number[cur.value] != kNoNode) continue;
      number[cur.value] = static_cast<std::uint32_t>(visit_order.size());
      visit_order.push_back(cur.value);
      const Node& node = g.node(cur);
      if (node.label() == Label::App) {
        stack.push_back(node.right());
        stack.push_back(node.left());
      } else if (node.label() == Label::Abs) {
        stack.push_back(node.body());
      } else if (node.label() == Label::FreeVar && atom_number[node.atom().value] == kNoNode) {
        atom_number[node.atom().value] = atoms_seen++;
      }
    }
  }
  std::vector<std::uint32_t> code;
  code.reserve(3 * n);
  for (std::uint32_t v : visit_order) {
    const Node& node = g.node(NodeId{v});
    code.push_back(static_cast<std::uint32_t>(node.label()));
    switch (node.label()) {
      case Label::App:
        code.push_back(number[node.left().value]);
        code.push_back(number[node.right().value]);
        break;
      case Label::Abs: code.push_back(number[node.body().value]); break;
      case Label::BoundVar: code.push_back(number[node.binder().value]); break;
      case Label::FreeVar: code.push_back(atom_number[node.atom().value]); break;
    }
  }
  if (numbering_out) *numbering_out = std::move(number);
  return code;
}

}  // namespace

void enumerate_graphs(std::uint32_t max_nodes, const std::function<void(const LamGraph&)>& visit) {
  if (max_nodes > 7) throw std::invalid_argument("enumerate_graphs: max_nodes must be <= 7");
  std::set<std::vector<std::uint32_t>> seen;

  for (std::uint32_t size = 1; size <= max_nodes; ++size) {
    // Raw candidates: children have smaller ids than their parents; a bound
    // variable's binder has a larger id. Binders are chosen once every label
    // is fixed.
    std::vector<Node> nodes(size, Node::free_var(AtomId{0}));
    std::vector<Label> labels(size);

    auto emit = [&]() {
      AtomTable atoms;
      atoms.intern("x");
      atoms.intern("y");
      LamGraph g;
      try {
        g = build_graph(nodes, atoms);
      } catch (const GraphError&) {
        return;
      }
      std::vector<NodeId> roots(g.roots().begin(), g.roots().end());
      std::vector<std::uint32_t> best;
      std::vector<NodeId> best_order;
      std::sort(roots.begin(), roots.end());
      do {
        auto code = dfs_code(g, roots, nullptr);
        if (best.empty() || code < best) {
          best = std::move(code);
          best_order = roots;
        }
      } while (std::next_permutation(roots.begin(), roots.end()));
      if (!seen.insert(best).second) return;

      // Re-emit in canonical numbering with atoms renamed by first use.
      std::vector<std::uint32_t> number;
      dfs_code(g, best_order, &number);
      std::vector<Node> canon(size, Node::free_var(AtomId{0}));
      std::map<std::uint32_t, std::uint32_t> atom_map;
      std::vector<std::uint32_t> by_number(size);
      for (std::uint32_t i = 0; i < size; ++i) by_number[number[i]] = i;
      for (std::uint32_t k = 0; k < size; ++k) {
        const Node& node = g.node(NodeId{by_number[k]});
        auto num = [&](NodeId x) { return NodeId{number[x.value]}; };
        switch (node.label()) {
          case Label::App: canon[k] = Node::app(num(node.left()), num(node.right())); break;
          case Label::Abs: canon[k] = Node::abs(num(node.body())); break;
          case Label::BoundVar: canon[k] = Node::bound_var(num(node.binder())); break;
          case Label::FreeVar: {
            auto [it, _] = atom_map.try_emplace(node.atom().value, static_cast<std::uint32_t>(atom_map.size()));
            canon[k] = Node::free_var(AtomId{it->second});
            break;
          }
        }
      }
      AtomTable canon_atoms;
      for (std::size_t a = 0; a < atom_map.size(); ++a) canon_atoms.intern(a == 0 ? "x" : "y");
      visit(build_graph(std::move(canon), std::move(canon_atoms)));
    };

    std::function<void(std::uint32_t)> bind = [&](std::uint32_t i) {
      if (i == size) {
        emit();
        return;
      }
      if (labels[i] != Label::BoundVar) {
        bind(i + 1);
        return;
      }
      for (std::uint32_t l = i + 1; l < size; ++l) {
        if (labels[l] != Label::Abs) continue;
        nodes[i] = Node::bound_var(NodeId{l});
        bind(i + 1);
      }
    };

    std::function<void(std::uint32_t, std::uint32_t)> place = [&](std::uint32_t i, std::uint32_t free_used) {
      if (i == size) {
        bind(0);
        return;
      }
      if (free_used < 2) {
        labels[i] = Label::FreeVar;
        nodes[i] = Node::free_var(AtomId{free_used});
        place(i + 1, free_used + 1);
      }
      labels[i] = Label::BoundVar;
      place(i + 1, free_used);
      labels[i] = Label::Abs;
      for (std::uint32_t b = 0; b < i; ++b) {
        nodes[i] = Node::abs(NodeId{b});
        place(i + 1, free_used);
      }
      labels[i] = Label::App;
      for (std::uint32_t l = 0; l < i; ++l) {
        for (std::uint32_t r = 0; r < i; ++r) {
          nodes[i] = Node::app(NodeId{l}, NodeId{r});
          place(i + 1, free_used);
        }
      }
    };
    place(0, 0);
  }
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Modulo keeps results identical across standard library implementations.
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(engine_() % n); }
  bool coin() { return below(2) == 0; }

 private:
  std::mt19937_64 engine_;
};

constexpr const char* kBinderNames[] = {"a", "b", "c"};
constexpr const char* kFreeNames[] = {"x", "y"};

ExprId random_expr(SurfaceAst& ast, Rng& rng, std::uint32_t size, std::vector<std::string>& scope) {
  if (size == 1) {
    if (!scope.empty() && rng.coin()) return ast.var(scope[rng.below(static_cast<std::uint32_t>(scope.size()))]);
    return ast.var(kFreeNames[rng.below(2)]);
  }
  if (size == 2 || rng.coin()) {
    std::string name = kBinderNames[rng.below(3)];
    scope.push_back(name);
    const ExprId body = random_expr(ast, rng, size - 1, scope);
    scope.pop_back();
    return ast.lam(std::move(name), body);
  }
  const std::uint32_t left_size = 1 + rng.below(size - 2);
  const ExprId left = random_expr(ast, rng, left_size, scope);
  const ExprId right = random_expr(ast, rng, size - 1 - left_size, scope);
  return ast.app(left, right);
}

// Rendering of the subgraph at `root` in which binders on the current path
// become relative indices and binders outside it keep their node identity.
std::string structural_key(const LamGraph& g, NodeId root) {
  std::string key;
  std::vector<std::uint32_t> path_abs;
  struct Item {
    NodeId node;
    bool exit;
  };
  std::vector<Item> stack{{root, false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.exit) {
      path_abs.pop_back();
      key += ')';
      continue;
    }
    const Node& node = g.node(it.node);
    switch (node.label()) {
      case Label::App:
        key += '@';
        stack.push_back({node.right(), false});
        stack.push_back({node.left(), false});
        break;
      case Label::Abs:
        key += "L(";
        path_abs.push_back(it.node.value);
        stack.push_back({it.node, true});
        stack.push_back({node.body(), false});
        break;
      case Label::BoundVar: {
        auto pos = std::find(path_abs.rbegin(), path_abs.rend(), node.binder().value);
        if (pos != path_abs.rend()) {
          key += 'i' + std::to_string(pos - path_abs.rbegin()) + ' ';
        } else {
          key += 'b' + std::to_string(node.binder().value) + ' ';
        }
        break;
      }
      case Label::FreeVar:
        key += 'f' + std::to_string(node.atom().value) + ' ';
        break;
    }
  }
  return key;
}

}  // namespace

SurfaceAst gen_random_term(std::uint32_t size, std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("gen_random_term: size must be >= 1");
  SurfaceAst ast;
  Rng rng(seed);
  std::vector<std::string> scope;
  ast.root = random_expr(ast, rng, size, scope);
  return ast;
}

LamGraph random_collapse(const LamGraph& g, std::span<NodeId> keep, std::uint64_t seed) {
  const auto n = static_cast<std::uint32_t>(g.size());
  Rng rng(seed);
  std::vector<bool> kept(n, false);
  for (NodeId k : keep) kept[k.value] = true;

  std::map<std::string, std::vector<NodeId>> groups;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!kept[i]) groups[structural_key(g, NodeId{i})].push_back(NodeId{i});

  std::vector<std::uint32_t> rep(n);
  for (std::uint32_t i = 0; i < n; ++i) rep[i] = i;
  for (auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    for (std::size_t i = members.size() - 1; i > 0; --i)
      std::swap(members[i], members[rng.below(static_cast<std::uint32_t>(i + 1))]);
    for (std::size_t i = 1; i < members.size(); ++i)
      if (rng.coin()) rep[members[i].value] = members[0].value;
  }

  // Rebuild from `keep`, following children through `rep`.
  std::vector<std::uint32_t> new_id(n, kNoNode);
  std::vector<std::uint32_t> order;
  std::vector<NodeId> stack;
  for (auto it = keep.rbegin(); it != keep.rend(); ++it) stack.push_back(*it);
  while (!stack.empty()) {
    const NodeId cur{rep[stack.back().value]};
    stack.pop_back();
    if (new_id[cur.value] != kNoNode) continue;
    new_id[cur.value] = static_cast<std::uint32_t>(order.size());
    order.push_back(cur.value);
    const Node& node = g.node(cur);
    if (node.label() == Label::App) {
      stack.push_back(node.right());
      stack.push_back(node.left());
    } else if (node.label() == Label::Abs) {
      stack.push_back(node.body());
    }
  }
  auto map = [&](NodeId x) { return NodeId{new_id[rep[x.value]]}; };
  std::vector<Node> nodes;
  nodes.reserve(order.size());
  for (std::uint32_t old : order) {
    const Node& node = g.node(NodeId{old});
    switch (node.label()) {
      case Label::App: nodes.push_back(Node::app(map(node.left()), map(node.right()))); break;
      case Label::Abs: nodes.push_back(Node::abs(map(node.body()))); break;
      case Label::BoundVar: nodes.push_back(Node::bound_var(map(node.binder()))); break;
      case Label::FreeVar: nodes.push_back(Node::free_var(node.atom())); break;
    }
  }
  for (NodeId& k : keep) k = map(k);
  // Atoms are copied whole; unused ones are harmless.
  return build_graph(std::move(nodes), g.atoms());
}

CompiledGraph gen_random_sharing(const SurfaceAst& ast, std::uint64_t seed) {
  CompiledGraph tree = compile_to_graph(ast);
  NodeId root = tree.root;
  LamGraph shared = random_collapse(tree.graph, std::span<NodeId>(&root, 1), seed);
  return {std::move(shared), root};
}

namespace {

SurfaceAst rename_binders(const SurfaceAst& ast) {
  SurfaceAst out = ast;
  std::uint32_t fresh = 0;
  std::vector<std::pair<std::string, std::string>> scope;
  // Recursive walk; random terms are small.
  std::function<void(ExprId)> walk = [&](ExprId id) {
    Expr& e = out.exprs[id.value];
    switch (e.kind) {
      case Expr::Kind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
          if (it->first == e.name) {
            e.name = it->second;
            break;
          }
        }
        break;
      case Expr::Kind::App:
        walk(e.first);
        walk(out.exprs[id.value].second);
        break;
      case Expr::Kind::Lam: {
        std::string renamed = "p" + std::to_string(fresh++);
        scope.emplace_back(e.name, renamed);
        out.exprs[id.value].name = renamed;
        walk(out.exprs[id.value].first);
        scope.pop_back();
        break;
      }
      case Expr::Kind::Let:
        throw std::logic_error("rename_binders: let is not generated");
    }
  };
  walk(out.root);
  return out;
}

SurfaceAst mutate_leaf(const SurfaceAst& ast, Rng& rng) {
  SurfaceAst out = ast;
  std::vector<std::uint32_t> leaves;
  for (std::uint32_t i = 0; i < out.exprs.size(); ++i)
    if (out.exprs[i].kind == Expr::Kind::Var) leaves.push_back(i);
  Expr& leaf = out.exprs[leaves[rng.below(static_cast<std::uint32_t>(leaves.size()))]];
  const char* choices[] = {"x", "y", "a", "b", "c"};
  leaf.name = choices[rng.below(5)];
  return out;
}

}  // namespace

RandomPair gen_random_pair(std::uint32_t max_size, std::uint64_t seed) {
  if (max_size < 2) throw std::invalid_argument("gen_random_pair: max_size must be >= 2");
  Rng rng(seed);
  const std::uint32_t size = 2 + rng.below(max_size - 1);
  RandomPair out;
  out.first_ast = gen_random_term(size, rng.below(1u << 31));
  switch (rng.below(3)) {
    case 0: out.second_ast = gen_random_term(2 + rng.below(max_size - 1), rng.below(1u << 31)); break;
    case 1: out.second_ast = rename_binders(out.first_ast); break;
    default: out.second_ast = mutate_leaf(out.first_ast, rng); break;
  }
  GraphBuilder b;
  NodeId roots[2] = {compile_into(b, out.first_ast), compile_into(b, out.second_ast)};
  LamGraph tree = std::move(b).build();
  LamGraph shared = random_collapse(tree, roots, rng.below(1u << 31));
  out.pair = {std::move(shared), roots[0], roots[1]};
  return out;
}

}  // namespace shareq
