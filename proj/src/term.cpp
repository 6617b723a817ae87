#include "shareq/term.hpp"

#include <algorithm>
#include <cctype>
#include <string_view>

namespace shareq {

Term Term::bvar(std::uint32_t index) {
  Term t;
  t.tokens_.push_back({Tag::BVar, index, 1});
  return t;
}

Term Term::fvar(AtomId atom) {
  Term t;
  t.tokens_.push_back({Tag::FVar, atom.value, 1});
  return t;
}

Term Term::app(const Term& left, const Term& right) {
  Term t;
  t.tokens_.reserve(1 + left.size() + right.size());
  t.tokens_.push_back({Tag::App, 0, static_cast<std::uint32_t>(1 + left.size() + right.size())});
  t.tokens_.insert(t.tokens_.end(), left.tokens_.begin(), left.tokens_.end());
  t.tokens_.insert(t.tokens_.end(), right.tokens_.begin(), right.tokens_.end());
  return t;
}

Term Term::lam(const Term& body) {
  Term t;
  t.tokens_.reserve(1 + body.size());
  t.tokens_.push_back({Tag::Lam, 0, static_cast<std::uint32_t>(1 + body.size())});
  t.tokens_.insert(t.tokens_.end(), body.tokens_.begin(), body.tokens_.end());
  return t;
}

namespace {

enum class Ctx : std::uint8_t { Top, AppLeft, AppRightNotLast, AppRightLast };

// Shared minimal-parenthesis printer. `binder_prefix` empty means nameless.
std::string render(const std::vector<Term::Token>& tokens, const AtomTable& atoms, const std::string& binder_prefix) {
  struct Item {
    std::uint32_t index;  // token index, or kNoNode for a literal
    Ctx ctx;
    std::uint32_t depth;
    std::string_view literal;
  };
  std::string out;
  if (tokens.empty()) return out;
  const bool named = !binder_prefix.empty();
  std::vector<Item> stack{{0, Ctx::Top, 0, {}}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (item.index == kNoNode) {
      out += item.literal;
      continue;
    }
    const Term::Token& tok = tokens[item.index];
    switch (tok.tag) {
      case Term::Tag::BVar:
        if (named) {
          out += binder_prefix;
          out += std::to_string(item.depth - 1 - tok.value);
        } else {
          out += std::to_string(tok.value);
        }
        break;
      case Term::Tag::FVar:
        out += atoms.name(AtomId{tok.value});
        break;
      case Term::Tag::Lam: {
        const bool parens = item.ctx == Ctx::AppLeft || item.ctx == Ctx::AppRightNotLast;
        if (parens) stack.push_back({kNoNode, Ctx::Top, 0, ")"});
        stack.push_back({item.index + 1, Ctx::Top, item.depth + 1, {}});
        if (named) {
          out += parens ? "(\\" : "\\";
          out += binder_prefix;
          out += std::to_string(item.depth);
          out += ". ";
        } else {
          out += parens ? "(\\. " : "\\. ";
        }
        break;
      }
      case Term::Tag::App: {
        const bool parens = item.ctx == Ctx::AppRightNotLast || item.ctx == Ctx::AppRightLast;
        const std::uint32_t left = item.index + 1;
        const std::uint32_t right = left + tokens[left].span;
        const Ctx right_ctx = (parens || item.ctx == Ctx::Top) ? Ctx::AppRightLast : Ctx::AppRightNotLast;
        if (parens) stack.push_back({kNoNode, Ctx::Top, 0, ")"});
        stack.push_back({right, right_ctx, item.depth, {}});
        stack.push_back({kNoNode, Ctx::Top, 0, " "});
        stack.push_back({left, Ctx::AppLeft, item.depth, {}});
        if (parens) out += "(";
        break;
      }
    }
  }
  return out;
}

bool is_prefix_of_numbered(std::string_view prefix, std::string_view name) {
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return false;
  return std::all_of(name.begin() + static_cast<std::ptrdiff_t>(prefix.size()), name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

std::string Term::to_string(const AtomTable& atoms) const { return render(tokens_, atoms, ""); }

std::string Term::to_named_string(const AtomTable& atoms) const {
  std::string prefix = "x";
  auto clashes = [&] {
    return std::any_of(atoms.names().begin(), atoms.names().end(),
                       [&](const std::string& name) { return is_prefix_of_numbered(prefix, name); });
  };
  while (clashes()) prefix += "_";
  return render(tokens_, atoms, prefix);
}

Term readback(const LamGraph& g, NodeId root, std::size_t limit) {
  if (!g.contains(root) || !g.is_root(root))
    throw GraphError(GraphErrorKind::NotARoot, {root}, "node " + std::to_string(root.value) + " is not a root");

  struct Frame {
    NodeId node;
    bool exit;
    std::uint32_t token;
  };
  // Position of each abstraction on the current access path (kNoNode when
  // off the path). A node occurs at most once on any path of an acyclic graph.
  std::vector<std::uint32_t> abs_position(g.size(), kNoNode);
  std::uint32_t depth = 0;

  Term out;
  std::vector<Term::Token>& tokens = out.tokens_;
  std::vector<Frame> stack{{root, false, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const Node& node = g.node(f.node);
    if (f.exit) {
      tokens[f.token].span = static_cast<std::uint32_t>(tokens.size() - f.token);
      if (node.label() == Label::Abs) {
        --depth;
        abs_position[f.node.value] = kNoNode;
      }
      continue;
    }
    if (tokens.size() >= limit) throw LimitExceeded(limit);
    const auto here = static_cast<std::uint32_t>(tokens.size());
    switch (node.label()) {
      case Label::BoundVar: {
        const std::uint32_t pos = abs_position[node.binder().value];
        if (pos == kNoNode)
          throw GraphError(GraphErrorKind::NotCrossed, {f.node, node.binder()},
                           "variable " + std::to_string(f.node.value) + " reached outside its binder");
        tokens.push_back({Term::Tag::BVar, depth - pos - 1, 1});
        break;
      }
      case Label::FreeVar:
        tokens.push_back({Term::Tag::FVar, node.atom().value, 1});
        break;
      case Label::Abs:
        tokens.push_back({Term::Tag::Lam, 0, 0});
        abs_position[f.node.value] = depth++;
        stack.push_back({f.node, true, here});
        stack.push_back({node.body(), false, 0});
        break;
      case Label::App:
        tokens.push_back({Term::Tag::App, 0, 0});
        stack.push_back({f.node, true, here});
        stack.push_back({node.right(), false, 0});
        stack.push_back({node.left(), false, 0});
        break;
    }
  }
  return out;
}

}  // namespace shareq
