// Named surface syntax with non-recursive `let`, and its compilation to
// λ-graphs. `let` is the sharing construct: a bound expression becomes one
// node referenced from every use.
//
//   e ::= \x y ... . e | let x = e in e | e e | x | ( e )

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shareq/graph.hpp"

namespace shareq {

struct SourceSpan {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

struct ExprId {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const ExprId&) const = default;
};

struct Expr {
  enum class Kind : std::uint8_t { Var, App, Lam, Let };

  Kind kind;
  std::string name;  // Var name, Lam binder, Let binder
  ExprId first{};    // App left, Lam body, Let bound expression
  ExprId second{};   // App right, Let body
  SourceSpan span;
};

/// Arena-allocated AST; `root` is the whole expression.
struct SurfaceAst {
  std::vector<Expr> exprs;
  ExprId root{};

  const Expr& at(ExprId id) const { return exprs[id.value]; }

  ExprId var(std::string name, SourceSpan span = {});
  ExprId app(ExprId left, ExprId right, SourceSpan span = {});
  ExprId lam(std::string binder, ExprId body, SourceSpan span = {});
  ExprId let(std::string binder, ExprId bound, ExprId body, SourceSpan span = {});
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan where, const std::string& message);
  SourceSpan where() const { return where_; }

 private:
  SourceSpan where_;
};

SurfaceAst parse_surface(std::string_view text);

/// Raised if a compiled graph fails validation. Lexical scoping makes this
/// unreachable for parsed input; it guards hand-built ASTs.
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compiles `ast` into `builder`, returning its root. Free names map to the
/// builder's shared FreeVar nodes; each λ gets at most one BoundVar node,
/// created on first use; `let` bindings are compiled once, on first use.
NodeId compile_into(GraphBuilder& builder, const SurfaceAst& ast);

struct CompiledGraph {
  LamGraph graph;
  NodeId root;
};

CompiledGraph compile_to_graph(const SurfaceAst& ast);

}  // namespace shareq
