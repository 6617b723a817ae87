#include "shareq/surface.hpp"

#include <cctype>
#include <optional>

namespace shareq {

ExprId SurfaceAst::var(std::string name, SourceSpan span) {
  exprs.push_back({Expr::Kind::Var, std::move(name), {}, {}, span});
  return {static_cast<std::uint32_t>(exprs.size() - 1)};
}

ExprId SurfaceAst::app(ExprId left, ExprId right, SourceSpan span) {
  exprs.push_back({Expr::Kind::App, {}, left, right, span});
  return {static_cast<std::uint32_t>(exprs.size() - 1)};
}

ExprId SurfaceAst::lam(std::string binder, ExprId body, SourceSpan span) {
  exprs.push_back({Expr::Kind::Lam, std::move(binder), body, {}, span});
  return {static_cast<std::uint32_t>(exprs.size() - 1)};
}

ExprId SurfaceAst::let(std::string binder, ExprId bound, ExprId body, SourceSpan span) {
  exprs.push_back({Expr::Kind::Let, std::move(binder), bound, body, span});
  return {static_cast<std::uint32_t>(exprs.size() - 1)};
}

ParseError::ParseError(SourceSpan where, const std::string& message)
    : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where) {}

namespace {

enum class Tok { Backslash, Dot, LParen, RParen, Equals, Ident, Let, In, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Equals: return "'='";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Let: return "'let'";
    case Tok::In: return "'in'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    SourceSpan at{line_, col_};
    if (pos_ >= text_.size()) return {Tok::End, {}, at};
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      advance();
      return Token{kind, std::string(1, c), at};
    };
    switch (c) {
      case '\\': return single(Tok::Backslash);
      case '.': return single(Tok::Dot);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '=': return single(Tok::Equals);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')) break;
        id += d;
        advance();
      }
      if (id == "let") return {Tok::Let, id, at};
      if (id == "in") return {Tok::In, id, at};
      return {Tok::Ident, id, at};
    }
    throw ParseError(at, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

  SurfaceAst run() {
    ast_.root = expr();
    if (look_.kind != Tok::End) fail("expected end of input");
    return std::move(ast_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(look_.span, what + ", found " + describe(look_)); }

  Token take() {
    Token t = std::move(look_);
    look_ = lexer_.next();
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (look_.kind != kind) fail(std::string("expected ") + what);
    return take();
  }

  bool starts_atom() const { return look_.kind == Tok::Ident || look_.kind == Tok::LParen; }

  ExprId expr() {
    if (look_.kind == Tok::Backslash) return lambda();
    if (look_.kind == Tok::Let) return let_in();
    return application();
  }

  ExprId lambda() {
    const SourceSpan at = take().span;
    std::vector<std::string> binders;
    binders.push_back(expect(Tok::Ident, "a binder name").text);
    while (look_.kind == Tok::Ident) binders.push_back(take().text);
    expect(Tok::Dot, "'.'");
    ExprId body = expr();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = ast_.lam(*it, body, at);
    return body;
  }

  ExprId let_in() {
    const SourceSpan at = take().span;
    std::string name = expect(Tok::Ident, "a name after 'let'").text;
    expect(Tok::Equals, "'='");
    ExprId bound = expr();
    expect(Tok::In, "'in'");
    ExprId body = expr();
    return ast_.let(std::move(name), bound, body, at);
  }

  ExprId application() {
    if (!starts_atom()) fail("expected an expression");
    const SourceSpan at = look_.span;
    ExprId acc = atom();
    while (true) {
      if (starts_atom()) {
        acc = ast_.app(acc, atom(), at);
      } else if (look_.kind == Tok::Backslash || look_.kind == Tok::Let) {
        // A trailing λ or let extends to the right as the last argument.
        return ast_.app(acc, expr(), at);
      } else {
        return acc;
      }
    }
  }

  ExprId atom() {
    if (look_.kind == Tok::Ident) {
      Token t = take();
      return ast_.var(std::move(t.text), t.span);
    }
    expect(Tok::LParen, "'('");
    ExprId inner = expr();
    expect(Tok::RParen, "')'");
    return inner;
  }

  Lexer lexer_;
  Token look_;
  SurfaceAst ast_;
};

// Scope chain stored as a pool of frames linked by parent index, so that a
// `let` can capture the environment of its definition.
struct Binding {
  std::string name;
  std::uint32_t parent;
  bool is_let;
  NodeId abs{kNoNode};
  NodeId bound_var{kNoNode};
  ExprId bound{};
  std::uint32_t def_env = kNoNode;
  NodeId compiled{kNoNode};
};

class Compiler {
 public:
  Compiler(GraphBuilder& builder, const SurfaceAst& ast) : builder_(builder), ast_(ast) {}

  NodeId compile(ExprId id, std::uint32_t env) {
    const Expr& e = ast_.at(id);
    switch (e.kind) {
      case Expr::Kind::Var: {
        for (std::uint32_t b = env; b != kNoNode; b = pool_[b].parent) {
          if (pool_[b].name != e.name) continue;
          if (!pool_[b].is_let) {
            if (pool_[b].bound_var.value == kNoNode) pool_[b].bound_var = builder_.bound_var(pool_[b].abs);
            return pool_[b].bound_var;
          }
          if (pool_[b].compiled.value == kNoNode) {
            const NodeId n = compile(pool_[b].bound, pool_[b].def_env);
            pool_[b].compiled = n;
          }
          return pool_[b].compiled;
        }
        return builder_.free_var(e.name);
      }
      case Expr::Kind::App: {
        const NodeId left = compile(e.first, env);
        const NodeId right = compile(e.second, env);
        return builder_.app(left, right);
      }
      case Expr::Kind::Lam: {
        const NodeId abs = builder_.abs_placeholder();
        pool_.push_back({e.name, env, false, abs});
        const auto scope = static_cast<std::uint32_t>(pool_.size() - 1);
        builder_.set_body(abs, compile(e.first, scope));
        return abs;
      }
      case Expr::Kind::Let: {
        Binding b{e.name, env, true};
        b.bound = e.first;
        b.def_env = env;
        pool_.push_back(std::move(b));
        return compile(e.second, static_cast<std::uint32_t>(pool_.size() - 1));
      }
    }
    return NodeId{kNoNode};
  }

 private:
  GraphBuilder& builder_;
  const SurfaceAst& ast_;
  std::vector<Binding> pool_;
};

}  // namespace

SurfaceAst parse_surface(std::string_view text) { return Parser(text).run(); }

NodeId compile_into(GraphBuilder& builder, const SurfaceAst& ast) {
  return Compiler(builder, ast).compile(ast.root, kNoNode);
}

CompiledGraph compile_to_graph(const SurfaceAst& ast) {
  GraphBuilder builder;
  const NodeId root = compile_into(builder, ast);
  try {
    return {std::move(builder).build(), root};
  } catch (const GraphError& e) {
    throw ScopeError(e.what());
  }
}

}  // namespace shareq
