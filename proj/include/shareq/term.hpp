// Locally nameless λ-terms and readback from λ-graphs.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shareq/graph.hpp"

namespace shareq {

class Term;
Term readback(const LamGraph& g, NodeId root, std::size_t limit);

/// A term stored as a flat prefix-order token sequence. Each token records the
/// size of the subterm it starts, so children can be located without a scan
/// and equality is plain sequence equality. Deep terms never recurse.
class Term {
 public:
  enum class Tag : std::uint8_t { BVar, FVar, App, Lam };

  struct Token {
    Tag tag;
    std::uint32_t value;  // de Bruijn index for BVar, atom for FVar
    std::uint32_t span;   // tokens in the subterm starting here

    bool operator==(const Token&) const = default;
  };

  static Term bvar(std::uint32_t index);
  static Term fvar(AtomId atom);
  static Term app(const Term& left, const Term& right);
  static Term lam(const Term& body);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<Token>& tokens() const { return tokens_; }

  /// Locally nameless rendering, e.g. `\. \. 1` or `x (\. 0)`.
  std::string to_string(const AtomTable& atoms) const;

  /// Surface-syntax rendering with binders named by nesting depth (`x0`, `x1`,
  /// ...), renamed apart from the free names.
  std::string to_named_string(const AtomTable& atoms) const;

  bool operator==(const Term&) const = default;

 private:
  friend Term readback(const LamGraph& g, NodeId root, std::size_t limit);
  std::vector<Token> tokens_;
};

inline bool term_eq(const Term& t, const Term& s) { return t == s; }

/// Raised when unfolding would produce more than the allowed number of
/// constructors.
class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(std::size_t limit)
      : std::runtime_error("LimitExceeded: unfolding exceeds " + std::to_string(limit) + " constructors"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// Unfolds `root` into a term of at most `limit` constructors. Throws
/// GraphError(NotARoot), LimitExceeded, or GraphError(NotCrossed) on graphs
/// that are not dominated.
Term readback(const LamGraph& g, NodeId root, std::size_t limit);

}  // namespace shareq
