// λ-graphs: arena storage, structural validation and path navigation.
//
// A graph is a finite DAG of App/Abs/Var nodes. Bound variables carry a
// binding edge to their Abs node; binding edges are not structural and never
// show up in parent lists or paths.

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace shareq {

struct NodeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const NodeId&) const = default;
};

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

struct AtomId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const AtomId&) const = default;
};

enum class Label : std::uint8_t { App, Abs, BoundVar, FreeVar };

std::string_view label_name(Label label);

enum class Direction : std::uint8_t { Left, Down, Right };

/// Directions in walk order: the first element is the step taken from the
/// start node.
using Trace = std::vector<Direction>;

/// One node of the arena. The two payload slots are interpreted per label:
/// App (left, right), Abs (body), BoundVar (binder), FreeVar (atom).
class Node {
 public:
  static constexpr Node app(NodeId left, NodeId right) { return {Label::App, left.value, right.value}; }
  static constexpr Node abs(NodeId body) { return {Label::Abs, body.value, kNoNode}; }
  static constexpr Node bound_var(NodeId binder) { return {Label::BoundVar, binder.value, kNoNode}; }
  static constexpr Node free_var(AtomId atom) { return {Label::FreeVar, atom.value, kNoNode}; }

  constexpr Label label() const { return label_; }
  constexpr bool is_var() const { return label_ == Label::BoundVar || label_ == Label::FreeVar; }

  constexpr NodeId left() const { return {a_}; }
  constexpr NodeId right() const { return {b_}; }
  constexpr NodeId body() const { return {a_}; }
  constexpr NodeId binder() const { return {a_}; }
  constexpr AtomId atom() const { return {a_}; }

  constexpr bool operator==(const Node&) const = default;

 private:
  friend class GraphBuilder;

  constexpr Node(Label label, std::uint32_t a, std::uint32_t b) : label_(label), a_(a), b_(b) {}

  Label label_;
  std::uint32_t a_;
  std::uint32_t b_;
};

/// Interning table for free-variable names.
class AtomTable {
 public:
  AtomId intern(std::string_view name);
  std::optional<AtomId> find(std::string_view name) const;
  const std::string& name(AtomId atom) const { return names_.at(atom.value); }
  std::size_t size() const { return names_.size(); }
  std::span<const std::string> names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

enum class GraphErrorKind {
  DanglingReference,
  BinderNotAbs,
  UnsetChild,
  DuplicateFreeVar,
  CyclicGraph,
  DominationViolation,
  RootMismatch,
  NoSuchPath,
  NotCrossed,
  NotARoot,
};

std::string_view error_kind_name(GraphErrorKind kind);

/// Structural error. `nodes` holds the witnessing node(s); for domination
/// violations it is (bound var, binder, offending root).
class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, std::vector<NodeId> nodes, const std::string& detail);

  GraphErrorKind kind() const { return kind_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

 private:
  GraphErrorKind kind_;
  std::vector<NodeId> nodes_;
};

struct ParentEdge {
  NodeId parent;
  Direction direction;
};

/// Immutable validated (or, with validation skipped, at least well-formed)
/// λ-graph. Parents are stored in CSR form.
class LamGraph {
 public:
  std::size_t size() const { return nodes_.size(); }
  std::size_t edge_count() const { return parent_edges_.size(); }
  const Node& node(NodeId n) const { return nodes_[n.value]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const ParentEdge> parents(NodeId n) const {
    return {parent_edges_.data() + parent_offset_[n.value],
            parent_edges_.data() + parent_offset_[n.value + 1]};
  }
  std::span<const NodeId> roots() const { return roots_; }
  bool is_root(NodeId n) const { return parent_offset_[n.value] == parent_offset_[n.value + 1]; }
  const AtomTable& atoms() const { return atoms_; }

  /// Root labels from the input file, used to resolve named queries.
  const std::unordered_map<std::string, NodeId>& root_labels() const { return root_labels_; }
  std::optional<NodeId> find_root_label(std::string_view name) const;

  bool contains(NodeId n) const { return n.value < nodes_.size(); }

 private:
  friend LamGraph build_graph(std::vector<Node>, AtomTable, bool);
  friend class GraphBuilder;

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> parent_offset_;
  std::vector<ParentEdge> parent_edges_;
  std::vector<NodeId> roots_;
  AtomTable atoms_;
  std::unordered_map<std::string, NodeId> root_labels_;
};

/// Builds a graph from a dense node list and its atom table. Computes parents
/// and roots, then validates references, acyclicity and domination (the last
/// two can be skipped for graphs known to be valid by construction).
LamGraph build_graph(std::vector<Node> nodes, AtomTable atoms, bool validate = true);

/// Throws CyclicGraph naming a node that lies on a structural cycle.
void validate_acyclic(const LamGraph& g);

/// Throws DominationViolation(bound var, binder, root) when some root reaches
/// a bound variable without crossing its binder. Requires acyclicity.
void validate_dominated(const LamGraph& g);

/// Endpoint of the path from `start` following `trace`; NoSuchPath when a
/// direction does not match the node kind.
NodeId follow(const LamGraph& g, NodeId start, std::span<const Direction> trace);

/// De Bruijn index of the abstraction `binder` relative to the access path
/// from `root` along `trace`. Throws NotCrossed if the path misses `binder`.
std::uint32_t index_of(const LamGraph& g, NodeId root, std::span<const Direction> trace, NodeId binder);

/// Incremental construction with forward references (an Abs can be created
/// before its body exists) and one FreeVar node per name.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(AtomTable atoms) : atoms_(std::move(atoms)) {}
  /// Starts from an existing dense node list (ids are kept).
  GraphBuilder(std::vector<Node> nodes, AtomTable atoms);

  NodeId app(NodeId left, NodeId right);
  NodeId abs(NodeId body);
  /// Abs whose body is filled in later with set_body.
  NodeId abs_placeholder();
  void set_body(NodeId abs, NodeId body);
  NodeId bound_var(NodeId binder);
  /// The unique FreeVar node for `name`, created on first request.
  NodeId free_var(std::string_view name);

  /// Copies every node of `g` into this arena, merging free variables by
  /// name. Returns the old-to-new id mapping.
  std::vector<NodeId> append(const LamGraph& g);

  void label_root(std::string name, NodeId root) { labels_.emplace_back(std::move(name), root); }

  std::size_t size() const { return nodes_.size(); }
  AtomTable& atoms() { return atoms_; }

  LamGraph build(bool validate = true) &&;

 private:
  std::vector<Node> nodes_;
  AtomTable atoms_;
  std::unordered_map<std::uint32_t, NodeId> free_nodes_;
  std::vector<std::pair<std::string, NodeId>> labels_;
};

}  // namespace shareq
