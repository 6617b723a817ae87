#include "shareq/checker.hpp"

#include <string>

namespace shareq {

std::string_view reason_name(FailureReason reason) {
  switch (reason) {
    case FailureReason::ParentStillBuilding: return "ParentStillBuilding";
    case FailureReason::SiblingInOtherClass: return "SiblingInOtherClass";
    case FailureReason::NotHomogeneous: return "NotHomogeneous";
    case FailureReason::FreeVarsDistinct: return "FreeVarsDistinct";
    case FailureReason::BindersNotEquated: return "BindersNotEquated";
  }
  return "?";
}

void check_query(const LamGraph& g, const Query& q) {
  for (const auto& [a, b] : q) {
    for (NodeId n : {a, b}) {
      if (!g.contains(n)) throw QueryError(n, "NonRootQuery: node " + std::to_string(n.value) + " does not exist");
      if (!g.is_root(n)) throw QueryError(n, "NonRootQuery: node " + std::to_string(n.value) + " is not a root");
    }
  }
}

namespace {

// Undirected query edges as per-node singly linked lists with tail append, so
// edges added while a list is being walked are still visited.
class QueryEdges {
 public:
  QueryEdges(std::size_t nodes, std::size_t reserve) : head_(nodes, kNoNode), tail_(nodes, kNoNode) {
    target_.reserve(reserve);
    next_.reserve(reserve);
  }

  void add(NodeId a, NodeId b) {
    push(a, b);
    push(b, a);
  }

  std::uint32_t first(NodeId n) const { return head_[n.value]; }
  std::uint32_t next(std::uint32_t edge) const { return next_[edge]; }
  NodeId target(std::uint32_t edge) const { return NodeId{target_[edge]}; }
  std::size_t size() const { return target_.size(); }

 private:
  void push(NodeId from, NodeId to) {
    const auto e = static_cast<std::uint32_t>(target_.size());
    target_.push_back(to.value);
    next_.push_back(kNoNode);
    if (tail_[from.value] == kNoNode) {
      head_[from.value] = e;
    } else {
      next_[tail_[from.value]] = e;
    }
    tail_[from.value] = e;
  }

  std::vector<std::uint32_t> head_;
  std::vector<std::uint32_t> tail_;
  std::vector<std::uint32_t> target_;
  std::vector<std::uint32_t> next_;
};

bool homogeneous(const Node& a, const Node& b) { return a.label() == b.label(); }

// Query edges between corresponding children of two homogeneous nodes.
void relate_children(QueryEdges& edges, const Node& m, const Node& c) {
  if (m.label() == Label::Abs) {
    edges.add(m.body(), c.body());
  } else if (m.label() == Label::App) {
    edges.add(m.left(), c.left());
    edges.add(m.right(), c.right());
  }
}

class QueueCheck {
 public:
  QueueCheck(const LamGraph& g, const Query& q)
      : g_(g), edges_(g.size(), 2 * q.size() + 4 * g.size()), building_(g.size(), kUndefined),
        queue_next_(g.size(), kNoNode), enqueued_(g.size(), 0) {
    result_.canonic.assign(g.size(), kNoNode);
    for (const auto& [a, b] : q) edges_.add(a, b);
    note_edges();
  }

  BlindResult run() && {
    const auto n = static_cast<std::uint32_t>(g_.size());
    for (std::uint32_t i = 0; i < n && !result_.failure; ++i) {
      tick();
      if (canonic(NodeId{i}) == kNoNode) build_class(NodeId{i});
    }
    return std::move(result_);
  }

 private:
  static constexpr std::int8_t kUndefined = -1;

  enum class Phase : std::uint8_t { Pop, Parents, Siblings };

  // One active BuildEquivalenceClass call. The class queue is an intrusive
  // FIFO threaded through queue_next_; every node is enqueued at most once.
  struct Frame {
    NodeId canonic;
    std::uint32_t queue_head;
    std::uint32_t queue_tail;
    NodeId current{kNoNode};
    std::uint32_t cursor = 0;  // parent index or query edge
    Phase phase = Phase::Pop;
  };

  std::uint32_t canonic(NodeId n) const { return result_.canonic[n.value]; }
  void tick(std::uint64_t k = 1) { result_.stats.transitions += k; }
  void note_edges() {
    if (edges_.size() > result_.stats.max_query_edges) result_.stats.max_query_edges = edges_.size();
  }

  void set_canonic(NodeId n, NodeId c) {
    if (result_.canonic[n.value] != kNoNode) ++result_.stats.canonic_rewrites;
    result_.canonic[n.value] = c.value;
  }

  void mark_enqueued(NodeId n) {
    if (enqueued_[n.value]) ++result_.stats.repeated_enqueues;
    enqueued_[n.value] = 1;
  }

  void push_frame(NodeId c) {
    set_canonic(c, c);
    building_[c.value] = 1;
    mark_enqueued(c);
    stack_.push_back({c, c.value, c.value});
    tick(3);
  }

  void fail(FailureReason reason, NodeId node, NodeId other) { result_.failure = Failure{reason, node, other}; }

  // Returns false on failure.
  bool enqueue(NodeId m, Frame& frame) {
    tick();
    const Node& mn = g_.node(m);
    const Node& cn = g_.node(frame.canonic);
    if (!homogeneous(mn, cn)) {
      fail(FailureReason::NotHomogeneous, m, frame.canonic);
      return false;
    }
    relate_children(edges_, mn, cn);
    note_edges();
    set_canonic(m, frame.canonic);
    mark_enqueued(m);
    if (frame.queue_head == kNoNode) {
      frame.queue_head = m.value;
    } else {
      queue_next_[frame.queue_tail] = m.value;
    }
    frame.queue_tail = m.value;
    tick(2);
    return true;
  }

  void build_class(NodeId start) {
    push_frame(start);
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      switch (f.phase) {
        case Phase::Pop: {
          tick();
          if (f.queue_head == kNoNode) {
            building_[f.canonic.value] = 0;
            stack_.pop_back();
            break;
          }
          f.current = NodeId{f.queue_head};
          f.queue_head = queue_next_[f.queue_head];
          if (f.queue_head == kNoNode) f.queue_tail = kNoNode;
          f.cursor = 0;
          f.phase = Phase::Parents;
          tick();
          break;
        }
        case Phase::Parents: {
          const auto parents = g_.parents(f.current);
          if (f.cursor == parents.size()) {
            f.cursor = edges_.first(f.current);
            f.phase = Phase::Siblings;
            break;
          }
          const NodeId m = parents[f.cursor++].parent;
          tick();
          const std::uint32_t cm = canonic(m);
          if (cm == kNoNode) {
            push_frame(m);  // invalidates f
          } else if (building_[cm] == 1) {
            fail(FailureReason::ParentStillBuilding, f.current, m);
            return;
          }
          break;
        }
        case Phase::Siblings: {
          if (f.cursor == kNoNode) {
            f.phase = Phase::Pop;
            break;
          }
          const NodeId m = edges_.target(f.cursor);
          f.cursor = edges_.next(f.cursor);
          tick();
          const std::uint32_t cm = canonic(m);
          if (cm == kNoNode) {
            if (!enqueue(m, f)) return;
          } else if (cm != f.canonic.value) {
            fail(FailureReason::SiblingInOtherClass, f.current, m);
            return;
          }
          break;
        }
      }
    }
  }

  const LamGraph& g_;
  QueryEdges edges_;
  std::vector<std::int8_t> building_;
  std::vector<std::uint32_t> queue_next_;
  std::vector<std::uint8_t> enqueued_;
  std::vector<Frame> stack_;
  BlindResult result_;
};

class RecursiveCheck {
 public:
  RecursiveCheck(const LamGraph& g, const Query& q)
      : g_(g), edges_(g.size(), 2 * q.size() + 4 * g.size()), visiting_(g.size(), 0) {
    result_.canonic.assign(g.size(), kNoNode);
    for (const auto& [a, b] : q) edges_.add(a, b);
    note_edges();
  }

  BlindResult run() && {
    const auto n = static_cast<std::uint32_t>(g_.size());
    for (std::uint32_t i = 0; i < n && !result_.failure; ++i) {
      tick();
      if (result_.canonic[i] == kNoNode) set_canonic(NodeId{i}, NodeId{i});
    }
    return std::move(result_);
  }

 private:
  enum class Phase : std::uint8_t { Parents, Siblings };

  // One active SetCanonic(node, canonic) call.
  struct Frame {
    NodeId node;
    NodeId canonic;
    std::uint32_t cursor = 0;
    Phase phase = Phase::Parents;
  };

  void tick(std::uint64_t k = 1) { result_.stats.transitions += k; }
  void note_edges() {
    if (edges_.size() > result_.stats.max_query_edges) result_.stats.max_query_edges = edges_.size();
  }
  void fail(FailureReason reason, NodeId node, NodeId other) { result_.failure = Failure{reason, node, other}; }

  // Entry of SetCanonic; false on failure.
  bool enter(NodeId n, NodeId c) {
    tick(3);
    if (!homogeneous(g_.node(n), g_.node(c))) {
      fail(FailureReason::NotHomogeneous, n, c);
      return false;
    }
    visiting_[n.value] = 1;
    if (result_.canonic[n.value] != kNoNode) ++result_.stats.canonic_rewrites;
    result_.canonic[n.value] = c.value;
    stack_.push_back({n, c});
    return true;
  }

  void set_canonic(NodeId start, NodeId c) {
    if (!enter(start, c)) return;
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      if (f.phase == Phase::Parents) {
        const auto parents = g_.parents(f.node);
        if (f.cursor < parents.size()) {
          const NodeId m = parents[f.cursor++].parent;
          tick();
          if (visiting_[m.value]) {
            fail(FailureReason::ParentStillBuilding, f.node, m);
            return;
          }
          if (result_.canonic[m.value] == kNoNode && !enter(m, m)) return;
          continue;
        }
        relate_children(edges_, g_.node(f.node), g_.node(f.canonic));
        note_edges();
        tick();
        f.cursor = edges_.first(f.node);
        f.phase = Phase::Siblings;
        continue;
      }
      if (f.cursor == kNoNode) {
        visiting_[f.node.value] = 0;
        tick();
        stack_.pop_back();
        continue;
      }
      const NodeId m = edges_.target(f.cursor);
      f.cursor = edges_.next(f.cursor);
      tick();
      const std::uint32_t cm = result_.canonic[m.value];
      if (cm == kNoNode) {
        if (!enter(m, f.canonic)) return;
      } else if (cm != f.canonic.value) {
        fail(FailureReason::SiblingInOtherClass, f.node, m);
        return;
      }
    }
  }

  const LamGraph& g_;
  QueryEdges edges_;
  std::vector<std::uint8_t> visiting_;
  std::vector<Frame> stack_;
  BlindResult result_;
};

}  // namespace

BlindResult blind_check(const LamGraph& g, const Query& q) {
  check_query(g, q);
  return QueueCheck(g, q).run();
}

BlindResult blind_check_recursive(const LamGraph& g, const Query& q) {
  check_query(g, q);
  return RecursiveCheck(g, q).run();
}

std::optional<Failure> vars_check(const LamGraph& g, std::span<const std::uint32_t> canonic) {
  const auto n = static_cast<std::uint32_t>(g.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const Node& v = g.node(NodeId{i});
    if (!v.is_var()) continue;
    const NodeId w{canonic[i]};
    if (w.value == i) continue;
    const Node& wn = g.node(w);
    if (v.label() == Label::FreeVar || wn.label() == Label::FreeVar)
      return Failure{FailureReason::FreeVarsDistinct, NodeId{i}, w};
    if (canonic[v.binder().value] != canonic[wn.binder().value])
      return Failure{FailureReason::BindersNotEquated, NodeId{i}, w};
  }
  return std::nullopt;
}

SharingResult sharing_check(const LamGraph& g, const Query& q, Backend backend) {
  BlindResult blind = backend == Backend::Queue ? blind_check(g, q) : blind_check_recursive(g, q);
  SharingResult out;
  out.stats = blind.stats;
  if (!blind.ok()) {
    out.failure = blind.failure;
    out.blind_failed = true;
    return out;
  }
  out.failure = vars_check(g, blind.canonic);
  out.stats.transitions += g.size();
  if (!out.failure) out.partition = NodePartition::from_representatives(blind.canonic);
  return out;
}

}  // namespace shareq
