#include "shareq/graph_json.hpp"

#include <map>
#include <optional>
#include <set>

#include "json.hpp"

namespace shareq {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

std::uint32_t id_field(const json& obj, const char* key, std::size_t node_count) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("node is missing \"") + key + "\"");
  if (!it->is_number_integer()) throw FormatError(std::string("\"") + key + "\" must be an integer");
  const auto v = it->get<std::int64_t>();
  // Out-of-range references are left to build_graph (DanglingReference).
  if (v < 0 || v > std::int64_t{kNoNode} - 1) return static_cast<std::uint32_t>(node_count);
  return static_cast<std::uint32_t>(v);
}

void expect_keys(const json& obj, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) throw FormatError("unknown field \"" + key + "\"");
  }
}

}  // namespace

LamGraph parse_graph_json(std::string_view text, bool validate) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw FormatError("graph must be a JSON object");
  expect_keys(doc, {"nodes", "roots"});
  auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end() || !nodes_it->is_array()) throw FormatError("\"nodes\" must be an array");
  const std::size_t n = nodes_it->size();

  std::vector<std::optional<Node>> slots(n);
  AtomTable atoms;
  for (const json& obj : *nodes_it) {
    if (!obj.is_object()) throw FormatError("each node must be an object");
    const std::uint32_t id = id_field(obj, "id", n);
    if (id >= n) throw FormatError("node ids must be 0.." + std::to_string(n == 0 ? 0 : n - 1));
    if (slots[id]) throw FormatError("duplicate node id " + std::to_string(id));
    auto kind_it = obj.find("kind");
    if (kind_it == obj.end() || !kind_it->is_string()) throw FormatError("node " + std::to_string(id) + " needs a \"kind\"");
    const std::string kind = kind_it->get<std::string>();
    if (kind == "app") {
      expect_keys(obj, {"id", "kind", "left", "right"});
      slots[id] = Node::app(NodeId{id_field(obj, "left", n)}, NodeId{id_field(obj, "right", n)});
    } else if (kind == "abs") {
      expect_keys(obj, {"id", "kind", "body"});
      slots[id] = Node::abs(NodeId{id_field(obj, "body", n)});
    } else if (kind == "bvar") {
      expect_keys(obj, {"id", "kind", "binder"});
      slots[id] = Node::bound_var(NodeId{id_field(obj, "binder", n)});
    } else if (kind == "fvar") {
      expect_keys(obj, {"id", "kind", "name"});
      auto name_it = obj.find("name");
      if (name_it == obj.end() || !name_it->is_string()) throw FormatError("fvar " + std::to_string(id) + " needs a \"name\"");
      slots[id] = Node::free_var(atoms.intern(name_it->get<std::string>()));
    } else {
      throw FormatError("unknown kind \"" + kind + "\"");
    }
  }
  std::vector<Node> nodes;
  nodes.reserve(n);
  for (auto& s : slots) nodes.push_back(*s);

  GraphBuilder builder(std::move(nodes), std::move(atoms));
  std::optional<std::set<std::uint32_t>> declared;
  if (auto roots_it = doc.find("roots"); roots_it != doc.end()) {
    if (!roots_it->is_array()) throw FormatError("\"roots\" must be an array");
    declared.emplace();
    for (const json& r : *roots_it) {
      if (r.is_number_integer()) {
        declared->insert(id_field(json{{"id", r}}, "id", n));
      } else if (r.is_object()) {
        expect_keys(r, {"id", "name"});
        const std::uint32_t id = id_field(r, "id", n);
        auto name_it = r.find("name");
        if (name_it == r.end() || !name_it->is_string()) throw FormatError("root label needs a string \"name\"");
        declared->insert(id);
        if (id < n) builder.label_root(name_it->get<std::string>(), NodeId{id});
      } else {
        throw FormatError("roots must be ids or {\"id\", \"name\"} objects");
      }
    }
  }
  LamGraph g = std::move(builder).build(validate);
  if (declared) {
    std::set<std::uint32_t> computed;
    for (NodeId r : g.roots()) computed.insert(r.value);
    if (computed != *declared) {
      std::vector<NodeId> witness;
      for (std::uint32_t r : computed)
        if (!declared->count(r)) witness.push_back(NodeId{r});
      for (std::uint32_t r : *declared)
        if (!computed.count(r)) witness.push_back(NodeId{r});
      throw GraphError(GraphErrorKind::RootMismatch, witness,
                       "declared roots differ from computed roots (first difference: node " +
                           std::to_string(witness.front().value) + ")");
    }
  }
  return g;
}

std::string graph_to_json(const LamGraph& g) {
  json nodes = json::array();
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const Node& x = g.node(NodeId{i});
    json obj{{"id", i}, {"kind", ""}};
    switch (x.label()) {
      case Label::App:
        obj["kind"] = "app";
        obj["left"] = x.left().value;
        obj["right"] = x.right().value;
        break;
      case Label::Abs:
        obj["kind"] = "abs";
        obj["body"] = x.body().value;
        break;
      case Label::BoundVar:
        obj["kind"] = "bvar";
        obj["binder"] = x.binder().value;
        break;
      case Label::FreeVar:
        obj["kind"] = "fvar";
        obj["name"] = g.atoms().name(x.atom());
        break;
    }
    nodes.push_back(std::move(obj));
  }
  std::map<std::uint32_t, std::string> names;
  for (const auto& [name, root] : g.root_labels()) {
    // Several labels on one root: keep the smallest name for stable output.
    auto [it, inserted] = names.try_emplace(root.value, name);
    if (!inserted && name < it->second) it->second = name;
  }
  json roots = json::array();
  for (NodeId r : g.roots()) {
    auto it = names.find(r.value);
    if (it == names.end()) {
      roots.push_back(r.value);
    } else {
      roots.push_back(json{{"id", r.value}, {"name", it->second}});
    }
  }
  json doc{{"nodes", std::move(nodes)}, {"roots", std::move(roots)}};
  return doc.dump(2) + "\n";
}

Query parse_query_json(std::string_view text, const LamGraph& g) {
  const json doc = parse_document(text);
  if (!doc.is_array()) throw FormatError("query must be an array of pairs");
  auto endpoint = [&](const json& v) -> NodeId {
    if (v.is_number_integer()) {
      const auto x = v.get<std::int64_t>();
      if (x < 0 || x >= std::int64_t{kNoNode}) throw FormatError("query id " + v.dump() + " out of range");
      return NodeId{static_cast<std::uint32_t>(x)};
    }
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      if (auto r = g.find_root_label(name)) return *r;
      throw FormatError("unknown root label \"" + name + "\"");
    }
    throw FormatError("query endpoints must be ids or root labels");
  };
  Query q;
  for (const json& pair : doc) {
    if (!pair.is_array() || pair.size() != 2) throw FormatError("each query entry must be a pair");
    q.emplace_back(endpoint(pair[0]), endpoint(pair[1]));
  }
  check_query(g, q);
  return q;
}

}  // namespace shareq
