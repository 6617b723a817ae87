// JSON interchange for λ-graphs and queries.
//
// Graph:  {"nodes": [{"id": 0, "kind": "fvar", "name": "x"},
//                    {"id": 1, "kind": "app", "left": 0, "right": 0}, ...],
//          "roots": [1, {"id": 2, "name": "b"}]}
// Kinds are app (left, right), abs (body), bvar (binder), fvar (name). Ids
// must be exactly 0..n-1 in any order. "roots" is optional; when present it
// must list exactly the computed roots, and named entries label them.
//
// Query:  [[0, 2], ["a", "b"]]   pairs of root ids or root labels.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "shareq/checker.hpp"
#include "shareq/graph.hpp"

namespace shareq {

/// Malformed JSON or a document that does not follow the format above.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& message) : std::runtime_error("FormatError: " + message) {}
};

/// Throws FormatError, or GraphError when the described graph is invalid.
LamGraph parse_graph_json(std::string_view text, bool validate = true);

/// Pretty-printed JSON; node ids are the arena ids, labeled roots keep their
/// names.
std::string graph_to_json(const LamGraph& g);

/// Throws FormatError for unknown labels or malformed pairs, QueryError for
/// endpoints that are not roots.
Query parse_query_json(std::string_view text, const LamGraph& g);

}  // namespace shareq
