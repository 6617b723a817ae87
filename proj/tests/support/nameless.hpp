// Direct translation of surface syntax to locally nameless terms, expanding
// `let` by substitution. Independent of the graph compiler, so it can serve as
// the reference for compile + readback.

#pragma once

#include "shareq/surface.hpp"
#include "shareq/term.hpp"

namespace oracle {

/// Free names are looked up in `atoms`; std::out_of_range if one is missing.
shareq::Term to_nameless(const shareq::SurfaceAst& ast, const shareq::AtomTable& atoms);

}  // namespace oracle
