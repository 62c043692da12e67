#pragma once

#include "linguine/ast.hpp"
#include "linguine/core_ast.hpp"

namespace linguine {

// Rewrites surface idioms into the core language:
//   sum of E     ->  Reduce(plus, 0, E)
//   length of E  ->  Builtin(len, E)
//   E reversed   ->  Builtin(rev, E)
//   Add E to x.  ->  Append(x, E)
// Spans and pronoun annotations are preserved; total on well-formed input.
core::Program desugar(const ast::Program& program);

// Core programs are already minimal; this is a structural copy, so
// desugaring is idempotent.
core::Program desugar(const core::Program& program);

}  // namespace linguine
