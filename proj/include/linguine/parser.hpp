#pragma once

#include "linguine/ast.hpp"
#include "linguine/token.hpp"

namespace linguine {

// Deterministic recursive-descent parse of a token stream. Each pronoun node
// is annotated with the referent-stack top at its point of occurrence (or
// "unresolved" when nothing is bound yet). Throws CompileError(Parse) on the
// first syntax error.
ast::Program parse(const TokenStream& tokens);

}  // namespace linguine
