#pragma once

#include <map>
#include <string>
#include <vector>

#include "linguine/core_ast.hpp"
#include "linguine/types.hpp"

namespace linguine {

struct BindingInfo {
    std::string name;
    TypeTerm type;
    Span span;
};

// Core program with every expression annotated with its ground type.
struct TypedProgram {
    core::Program program;
    std::vector<BindingInfo> bindings;  // binding sites in source order
};

// Algorithm-W style monomorphic inference and checking. Variables must be
// definitely assigned on every path before use; pronouns are typed from
// their provisional referent's most recent binding and fully validated by
// the referent analysis afterwards. Throws CompileError on rejection
// (Type, or PronounUndefined for a pronoun with no antecedent at all).
TypedProgram infer(core::Program program);

// `--emit-types` rendering: one "name : Type" line per binding site.
std::string dump_types(const TypedProgram& typed);

}  // namespace linguine
