#pragma once

#include <map>
#include <string>
#include <vector>

#include "linguine/ssa.hpp"

namespace linguine {

// Flat lattice tracking "the current pronoun antecedent":
// Bottom (nothing bound) < Ref(name) < Top (conflicting bindings).
struct RefValue {
    enum class Kind { Bottom, Ref, Top };

    Kind kind = Kind::Bottom;
    std::string name;                 // Ref only
    std::vector<Span> bind_sites;     // Ref: contributing binding sites

    static RefValue bottom() { return RefValue{}; }
    static RefValue top() { return RefValue{Kind::Top, {}, {}}; }
    static RefValue ref(std::string name, Span site) {
        return RefValue{Kind::Ref, std::move(name), {site}};
    }

    bool is_bottom() const { return kind == Kind::Bottom; }
    bool is_ref() const { return kind == Kind::Ref; }
    bool is_top() const { return kind == Kind::Top; }
};

// Lattice equality; binding-site metadata is diagnostic only.
bool operator==(const RefValue& a, const RefValue& b);
inline bool operator!=(const RefValue& a, const RefValue& b) {
    return !(a == b);
}

RefValue join(const RefValue& a, const RefValue& b);
RefValue meet(const RefValue& a, const RefValue& b);

// One line of the referent trace produced for `--emit-refs`.
struct RefSite {
    Span span;                 // pronoun occurrence
    std::string word;
    std::string referent;
    std::vector<Span> bound_at;
};

struct RefReport {
    std::vector<RefSite> sites;   // source order
    int entry_lifts = 0;          // worklist statistics: lattice lifts
};

// Forward abstract interpretation over the referent lattice. Proves every
// pronoun site has a unique antecedent that is defined on all paths and
// agrees with the SSA binding chosen during lowering. Throws CompileError
// (PronounUndefined / PronounAmbiguous) with a referent trace on failure.
RefReport analyze(const ssa::SsaProgram& prog);

std::string dump_refs(const RefReport& report);

}  // namespace linguine
