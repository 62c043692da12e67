#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "linguine/diagnostics.hpp"

namespace linguine {

// Monomorphic first-order types. Type variables appear only transiently
// during unification; a fully inferred program is ground.
struct TypeTerm {
    enum class Kind { Int, Bool, Str, List, Var };

    Kind kind = Kind::Int;
    int var_id = 0;                        // Kind::Var
    std::shared_ptr<TypeTerm> elem;        // Kind::List

    static TypeTerm make_int() { return TypeTerm{Kind::Int, 0, nullptr}; }
    static TypeTerm make_bool() { return TypeTerm{Kind::Bool, 0, nullptr}; }
    static TypeTerm make_str() { return TypeTerm{Kind::Str, 0, nullptr}; }
    static TypeTerm make_list(TypeTerm element) {
        return TypeTerm{Kind::List, 0,
                        std::make_shared<TypeTerm>(std::move(element))};
    }
    static TypeTerm make_var(int id) { return TypeTerm{Kind::Var, id, nullptr}; }

    bool is_ground() const {
        if (kind == Kind::Var) return false;
        if (kind == Kind::List) return elem->is_ground();
        return true;
    }
};

bool operator==(const TypeTerm& a, const TypeTerm& b);
inline bool operator!=(const TypeTerm& a, const TypeTerm& b) {
    return !(a == b);
}

// Rendered as Int, Bool, Str, List<Int>, ...
std::string type_name(const TypeTerm& t);

// Idempotent mapping from type-variable ids to terms.
class Substitution {
public:
    TypeTerm apply(const TypeTerm& t) const;
    void bind(int var_id, TypeTerm t);
    bool empty() const { return map_.empty(); }
    const std::map<int, TypeTerm>& entries() const { return map_; }

private:
    std::map<int, TypeTerm> map_;
};

// Most general unifier of t1 and t2. Throws CompileError(Type) on a
// constructor clash or occurs-check failure; spans are attached to the
// diagnostic when provided.
Substitution unify(const TypeTerm& t1, const TypeTerm& t2,
                   Span span = Span{});

}  // namespace linguine
