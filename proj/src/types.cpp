#include "linguine/types.hpp"

namespace linguine {

bool operator==(const TypeTerm& a, const TypeTerm& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case TypeTerm::Kind::Var: return a.var_id == b.var_id;
        case TypeTerm::Kind::List: return *a.elem == *b.elem;
        default: return true;
    }
}

std::string type_name(const TypeTerm& t) {
    switch (t.kind) {
        case TypeTerm::Kind::Int: return "Int";
        case TypeTerm::Kind::Bool: return "Bool";
        case TypeTerm::Kind::Str: return "Str";
        case TypeTerm::Kind::List: return "List<" + type_name(*t.elem) + ">";
        case TypeTerm::Kind::Var: return "t" + std::to_string(t.var_id);
    }
    return "?";
}

TypeTerm Substitution::apply(const TypeTerm& t) const {
    switch (t.kind) {
        case TypeTerm::Kind::Var: {
            auto it = map_.find(t.var_id);
            if (it == map_.end()) return t;
            // Bindings are kept fully applied, so one lookup suffices.
            return it->second;
        }
        case TypeTerm::Kind::List:
            return TypeTerm::make_list(apply(*t.elem));
        default:
            return t;
    }
}

void Substitution::bind(int var_id, TypeTerm t) {
    // Keep existing bindings fully applied so the map stays idempotent.
    Substitution single;
    single.map_.emplace(var_id, t);
    for (auto& [id, term] : map_) term = single.apply(term);
    map_.insert_or_assign(var_id, std::move(t));
}

namespace {

bool occurs(int var_id, const TypeTerm& t) {
    if (t.kind == TypeTerm::Kind::Var) return t.var_id == var_id;
    if (t.kind == TypeTerm::Kind::List) return occurs(var_id, *t.elem);
    return false;
}

[[noreturn]] void type_error(std::string message, Span span) {
    Diagnostic d;
    d.category = DiagCategory::Type;
    d.message = std::move(message);
    d.span = span;
    throw CompileError(std::move(d));
}

void unify_into(Substitution& subst, TypeTerm a, TypeTerm b, Span span) {
    a = subst.apply(a);
    b = subst.apply(b);
    if (a == b) return;
    if (a.kind == TypeTerm::Kind::Var) {
        if (occurs(a.var_id, b)) {
            type_error("cannot construct infinite type: " + type_name(a) +
                           " occurs in " + type_name(b),
                       span);
        }
        subst.bind(a.var_id, b);
        return;
    }
    if (b.kind == TypeTerm::Kind::Var) {
        unify_into(subst, b, a, span);
        return;
    }
    if (a.kind == TypeTerm::Kind::List && b.kind == TypeTerm::Kind::List) {
        unify_into(subst, *a.elem, *b.elem, span);
        return;
    }
    type_error("type mismatch: " + type_name(a) + " vs " + type_name(b), span);
}

}  // namespace

Substitution unify(const TypeTerm& t1, const TypeTerm& t2, Span span) {
    Substitution subst;
    unify_into(subst, t1, t2, span);
    return subst;
}

}  // namespace linguine
