#include "linguine/refanalysis.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace linguine {

bool operator==(const RefValue& a, const RefValue& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == RefValue::Kind::Ref) return a.name == b.name;
    return true;
}

namespace {

std::vector<Span> merge_sites(const std::vector<Span>& a,
                              const std::vector<Span>& b) {
    std::vector<Span> out = a;
    for (const Span& s : b) {
        bool seen = false;
        for (const Span& t : out)
            if (t.offset == s.offset && t.line == s.line) seen = true;
        if (!seen) out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const Span& x, const Span& y) { return x.offset < y.offset; });
    return out;
}

}  // namespace

RefValue join(const RefValue& a, const RefValue& b) {
    if (a == b) {
        if (a.is_ref()) {
            RefValue r = a;
            r.bind_sites = merge_sites(a.bind_sites, b.bind_sites);
            return r;
        }
        return a;
    }
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    return RefValue::top();
}

RefValue meet(const RefValue& a, const RefValue& b) {
    // The paper's table plus the idempotence correction meet(a, a) = a.
    if (a == b) return a;
    if (b.is_top()) return a;
    if (a.is_top()) return b;
    return RefValue::bottom();
}

namespace {

using ssa::BasicBlock;
using ssa::Instruction;
using ssa::Operand;
using ssa::PronounUse;
using ssa::SsaProgram;

[[noreturn]] void reject(DiagCategory category, std::string message, Span span,
                         std::vector<TraceEntry> trace) {
    Diagnostic d;
    d.category = category;
    d.message = std::move(message);
    d.span = span;
    d.trace = std::move(trace);
    throw CompileError(std::move(d));
}

class Analysis {
public:
    explicit Analysis(const SsaProgram& prog) : prog_(prog) {}

    RefReport run() {
        fixpoint();
        return collect();
    }

private:
    const SsaProgram& prog_;
    std::vector<RefValue> entry_;
    std::vector<RefValue> exit_;
    int lifts_ = 0;

    static RefValue transfer(const BasicBlock& block, RefValue value) {
        for (const Instruction& inst : block.insts) {
            if (inst.referent_binding && inst.dst) {
                value = RefValue::ref(inst.dst->base, inst.binding_site);
            }
        }
        return value;
    }

    void fixpoint() {
        std::size_t n = prog_.blocks.size();
        entry_.assign(n, RefValue::bottom());
        exit_.assign(n, RefValue::bottom());

        std::deque<int> worklist;
        std::vector<bool> queued(n, false);
        auto enqueue = [&](int b) {
            if (!queued[static_cast<std::size_t>(b)]) {
                queued[static_cast<std::size_t>(b)] = true;
                worklist.push_back(b);
            }
        };
        enqueue(0);
        std::vector<bool> visited(n, false);

        while (!worklist.empty()) {
            int b = worklist.front();
            worklist.pop_front();
            queued[static_cast<std::size_t>(b)] = false;
            auto bi = static_cast<std::size_t>(b);

            RefValue in = RefValue::bottom();
            for (int p : ssa::predecessors(prog_, b)) {
                in = join(in, exit_[static_cast<std::size_t>(p)]);
            }
            bool first = !visited[bi];
            visited[bi] = true;
            if (!first && in == entry_[bi]) continue;
            if (!first && in != entry_[bi]) ++lifts_;
            entry_[bi] = in;
            exit_[bi] = transfer(prog_.blocks[bi], in);
            auto it = prog_.succ.find(b);
            if (it != prog_.succ.end())
                for (int s : it->second) enqueue(s);
        }
    }

    // Binding sites feeding a Top value: walk predecessor exits backwards
    // collecting the conflicting Refs.
    std::vector<TraceEntry> conflict_trace(int block) const {
        std::vector<TraceEntry> trace;
        std::set<int> seen;
        std::deque<int> queue{block};
        auto add = [&](const RefValue& v) {
            if (!v.is_ref()) return;
            for (const Span& site : v.bind_sites) {
                bool dup = false;
                for (const TraceEntry& e : trace)
                    if (e.name == v.name && e.bound_at.offset == site.offset)
                        dup = true;
                if (!dup) trace.push_back({v.name, site});
            }
        };
        while (!queue.empty()) {
            int b = queue.front();
            queue.pop_front();
            if (!seen.insert(b).second) continue;
            for (int p : ssa::predecessors(prog_, b)) {
                const RefValue& v = exit_[static_cast<std::size_t>(p)];
                if (v.is_ref()) {
                    add(v);
                } else if (v.is_top()) {
                    // Top created inside p only if a join fed it; keep walking.
                    queue.push_back(p);
                }
            }
        }
        std::sort(trace.begin(), trace.end(),
                  [](const TraceEntry& a, const TraceEntry& b) {
                      return a.bound_at.offset < b.bound_at.offset;
                  });
        return trace;
    }

    RefReport collect() const {
        RefReport report;
        report.entry_lifts = lifts_;
        for (const PronounUse& use : prog_.pronoun_uses) {
            auto bi = static_cast<std::size_t>(use.block);
            RefValue value = entry_[bi];
            const BasicBlock& block = prog_.blocks[bi];
            for (int i = 0; i < use.inst_index; ++i) {
                const Instruction& inst = block.insts[static_cast<std::size_t>(i)];
                if (inst.referent_binding && inst.dst)
                    value = RefValue::ref(inst.dst->base, inst.binding_site);
            }

            const std::string& word = use.origin.word;
            Span span = use.origin.span;
            if (value.is_bottom()) {
                reject(DiagCategory::PronounUndefined,
                       "pronoun '" + word +
                           "' has no antecedent: no variable is bound on any "
                           "path to this point",
                       span, {});
            }
            if (value.is_top()) {
                std::vector<TraceEntry> trace = conflict_trace(use.block);
                std::string names;
                for (const TraceEntry& e : trace) {
                    if (!names.empty()) names += ", ";
                    names += "'" + e.name + "'";
                }
                reject(DiagCategory::PronounAmbiguous,
                       "pronoun '" + word + "' is ambiguous: it may refer to " +
                           (names.empty() ? std::string("conflicting bindings")
                                          : names),
                       span, std::move(trace));
            }
            std::vector<TraceEntry> value_trace;
            for (const Span& site : value.bind_sites)
                value_trace.push_back({value.name, site});
            if (use.origin.provisional != value.name) {
                // The most recent binding in source order differs from the
                // unique flow antecedent: the pronoun reads differently
                // depending on the path taken to reach it.
                reject(DiagCategory::PronounAmbiguous,
                       "pronoun '" + word +
                           "' is ambiguous: the most recent binding is '" +
                           use.origin.provisional + "', but only '" +
                           value.name + "' is bound on every path to this "
                           "point",
                       span, std::move(value_trace));
            }
            if (!use.resolved) {
                // The analysis sees a unique referent but lowering found no
                // definition covering every path (e.g. the only binding sits
                // inside a loop that may not run).
                reject(DiagCategory::PronounUndefined,
                       "pronoun '" + word + "' resolves to '" + value.name +
                           "', which may be unbound when this point is "
                           "reached",
                       span, std::move(value_trace));
            }
            if (use.resolved_name.base != value.name) {
                internal_error("referent analysis chose '" + value.name +
                               "' but lowering bound '" +
                               use.resolved_name.base + "'");
            }
            RefSite site;
            site.span = span;
            site.word = word;
            site.referent = value.name;
            site.bound_at = value.bind_sites;
            report.sites.push_back(std::move(site));
        }
        std::sort(report.sites.begin(), report.sites.end(),
                  [](const RefSite& a, const RefSite& b) {
                      return a.span.offset < b.span.offset;
                  });
        return report;
    }
};

}  // namespace

RefReport analyze(const ssa::SsaProgram& prog) { return Analysis(prog).run(); }

std::string dump_refs(const RefReport& report) {
    std::ostringstream out;
    for (const RefSite& s : report.sites) {
        out << s.span.line << ':' << s.span.col << "  " << s.word << " -> "
            << s.referent << " (bound at line";
        if (s.bound_at.size() > 1) out << 's';
        for (std::size_t i = 0; i < s.bound_at.size(); ++i) {
            out << (i == 0 ? " " : ", ") << s.bound_at[i].line;
        }
        out << ")\n";
    }
    return out.str();
}

}  // namespace linguine
