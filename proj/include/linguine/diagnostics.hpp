#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

namespace linguine {

// Half-open byte offsets plus 1-based line/column bounds. Columns are
// inclusive on both ends so a single-character token has col == end_col.
struct Span {
    int line = 0;
    int col = 0;
    int end_line = 0;
    int end_col = 0;
    std::size_t offset = 0;
    std::size_t end_offset = 0;

    static Span at(int line, int col, int end_col, std::size_t offset,
                   std::size_t end_offset) {
        return Span{line, col, line, end_col, offset, end_offset};
    }

    bool valid() const { return line > 0; }

    // Smallest span covering both operands.
    Span to(const Span& other) const {
        if (!valid()) return other;
        if (!other.valid()) return *this;
        Span s = *this;
        if (other.offset < s.offset) {
            s.line = other.line;
            s.col = other.col;
            s.offset = other.offset;
        }
        if (other.end_offset > s.end_offset) {
            s.end_line = other.end_line;
            s.end_col = other.end_col;
            s.end_offset = other.end_offset;
        }
        return s;
    }
};

enum class DiagCategory {
    Lex,
    Parse,
    Type,
    PronounUndefined,
    PronounAmbiguous,
    Runtime,
};

const char* category_name(DiagCategory c);

// One entry of a referent trace: a candidate antecedent and where it was bound.
struct TraceEntry {
    std::string name;
    Span bound_at;
};

struct Diagnostic {
    DiagCategory category = DiagCategory::Parse;
    std::string message;
    Span span;
    std::string sentence;               // offending source line, if known
    std::vector<TraceEntry> trace;      // pronoun diagnostics only
    std::vector<std::string> notes;
    // True when a parse error was caused by running out of input; the REPL
    // uses this to keep buffering instead of reporting.
    bool incomplete_input = false;
};

class CompileError : public std::exception {
public:
    explicit CompileError(Diagnostic diag) : diag_(std::move(diag)) {}

    const Diagnostic& diagnostic() const { return diag_; }
    const char* what() const noexcept override { return diag_.message.c_str(); }

private:
    Diagnostic diag_;
};

[[noreturn]] void internal_error(const std::string& message);

}  // namespace linguine
