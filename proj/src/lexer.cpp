#include "linguine/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace linguine {

namespace {

bool is_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) { return is_letter(c) || is_digit(c) || c == '_'; }

std::string lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

const std::map<std::string, Keyword>& single_keywords() {
    static const std::map<std::string, Keyword> table = {
        {"let", Keyword::Let},         {"be", Keyword::Be},
        {"print", Keyword::Print},     {"if", Keyword::If},
        {"else", Keyword::Else},       {"while", Keyword::While},
        {"end", Keyword::End},         {"add", Keyword::Add},
        {"to", Keyword::To},           {"in", Keyword::In},
        {"plus", Keyword::Plus},       {"minus", Keyword::Minus},
        {"times", Keyword::Times},     {"modulo", Keyword::Modulo},
        {"reversed", Keyword::Reversed},
        {"is", Keyword::Is},           {"list", Keyword::List},
    };
    return table;
}

bool is_pronoun_word(const std::string& w) {
    return w == "it" || w == "them" || w == "this" || w == "that";
}

bool is_keyword_like(const std::string& w) {
    // Words that take part in keyword phrases but are not keywords alone.
    static const std::array<const char*, 8> phrase_parts = {
        "sum", "length", "of", "divided", "by",
        "greater", "less", "equal"};
    if (single_keywords().count(w)) return true;
    if (is_pronoun_word(w)) return true;
    if (w == "the" || w == "a" || w == "an" || w == "for" || w == "each")
        return true;
    for (const char* p : phrase_parts)
        if (w == p) return true;
    return false;
}

struct PhraseRule {
    std::array<const char*, 3> words;  // unused slots are nullptr
    int length;
    Keyword fused;
};

// Longest phrases first; matching scans this list in order.
const std::array<PhraseRule, 12>& phrase_rules() {
    static const std::array<PhraseRule, 12> rules = {{
        {{"is", "greater", "than"}, 3, Keyword::GreaterThan},
        {{"is", "less", "than"}, 3, Keyword::LessThan},
        {{"is", "equal", "to"}, 3, Keyword::IsEqualTo},
        {{"greater", "than", nullptr}, 2, Keyword::GreaterThan},
        {{"less", "than", nullptr}, 2, Keyword::LessThan},
        {{"sum", "of", nullptr}, 2, Keyword::SumOf},
        {{"length", "of", nullptr}, 2, Keyword::LengthOf},
        {{"divided", "by", nullptr}, 2, Keyword::DividedBy},
        {{"for", "each", nullptr}, 2, Keyword::ForEach},
        {{"end", "if", nullptr}, 2, Keyword::EndIf},
        {{"end", "while", nullptr}, 2, Keyword::EndWhile},
        {{"end", "for", nullptr}, 2, Keyword::EndFor},
    }};
    return rules;
}

[[noreturn]] void lex_error(std::string message, Span span) {
    Diagnostic d;
    d.category = DiagCategory::Lex;
    d.message = std::move(message);
    d.span = span;
    throw CompileError(std::move(d));
}

// Raw scanner output: words, literals and punctuation with spans.
// Comments and whitespace are dropped here.
struct RawToken {
    enum class Kind { Word, Int, Str, Punct } kind;
    std::string text;   // word text (normalized), digits, or string contents
    Span span;
};

class Scanner {
public:
    explicit Scanner(const std::string& text) : text_(text) {}

    std::vector<RawToken> scan() {
        std::vector<RawToken> out;
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '\n') {
                advance_line();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '"') {
                out.push_back(scan_string());
            } else if (is_digit(c)) {
                out.push_back(scan_int());
            } else if (is_letter(c)) {
                out.push_back(scan_word());
            } else if (c == '_') {
                lex_error("identifiers must start with a letter",
                          here(1));
            } else {
                out.push_back(scan_punct());
            }
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() {
        ++pos_;
        ++col_;
    }
    void advance_line() {
        ++pos_;
        ++line_;
        col_ = 1;
    }
    Span here(int width) const {
        return Span::at(line_, col_, col_ + width - 1, pos_, pos_ + width);
    }

    RawToken scan_string() {
        int start_line = line_, start_col = col_;
        std::size_t start = pos_;
        advance();  // opening quote
        std::string value;
        while (!at_end() && peek() != '"' && peek() != '\n') {
            value += peek();
            advance();
        }
        if (at_end() || peek() == '\n') {
            lex_error("unterminated string literal",
                      Span::at(start_line, start_col, col_ - 1, start, pos_));
        }
        advance();  // closing quote
        Span span = Span::at(start_line, start_col, col_ - 1, start, pos_);
        return RawToken{RawToken::Kind::Str,
                        text_.substr(start, pos_ - start), span};
    }

    RawToken scan_int() {
        int start_col = col_;
        std::size_t start = pos_;
        while (!at_end() && is_digit(peek())) advance();
        if (!at_end() && (is_letter(peek()) || peek() == '_')) {
            lex_error("malformed number: identifiers must start with a letter",
                      Span::at(line_, start_col, col_, start, pos_ + 1));
        }
        Span span = Span::at(line_, start_col, col_ - 1, start, pos_);
        return RawToken{RawToken::Kind::Int, text_.substr(start, pos_ - start),
                        span};
    }

    RawToken scan_word() {
        int start_col = col_;
        std::size_t start = pos_;
        while (!at_end() && is_word_char(peek())) advance();
        std::string word = text_.substr(start, pos_ - start);
        Span span = Span::at(line_, start_col, col_ - 1, start, pos_);
        if (word.size() > 256) {
            lex_error("identifier exceeds 256 bytes", span);
        }
        return RawToken{RawToken::Kind::Word, std::move(word), span};
    }

    RawToken scan_punct() {
        char c = peek();
        Span span = here(1);
        if (c != '.' && c != ':' && c != ',' && c != '[' && c != ']') {
            lex_error(std::string("unknown punctuation '") + c + "'", span);
        }
        advance();
        return RawToken{RawToken::Kind::Punct, std::string(1, c), span};
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::int64_t parse_int_literal(const RawToken& raw) {
    // Fits in signed 64-bit; literals are unsigned digit runs.
    std::int64_t value = 0;
    for (char c : raw.text) {
        int digit = c - '0';
        if (value > (INT64_MAX - digit) / 10) {
            lex_error("integer literal does not fit in 64 bits", raw.span);
        }
        value = value * 10 + digit;
    }
    return value;
}

}  // namespace

const char* keyword_name(Keyword k) {
    switch (k) {
        case Keyword::Let: return "let";
        case Keyword::Be: return "be";
        case Keyword::Print: return "print";
        case Keyword::If: return "if";
        case Keyword::Else: return "else";
        case Keyword::While: return "while";
        case Keyword::End: return "end";
        case Keyword::Add: return "add";
        case Keyword::To: return "to";
        case Keyword::In: return "in";
        case Keyword::Plus: return "plus";
        case Keyword::Minus: return "minus";
        case Keyword::Times: return "times";
        case Keyword::DividedBy: return "divided by";
        case Keyword::Modulo: return "modulo";
        case Keyword::Reversed: return "reversed";
        case Keyword::SumOf: return "sum of";
        case Keyword::LengthOf: return "length of";
        case Keyword::Is: return "is";
        case Keyword::IsEqualTo: return "is equal to";
        case Keyword::GreaterThan: return "greater than";
        case Keyword::LessThan: return "less than";
        case Keyword::ForEach: return "for each";
        case Keyword::EndIf: return "end if";
        case Keyword::EndWhile: return "end while";
        case Keyword::EndFor: return "end for";
        case Keyword::List: return "list";
    }
    return "?";
}

const char* category_name(DiagCategory c) {
    switch (c) {
        case DiagCategory::Lex: return "lex";
        case DiagCategory::Parse: return "parse";
        case DiagCategory::Type: return "type";
        case DiagCategory::PronounUndefined: return "pronoun-undefined";
        case DiagCategory::PronounAmbiguous: return "pronoun-ambiguous";
        case DiagCategory::Runtime: return "runtime";
    }
    return "?";
}

void internal_error(const std::string& message) {
    throw std::logic_error("internal error: " + message);
}

std::string normalize(const std::string& source) {
    std::string out = source;
    std::size_t pos = 0;
    int line = 1, col = 1;
    while (pos < out.size()) {
        char c = out[pos];
        if (c == '\n') {
            ++pos;
            ++line;
            col = 1;
        } else if (c == '#') {
            while (pos < out.size() && out[pos] != '\n') ++pos, ++col;
        } else if (c == '"') {
            int start_line = line, start_col = col;
            std::size_t start = pos;
            ++pos, ++col;
            while (pos < out.size() && out[pos] != '"' && out[pos] != '\n')
                ++pos, ++col;
            if (pos >= out.size() || out[pos] == '\n') {
                lex_error("unterminated string literal",
                          Span::at(start_line, start_col, col - 1, start, pos));
            }
            ++pos, ++col;  // closing quote
        } else if (is_letter(c)) {
            std::size_t start = pos;
            while (pos < out.size() && is_word_char(out[pos])) ++pos, ++col;
            std::string word = out.substr(start, pos - start);
            std::string folded = lower(word);
            if (folded != word && is_keyword_like(folded)) {
                std::copy(folded.begin(), folded.end(), out.begin() + start);
            }
        } else {
            ++pos;
            ++col;
        }
    }
    return out;
}

TokenStream tokenize(const std::string& source, const std::string& source_id) {
    std::string normalized = normalize(source);
    std::vector<RawToken> raw = Scanner(normalized).scan();

    TokenStream stream;
    stream.source_id = source_id;

    auto word_at = [&](std::size_t i) -> const std::string* {
        if (i >= raw.size() || raw[i].kind != RawToken::Kind::Word)
            return nullptr;
        return &raw[i].text;
    };

    std::size_t i = 0;
    while (i < raw.size()) {
        const RawToken& r = raw[i];
        switch (r.kind) {
            case RawToken::Kind::Int: {
                Token t;
                t.kind = TokenKind::Int;
                t.lexeme = r.text;
                t.span = r.span;
                t.int_value = parse_int_literal(r);
                stream.tokens.push_back(std::move(t));
                ++i;
                break;
            }
            case RawToken::Kind::Str: {
                Token t;
                t.kind = TokenKind::Str;
                t.lexeme = r.text;
                t.span = r.span;
                t.str_value = r.text.substr(1, r.text.size() - 2);
                stream.tokens.push_back(std::move(t));
                ++i;
                break;
            }
            case RawToken::Kind::Punct: {
                Token t;
                t.kind = TokenKind::Punct;
                t.lexeme = r.text;
                t.span = r.span;
                switch (r.text[0]) {
                    case '.': t.punct = Punct::Period; break;
                    case ':': t.punct = Punct::Colon; break;
                    case ',': t.punct = Punct::Comma; break;
                    case '[': t.punct = Punct::LBracket; break;
                    case ']': t.punct = Punct::RBracket; break;
                }
                stream.tokens.push_back(std::move(t));
                ++i;
                break;
            }
            case RawToken::Kind::Word: {
                // Phrase fusion runs before function-word removal, so the
                // "of" in "sum of" is consumed here and never dropped.
                const PhraseRule* match = nullptr;
                for (const PhraseRule& rule : phrase_rules()) {
                    bool ok = true;
                    for (int k = 0; k < rule.length; ++k) {
                        const std::string* w = word_at(i + k);
                        if (!w || *w != rule.words[k]) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        match = &rule;
                        break;
                    }
                }
                if (match) {
                    const RawToken& first = raw[i];
                    const RawToken& last = raw[i + match->length - 1];
                    Token t;
                    t.kind = TokenKind::Keyword;
                    t.lexeme = normalized.substr(
                        first.span.offset,
                        last.span.end_offset - first.span.offset);
                    t.span = first.span.to(last.span);
                    t.keyword = match->fused;
                    stream.tokens.push_back(std::move(t));
                    i += match->length;
                    break;
                }
                const std::string& w = r.text;
                if (w == "the" || w == "a" || w == "an" || w == "of") {
                    ++i;  // function word
                    break;
                }
                if (w == "list" && i + 1 < raw.size() &&
                    raw[i + 1].kind == RawToken::Kind::Punct &&
                    raw[i + 1].text == "[") {
                    ++i;  // "the list [...]" noun
                    break;
                }
                if (is_pronoun_word(w)) {
                    Token t;
                    t.kind = TokenKind::Pronoun;
                    t.lexeme = w;
                    t.span = r.span;
                    stream.tokens.push_back(std::move(t));
                    ++i;
                    break;
                }
                auto it = single_keywords().find(w);
                if (it != single_keywords().end()) {
                    Token t;
                    t.kind = TokenKind::Keyword;
                    t.lexeme = w;
                    t.span = r.span;
                    t.keyword = it->second;
                    stream.tokens.push_back(std::move(t));
                    ++i;
                    break;
                }
                if (w == "for" || w == "each") {
                    lex_error("'" + w + "' is only valid in 'for each'",
                              r.span);
                }
                Token t;
                t.kind = TokenKind::Ident;
                t.lexeme = w;
                t.span = r.span;
                stream.tokens.push_back(std::move(t));
                ++i;
                break;
            }
        }
    }
    return stream;
}

std::string dump_tokens(const TokenStream& stream) {
    std::ostringstream out;
    for (const Token& t : stream.tokens) {
        const char* kind = "?";
        switch (t.kind) {
            case TokenKind::Keyword: kind = "KEYWORD"; break;
            case TokenKind::Ident: kind = "IDENT"; break;
            case TokenKind::Int: kind = "INT"; break;
            case TokenKind::Str: kind = "STR"; break;
            case TokenKind::Pronoun: kind = "PRONOUN"; break;
            case TokenKind::Punct: kind = "PUNCT"; break;
        }
        out << kind << '\t' << t.lexeme << '\t' << t.span.line << ':'
            << t.span.col << '-' << t.span.end_col << '\n';
    }
    return out.str();
}

}  // namespace linguine
