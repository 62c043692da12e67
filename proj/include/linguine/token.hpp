#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linguine/diagnostics.hpp"

namespace linguine {

enum class TokenKind {
    Keyword,
    Ident,
    Int,
    Str,
    Pronoun,
    Punct,
};

enum class Keyword {
    Let,
    Be,
    Print,
    If,
    Else,
    While,
    End,
    Add,
    To,
    In,
    Plus,
    Minus,
    Times,
    DividedBy,
    Modulo,
    Reversed,
    SumOf,
    LengthOf,
    Is,
    IsEqualTo,
    GreaterThan,
    LessThan,
    ForEach,
    EndIf,
    EndWhile,
    EndFor,
    List,
};

enum class Punct { Period, Colon, Comma, LBracket, RBracket };

const char* keyword_name(Keyword k);

struct Token {
    TokenKind kind;
    std::string lexeme;     // normalized source slice
    Span span;
    Keyword keyword = Keyword::Let;   // valid when kind == Keyword
    Punct punct = Punct::Period;      // valid when kind == Punct
    std::int64_t int_value = 0;       // valid when kind == Int
    std::string str_value;            // valid when kind == Str (unquoted)

    bool is_keyword(Keyword k) const {
        return kind == TokenKind::Keyword && keyword == k;
    }
    bool is_punct(Punct p) const {
        return kind == TokenKind::Punct && punct == p;
    }
};

struct TokenStream {
    std::vector<Token> tokens;
    std::string source_id;
};

}  // namespace linguine
