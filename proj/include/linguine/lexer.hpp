#pragma once

#include <string>

#include "linguine/token.hpp"

namespace linguine {

// Lowercases keyword words outside string literals and comments. Identifier
// case and string contents are preserved; the result is byte-for-byte the
// same length as the input, so spans computed on it map onto the original.
// Throws CompileError(Lex) on an unterminated string literal.
std::string normalize(const std::string& source);

// Full lexical analysis: normalization, multi-word keyword fusion, and
// function-word removal. Throws CompileError(Lex) on malformed input.
TokenStream tokenize(const std::string& source,
                     const std::string& source_id = "<input>");

// `--emit-tokens` rendering: KIND<TAB>lexeme<TAB>line:colstart-colend.
std::string dump_tokens(const TokenStream& stream);

}  // namespace linguine
