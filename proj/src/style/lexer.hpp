#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"

namespace reco::style::detail {

enum class Tok : std::uint8_t {
  kName,
  kNumber,
  kString,
  kOp,
  kNewline,
  kIndent,
  kDedent,
  kEnd,
};

struct Token {
  Tok type;
  std::string text;
  std::uint32_t begin;
  std::uint32_t end;
};

// Python tokens with NEWLINE/INDENT/DEDENT structure. Throws ParseFailure on
// lexical errors (unterminated strings, bad dedents, stray characters).
std::vector<Token> lex_python(std::string_view src);

// Java tokens (comments dropped). Throws ParseFailure on lexical errors.
std::vector<Token> lex_java(std::string_view src);

// Never fails: names, numbers, strings and single operators, comments dropped.
// Used for the fallback tree and for n-gram metrics.
std::vector<Token> lex_tolerant(std::string_view src, Language language);

}  // namespace reco::style::detail
