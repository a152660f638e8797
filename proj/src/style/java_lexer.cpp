#include <array>

#include "ast_builder.hpp"
#include "lexer.hpp"

namespace reco::style::detail {
namespace {

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

// '>' is always its own token so that nested generics close one level at a
// time; the expression parser joins adjacent '>' tokens into shifts.
constexpr std::array<std::string_view, 29> kJavaOps = {
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==",
    "!=",   "<=",  ">=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=", "%=",
    "<<",   "(",   ")",   "{",   "}",  "[",  "]"};
constexpr std::string_view kJavaSingles = ";,.@=><!~?:+-*/&|^%";

}  // namespace

std::vector<Token> lex_java(std::string_view src) {
  std::vector<Token> out;
  auto emit = [&](Tok t, std::size_t b, std::size_t e) {
    out.push_back(Token{t, std::string(src.substr(b, e - b)), static_cast<std::uint32_t>(b),
                        static_cast<std::uint32_t>(e)});
  };
  std::size_t i = 0;
  while (i < src.size()) {
    const auto c = static_cast<unsigned char>(src[i]);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      ++i;
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (src.substr(i, 2) == "/*") {
      const auto close = src.find("*/", i + 2);
      if (close == std::string_view::npos) throw ParseFailure("unterminated comment");
      i = close + 2;
      continue;
    }
    const auto start = i;
    if (src.substr(i, 3) == "\"\"\"") {
      const auto close = src.find("\"\"\"", i + 3);
      if (close == std::string_view::npos) throw ParseFailure("unterminated text block");
      i = close + 3;
      emit(Tok::kString, start, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      ++i;
      while (true) {
        if (i >= src.size() || src[i] == '\n') throw ParseFailure("unterminated literal");
        if (src[i] == '\\') {
          i += 2;
          continue;
        }
        if (src[i] == static_cast<char>(c)) {
          ++i;
          break;
        }
        ++i;
      }
      emit(Tok::kString, start, i);
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(static_cast<unsigned char>(src[i]))) ++i;
      emit(Tok::kName, start, i);
      continue;
    }
    if (digit(c) || (c == '.' && i + 1 < src.size() && digit(static_cast<unsigned char>(src[i + 1])))) {
      const bool hex = src.substr(i, 2) == "0x" || src.substr(i, 2) == "0X";
      while (i < src.size()) {
        const auto d = static_cast<unsigned char>(src[i]);
        if ((d == '+' || d == '-') && !hex && (src[i - 1] == 'e' || src[i - 1] == 'E')) {
          ++i;
          continue;
        }
        if (!(ident_char(d) || d == '.')) break;
        if (d == '.' && i + 1 < src.size() && !digit(static_cast<unsigned char>(src[i + 1])) &&
            src[i + 1] != 'e' && src[i + 1] != 'E' && src[i + 1] != 'f' && src[i + 1] != 'd' &&
            src[i + 1] != 'F' && src[i + 1] != 'D') {
          // "1." followed by a method call or field is not part of the literal.
          if (ident_start(static_cast<unsigned char>(src[i + 1]))) break;
        }
        ++i;
      }
      emit(Tok::kNumber, start, i);
      continue;
    }
    bool matched = false;
    for (auto op : kJavaOps) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        emit(Tok::kOp, start, i);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kJavaSingles.find(static_cast<char>(c)) == std::string_view::npos) {
      throw ParseFailure(std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    ++i;
    emit(Tok::kOp, start, i);
  }
  out.push_back(Token{Tok::kEnd, "", static_cast<std::uint32_t>(src.size()),
                      static_cast<std::uint32_t>(src.size())});
  return out;
}

}  // namespace reco::style::detail
