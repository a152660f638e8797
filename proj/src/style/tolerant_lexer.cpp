#include <array>

#include "lexer.hpp"

namespace reco::style::detail {
namespace {

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::string_view, 30> kOps = {
    ">>>=", "**=", "//=", ">>=", "<<=", "...", "->", ":=", "::", "**", "//", "<<", ">>", "<=", ">=",
    "==",   "!=",  "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "++", "--", "&&", "||", "@="};

}  // namespace

std::vector<Token> lex_tolerant(std::string_view src, Language language) {
  const bool python = language == Language::kPython;
  std::vector<Token> out;
  auto emit = [&](Tok t, std::size_t b, std::size_t e) {
    out.push_back(Token{t, std::string(src.substr(b, e - b)), static_cast<std::uint32_t>(b),
                        static_cast<std::uint32_t>(e)});
  };
  std::size_t i = 0;
  while (i < src.size()) {
    const auto c = static_cast<unsigned char>(src[i]);
    if (c <= ' ') {
      ++i;
      continue;
    }
    if ((python && c == '#') || (!python && src.substr(i, 2) == "//")) {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (!python && src.substr(i, 2) == "/*") {
      const auto close = src.find("*/", i + 2);
      i = close == std::string_view::npos ? src.size() : close + 2;
      continue;
    }
    const auto start = i;
    if (c == '"' || c == '\'') {
      const std::string triple(3, static_cast<char>(c));
      if (src.substr(i, 3) == triple) {
        const auto close = src.find(triple, i + 3);
        i = close == std::string_view::npos ? src.size() : close + 3;
      } else {
        ++i;
        while (i < src.size() && src[i] != '\n' && src[i] != static_cast<char>(c)) {
          i += src[i] == '\\' ? 2 : 1;
        }
        if (i < src.size() && src[i] == static_cast<char>(c)) ++i;
        i = std::min(i, src.size());
      }
      emit(Tok::kString, start, i);
      continue;
    }
    if (ident_start(c)) {
      while (i < src.size() && ident_char(static_cast<unsigned char>(src[i]))) ++i;
      // Python string prefixes such as f"..." or rb'...'.
      if (python && i < src.size() && (src[i] == '"' || src[i] == '\'') && i - start <= 2 &&
          src.substr(start, i - start).find_first_not_of("rRbBuUfF") == std::string_view::npos) {
        const char q = src[i];
        const std::string triple(3, q);
        if (src.substr(i, 3) == triple) {
          const auto close = src.find(triple, i + 3);
          i = close == std::string_view::npos ? src.size() : close + 3;
        } else {
          ++i;
          while (i < src.size() && src[i] != '\n' && src[i] != q) i += src[i] == '\\' ? 2 : 1;
          if (i < src.size() && src[i] == q) ++i;
          i = std::min(i, src.size());
        }
        emit(Tok::kString, start, i);
        continue;
      }
      emit(Tok::kName, start, i);
      continue;
    }
    if (digit(c)) {
      while (i < src.size() && (ident_char(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      emit(Tok::kNumber, start, i);
      continue;
    }
    std::size_t width = 1;
    for (auto op : kOps) {
      if (src.substr(i, op.size()) == op) {
        width = op.size();
        break;
      }
    }
    i += width;
    emit(Tok::kOp, start, i);
  }
  return out;
}

}  // namespace reco::style::detail
