#include <algorithm>
#include <array>

#include "ast_builder.hpp"
#include "lexer.hpp"

namespace reco::style::detail {
namespace {

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}
bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::string_view, 30> kPyOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==",
    "!=",  "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "@=", "<>", "+",  "-",  "*",
    "/",   "%"};
constexpr std::string_view kPySingles = "@&|^~<>()[]{},:.;=";

class PythonLexer {
 public:
  explicit PythonLexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    at_line_start_ = true;
    while (true) {
      if (at_line_start_ && depth_ == 0) {
        if (!handle_indentation()) break;
      }
      if (pos_ >= src_.size()) break;
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if (c == '\n') {
        ++pos_;
        if (depth_ == 0) {
          emit(Tok::kNewline, "\n", pos_ - 1, pos_);
          at_line_start_ = true;
        }
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\\') {
        // Explicit line joining.
        std::size_t p = pos_ + 1;
        if (p < src_.size() && src_[p] == '\r') ++p;
        if (p < src_.size() && src_[p] == '\n') {
          pos_ = p + 1;
          continue;
        }
        if (p >= src_.size()) {
          pos_ = p;
          continue;
        }
        throw ParseFailure("stray backslash");
      }
      if (string_start()) {
        lex_string();
        continue;
      }
      if (ident_start(c)) {
        const auto start = pos_;
        while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        emit(Tok::kName, std::string(src_.substr(start, pos_ - start)), start, pos_);
        continue;
      }
      if (digit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                       digit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number();
        continue;
      }
      lex_operator();
    }
    if (depth_ != 0) throw ParseFailure("unbalanced brackets at end of input");
    if (!tokens_.empty() && tokens_.back().type != Tok::kNewline &&
        tokens_.back().type != Tok::kDedent && tokens_.back().type != Tok::kIndent) {
      emit(Tok::kNewline, "", pos_, pos_);
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit(Tok::kDedent, "", pos_, pos_);
    }
    emit(Tok::kEnd, "", pos_, pos_);
    return std::move(tokens_);
  }

 private:
  void emit(Tok t, std::string text, std::size_t b, std::size_t e) {
    tokens_.push_back(Token{t, std::move(text), static_cast<std::uint32_t>(b),
                            static_cast<std::uint32_t>(e)});
  }

  // Measures the next logical line's indentation. Returns false at EOF.
  bool handle_indentation() {
    while (true) {
      std::size_t col = 0;
      std::size_t p = pos_;
      while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
        col = src_[p] == '\t' ? (col / 8 + 1) * 8 : col + 1;
        ++p;
      }
      if (p >= src_.size()) {
        pos_ = p;
        return false;
      }
      if (src_[p] == '\r') {
        ++p;
        if (p >= src_.size()) {
          pos_ = p;
          return false;
        }
      }
      if (src_[p] == '\n' || src_[p] == '#') {
        // Blank or comment-only line: no indentation tokens.
        while (p < src_.size() && src_[p] != '\n') ++p;
        pos_ = p < src_.size() ? p + 1 : p;
        if (pos_ >= src_.size()) return false;
        continue;
      }
      pos_ = p;
      at_line_start_ = false;
      if (col > indents_.back()) {
        indents_.push_back(col);
        emit(Tok::kIndent, "", p, p);
      } else {
        while (col < indents_.back()) {
          indents_.pop_back();
          emit(Tok::kDedent, "", p, p);
        }
        if (col != indents_.back()) throw ParseFailure("inconsistent dedent");
      }
      return true;
    }
  }

  bool string_start() const {
    std::size_t p = pos_;
    std::size_t prefix = 0;
    while (p < src_.size() && prefix < 3 && std::string_view("rRbBuUfF").find(src_[p]) !=
                                                std::string_view::npos) {
      ++p;
      ++prefix;
    }
    return p < src_.size() && (src_[p] == '\'' || src_[p] == '"');
  }

  void lex_string() {
    const auto start = pos_;
    while (src_[pos_] != '\'' && src_[pos_] != '"') ++pos_;
    const char quote = src_[pos_];
    const bool triple = src_.substr(pos_, 3) == std::string(3, quote);
    pos_ += triple ? 3 : 1;
    while (true) {
      if (pos_ >= src_.size()) throw ParseFailure("unterminated string");
      const char ch = src_[pos_];
      if (ch == '\\') {
        pos_ += 2;  // raw strings still cannot end on an escaped quote
        continue;
      }
      if (!triple && ch == '\n') throw ParseFailure("newline in string");
      if (ch == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (src_.substr(pos_, 3) == std::string(3, quote)) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    pos_ = std::min(pos_, src_.size());
    emit(Tok::kString, std::string(src_.substr(start, pos_ - start)), start, pos_);
  }

  void lex_number() {
    const auto start = pos_;
    auto is_num_char = [](unsigned char c) {
      return digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') || c == '_' ||
             c == 'x' || c == 'X' || c == 'o' || c == 'O' || c == 'j' || c == 'J' || c == '.';
    };
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if ((c == '+' || c == '-') && pos_ > start &&
          (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E') &&
          !(src_[start] == '0' && pos_ > start + 1 && (src_[start + 1] == 'x' || src_[start + 1] == 'X'))) {
        ++pos_;
        continue;
      }
      if (!is_num_char(c)) break;
      if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') break;
      ++pos_;
    }
    emit(Tok::kNumber, std::string(src_.substr(start, pos_ - start)), start, pos_);
  }

  void lex_operator() {
    for (auto op : kPyOps) {
      if (src_.substr(pos_, op.size()) == op) {
        emit(Tok::kOp, std::string(op), pos_, pos_ + op.size());
        pos_ += op.size();
        return;
      }
    }
    const char c = src_[pos_];
    if (kPySingles.find(c) == std::string_view::npos) {
      throw ParseFailure(std::string("unexpected character '") + c + "'");
    }
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if (c == ')' || c == ']' || c == '}') {
      if (depth_ == 0) throw ParseFailure("unbalanced closing bracket");
      --depth_;
    }
    emit(Tok::kOp, std::string(1, c), pos_, pos_ + 1);
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  bool at_line_start_ = true;
  std::vector<std::size_t> indents_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> lex_python(std::string_view src) { return PythonLexer(src).run(); }

}  // namespace reco::style::detail
