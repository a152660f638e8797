#include "reco/style/parse.hpp"

#include <algorithm>
#include <limits>

#include "ast_builder.hpp"
#include "lexer.hpp"
#include "parsers.hpp"
#include "reco/error.hpp"

namespace reco::style {
namespace {

constexpr int kMaxNesting = 200;

std::string dedent(std::string_view code) {
  std::size_t common = std::numeric_limits<std::size_t>::max();
  std::size_t pos = 0;
  while (pos <= code.size()) {
    auto eol = code.find('\n', pos);
    if (eol == std::string_view::npos) eol = code.size();
    const auto line = code.substr(pos, eol - pos);
    const auto first = line.find_first_not_of(" \t\r\f");
    if (first != std::string_view::npos) common = std::min(common, first);
    pos = eol + 1;
  }
  if (common == 0 || common == std::numeric_limits<std::size_t>::max()) return std::string(code);
  std::string out;
  out.reserve(code.size());
  pos = 0;
  while (pos <= code.size()) {
    auto eol = code.find('\n', pos);
    const bool last = eol == std::string_view::npos;
    if (last) eol = code.size();
    const auto line = code.substr(pos, eol - pos);
    out += line.size() >= common ? line.substr(common) : std::string_view{};
    if (!last) out += '\n';
    pos = eol + 1;
  }
  return out;
}

int max_nesting(const std::vector<detail::Token>& tokens) {
  int depth = 0;
  int deepest = 0;
  for (const auto& t : tokens) {
    if (t.type != detail::Tok::kOp || t.text.size() != 1) continue;
    const char c = t.text[0];
    if (c == '(' || c == '[' || c == '{') deepest = std::max(deepest, ++depth);
    if (c == ')' || c == ']' || c == '}') depth = std::max(0, depth - 1);
  }
  return deepest;
}

const char* leaf_kind(detail::Tok t) {
  switch (t) {
    case detail::Tok::kName:
      return "Name";
    case detail::Tok::kNumber:
      return "Number";
    case detail::Tok::kString:
      return "String";
    default:
      return "Op";
  }
}

SyntaxTree fallback_from_tokens(const std::vector<detail::Token>& tokens, std::size_t length,
                                Language language) {
  SyntaxTree tree;
  tree.set_language(language);
  tree.set_parse_fallback(true);
  tree.add("Fallback", -1, 0, static_cast<std::uint32_t>(length));
  for (const auto& t : tokens) tree.add(leaf_kind(t.type), 0, t.begin, t.end, t.text);
  return tree;
}

void check_size(const SyntaxTree& tree) {
  if (tree.size() > kMaxTreeNodes) throw SizeLimitError("snippet too large");
}

}  // namespace

SyntaxTree fallback_tree(std::string_view code, Language language) {
  auto tree = fallback_from_tokens(detail::lex_tolerant(code, language), code.size(), language);
  check_size(tree);
  return tree;
}

SyntaxTree parse(std::string_view code, Language language) {
  const std::string text = language == Language::kPython ? dedent(code) : std::string(code);
  const auto tokens = detail::lex_tolerant(text, language);
  if (max_nesting(tokens) <= kMaxNesting) {
    try {
      auto root = language == Language::kPython ? detail::parse_python_tree(text)
                                                : detail::parse_java_tree(text);
      auto tree = detail::flatten(std::move(root), language);
      check_size(tree);
      return tree;
    } catch (const detail::ParseFailure&) {
    }
  }
  auto tree = fallback_from_tokens(tokens, text.size(), language);
  check_size(tree);
  return tree;
}

}  // namespace reco::style
