#include "reco/style/identifiers.hpp"

#include <cmath>
#include <optional>
#include <set>

#include "reco/error.hpp"
#include "reco/style/parse.hpp"

namespace reco::style {
namespace {

using NodeId = std::uint32_t;

// Dotted path of a receiver made only of names and attribute/field accesses.
std::optional<std::string> dotted_path(const SyntaxTree& t, NodeId id) {
  const auto& n = t.node(id);
  if (n.kind == "Name" || n.kind == "NameExpr") return n.text;
  if (n.kind == "ThisExpr" && n.children.empty()) return std::string("this");
  if ((n.kind == "Attribute" || n.kind == "FieldAccessExpr") && n.children.size() == 1) {
    auto base = dotted_path(t, n.children.front());
    if (!base) return std::nullopt;
    return *base + "." + n.text;
  }
  return std::nullopt;
}

std::optional<std::string> python_callee(const SyntaxTree& t, const SyntaxNode& call) {
  if (call.children.empty()) return std::nullopt;
  const auto callee = call.children.front();
  if (auto path = dotted_path(t, callee)) return path;
  const auto& c = t.node(callee);
  if (c.kind == "Attribute") return c.text;
  return std::nullopt;
}

std::optional<std::string> java_callee(const SyntaxTree& t, const SyntaxNode& call) {
  if (call.kind == "ObjectCreationExpr") {
    if (call.children.empty()) return std::nullopt;
    const auto& type = t.node(call.children.front());
    if (type.kind != "ClassOrInterfaceType") return std::nullopt;
    return type.text;
  }
  if (!call.children.empty() && t.node(call.children.front()).kind != "Arguments") {
    if (auto scope = dotted_path(t, call.children.front())) return *scope + "." + call.text;
  }
  return call.text;
}

// -- token-stream heuristics for fallback trees ------------------------------

const std::set<std::string, std::less<>> kPythonWords = {
    "False", "None",   "True",    "and",      "as",   "assert", "async",  "await",
    "break", "class",  "continue", "def",     "del",  "elif",   "else",   "except",
    "finally", "for",  "from",    "global",   "if",   "import", "in",     "is",
    "lambda", "nonlocal", "not",  "or",       "pass", "raise",  "return", "try",
    "while", "with",   "yield"};

const std::set<std::string, std::less<>> kJavaWords = {
    "abstract", "assert",  "boolean", "break",   "byte",    "case",      "catch",  "char",
    "class",    "continue", "default", "do",     "double",  "else",      "enum",   "extends",
    "final",    "finally", "float",   "for",     "if",      "implements", "import", "instanceof",
    "int",      "interface", "long",  "new",     "package", "private",   "protected", "public",
    "return",   "short",   "static",  "super",   "switch",  "synchronized", "this", "throw",
    "throws",   "try",     "void",    "volatile", "while",  "true",      "false",  "null", "var"};

// Words after which a `name(` is still a call rather than a declaration.
const std::set<std::string, std::less<>> kCallPrecursors = {
    "return", "new",  "throw", "else", "await", "yield", "in",    "not",    "and",
    "or",     "is",   "if",    "elif", "while", "assert", "case", "lambda", "print"};

struct Leaf {
  std::string_view kind;
  std::string_view text;
};

std::vector<Leaf> leaves(const SyntaxTree& t) {
  std::vector<Leaf> out;
  for (auto c : t.root().children) out.push_back({t.node(c).kind, t.node(c).text});
  return out;
}

bool is_op(const Leaf& l, std::string_view op) { return l.kind == "Op" && l.text == op; }

bool is_keyword(std::string_view word, Language lang) {
  return lang == Language::kPython ? kPythonWords.contains(word) : kJavaWords.contains(word);
}

bool is_assign_op(const Leaf& l) {
  if (l.kind != "Op") return false;
  static const std::set<std::string, std::less<>> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "**=", "//=", ":="};
  return kOps.contains(l.text);
}

void fallback_variables(const SyntaxTree& t, Language lang, IdentifierSet& out) {
  const auto toks = leaves(t);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& tok = toks[i];
    if (tok.kind != "Name" || is_keyword(tok.text, lang)) continue;
    if (i > 0 && is_op(toks[i - 1], ".")) continue;
    if (i + 1 < toks.size() && is_assign_op(toks[i + 1])) {
      out.add(tok.text);
      continue;
    }
    if (lang == Language::kPython && i > 0 && toks[i - 1].kind == "Name" && toks[i - 1].text == "for") {
      // for a, b in ...
      for (std::size_t j = i; j < toks.size(); ++j) {
        if (toks[j].kind == "Name" && toks[j].text == "in") break;
        if (toks[j].kind == "Name" && !is_keyword(toks[j].text, lang)) out.add(toks[j].text);
      }
    }
  }
}

void fallback_apis(const SyntaxTree& t, Language lang, IdentifierSet& out) {
  const auto toks = leaves(t);
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    const auto& tok = toks[i];
    if (tok.kind != "Name" || !is_op(toks[i + 1], "(") || is_keyword(tok.text, lang)) continue;
    std::size_t first = i;
    while (first >= 2 && is_op(toks[first - 1], ".") && toks[first - 2].kind == "Name") first -= 2;
    if (first == i && i > 0 && toks[i - 1].kind == "Name" &&
        !kCallPrecursors.contains(toks[i - 1].text)) {
      continue;  // declaration such as `def f(` or `int f(`
    }
    if (first > 0 && (is_op(toks[first - 1], ".") || is_op(toks[first - 1], ")"))) {
      out.add(tok.text);  // receiver is an expression, keep the method name
      continue;
    }
    std::string path;
    for (std::size_t j = first; j <= i; ++j) path += toks[j].text;
    out.add(path);
  }
}

}  // namespace

IdentifierSet::IdentifierSet(IdentifierRole role, std::initializer_list<std::string_view> texts)
    : role_(role) {
  for (auto t : texts) add(t);
}

void IdentifierSet::add(std::string_view text, std::size_t count) {
  if (text.empty() || count == 0) return;
  auto it = counts_.find(text);
  if (it == counts_.end()) {
    counts_.emplace(std::string(text), count);
  } else {
    it->second += count;
  }
}

std::size_t IdentifierSet::count(std::string_view text) const {
  auto it = counts_.find(text);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::string> IdentifierSet::texts() const {
  std::vector<std::string> out;
  out.reserve(counts_.size());
  for (const auto& [text, n] : counts_) out.push_back(text);
  return out;
}

IdentifierSet extract_variables(const SyntaxTree& tree, Language language) {
  IdentifierSet out(IdentifierRole::kVariable);
  if (tree.empty()) return out;
  if (tree.parse_fallback()) {
    fallback_variables(tree, language, out);
    return out;
  }
  for (const auto& n : tree.nodes()) {
    if (language == Language::kPython) {
      if ((n.kind == "Name" && n.ctx == NameContext::kStore) || n.kind == "arg" ||
          n.kind == "vararg" || n.kind == "kwarg") {
        out.add(n.text);
      }
    } else if (n.kind == "VariableDeclarator" || n.kind == "Parameter" ||
               n.kind == "PatternVariable") {
      out.add(n.text);
    }
  }
  return out;
}

IdentifierSet extract_apis(const SyntaxTree& tree, Language language) {
  IdentifierSet out(IdentifierRole::kApi);
  if (tree.empty()) return out;
  if (tree.parse_fallback()) {
    fallback_apis(tree, language, out);
    return out;
  }
  for (const auto& n : tree.nodes()) {
    std::optional<std::string> name;
    if (language == Language::kPython && n.kind == "Call") {
      name = python_callee(tree, n);
    } else if (language == Language::kJava &&
               (n.kind == "MethodCallExpr" || n.kind == "ObjectCreationExpr")) {
      name = java_callee(tree, n);
    }
    if (name) out.add(*name);
  }
  return out;
}

IdfTable::IdfTable(std::size_t document_count, std::map<std::string, std::size_t, std::less<>> df)
    : documents_(document_count), df_(std::move(df)) {
  for (const auto& [term, n] : df_) {
    if (n > documents_) throw ConfigError("document frequency of '" + term + "' exceeds corpus size");
  }
}

std::size_t IdfTable::document_frequency(std::string_view text) const {
  auto it = df_.find(text);
  return it == df_.end() ? 0 : it->second;
}

double IdfTable::weight(std::string_view text) const {
  const auto d = static_cast<double>(documents_);
  const auto df = static_cast<double>(document_frequency(text));
  return std::log((d + 1.0) / (df + 1.0)) + 1.0;
}

double IdfTable::max_weight() const { return std::log(static_cast<double>(documents_) + 1.0) + 1.0; }

IdfTable idf_weights(std::span<const IdentifierSet> corpus) {
  if (corpus.empty()) throw ConfigError("idf corpus is empty");
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : corpus) {
    for (const auto& [text, n] : doc.counts()) ++df[text];
  }
  return IdfTable(corpus.size(), std::move(df));
}

IdfTable idf_from_code(std::span<const std::string> codes, Language language) {
  if (codes.empty()) throw ConfigError("idf corpus is empty");
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& code : codes) {
    const auto tree = parse(code, language);
    std::set<std::string, std::less<>> terms;
    for (auto& t : extract_variables(tree, language).texts()) terms.insert(std::move(t));
    for (auto& t : extract_apis(tree, language).texts()) terms.insert(std::move(t));
    for (const auto& t : terms) ++df[t];
  }
  return IdfTable(codes.size(), std::move(df));
}

}  // namespace reco::style
