#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "reco/style/metrics.hpp"
#include "reco/style/parse.hpp"

namespace reco::style {
namespace {

constexpr double kKeywordWeight = 5.0;

const std::set<std::string, std::less<>> kPythonKeywords = {
    "False", "None",   "True",    "and",      "as",   "assert", "async",  "await",
    "break", "class",  "continue", "def",     "del",  "elif",   "else",   "except",
    "finally", "for",  "from",    "global",   "if",   "import", "in",     "is",
    "lambda", "nonlocal", "not",  "or",       "pass", "raise",  "return", "try",
    "while", "with",   "yield"};

const std::set<std::string, std::less<>> kJavaKeywords = {
    "abstract", "assert",   "boolean",  "break",     "byte",      "case",      "catch",
    "char",     "class",    "const",    "continue",  "default",   "do",        "double",
    "else",     "enum",     "extends",  "final",     "finally",   "float",     "for",
    "goto",     "if",       "implements", "import",  "instanceof", "int",      "interface",
    "long",     "native",   "new",      "package",   "private",   "protected", "public",
    "return",   "short",    "static",   "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",    "throws",   "transient", "try",       "void",      "volatile",
    "while",    "true",     "false",    "null"};

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> grams(const std::vector<std::string>& toks, std::size_t n) {
  std::map<Gram, std::size_t> out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    ++out[Gram(toks.begin() + static_cast<std::ptrdiff_t>(i),
               toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

// BLEU-4 whose unigram precision weighs keywords five times as much.
double weighted_bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                     Language language) {
  if (hyp.empty()) return 0.0;
  const auto& keywords = language == Language::kPython ? kPythonKeywords : kJavaKeywords;
  auto weight = [&](const std::string& tok) { return keywords.contains(tok) ? kKeywordWeight : 1.0; };
  double log_sum = 0.0;
  {
    const auto h = grams(hyp, 1);
    const auto r = grams(ref, 1);
    double matched = 0.0;
    double total = 0.0;
    for (const auto& [g, count] : h) {
      const double w = weight(g.front());
      total += w * static_cast<double>(count);
      auto it = r.find(g);
      if (it != r.end()) matched += w * static_cast<double>(std::min(count, it->second));
    }
    if (matched == 0.0) return 0.0;
    log_sum += std::log(matched / total);
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto h = grams(hyp, n);
    const auto r = grams(ref, n);
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [g, count] : h) {
      total += count;
      auto it = r.find(g);
      if (it != r.end()) matched += std::min(count, it->second);
    }
    log_sum += std::log((static_cast<double>(matched) + 1.0) / (static_cast<double>(total) + 1.0));
  }
  const auto c = static_cast<double>(hyp.size());
  const auto rl = static_cast<double>(ref.size());
  const double bp = c > rl ? 1.0 : std::exp(1.0 - rl / c);
  return std::clamp(bp * std::exp(log_sum / 4.0), 0.0, 1.0);
}

// Multiset of kind-only s-expressions, one per node.
std::map<std::string, std::size_t> subtrees(const SyntaxTree& t) {
  std::vector<std::string> sexp(t.size());
  std::map<std::string, std::size_t> out;
  for (auto id : t.postorder()) {
    const auto& n = t.node(id);
    std::string s = "(" + n.kind;
    for (auto c : n.children) s += " " + sexp[c];
    s += ")";
    ++out[s];
    sexp[id] = std::move(s);
  }
  return out;
}

double clipped_recall(const std::map<std::string, std::size_t>& hyp,
                      const std::map<std::string, std::size_t>& ref) {
  std::size_t matched = 0;
  std::size_t total = 0;
  for (const auto& [key, count] : ref) {
    total += count;
    auto it = hyp.find(key);
    if (it != hyp.end()) matched += std::min(count, it->second);
  }
  return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

// Data-flow edges with variables renamed by order of first appearance.
class DataFlow {
 public:
  DataFlow(const SyntaxTree& t, Language lang) : t_(t), lang_(lang) {
    if (!t.empty() && !t.parse_fallback()) visit(0);
  }

  std::map<std::string, std::size_t> edges() const {
    std::map<std::string, std::size_t> out;
    for (const auto& e : edges_) ++out[e];
    return out;
  }

 private:
  bool is_store_name(const SyntaxNode& n) const {
    if (lang_ == Language::kPython) return n.kind == "Name" && n.ctx == NameContext::kStore;
    return n.kind == "VariableDeclarator" || n.kind == "Parameter" || n.kind == "PatternVariable";
  }
  bool is_load_name(const SyntaxNode& n) const {
    if (lang_ == Language::kPython) return n.kind == "Name" && n.ctx != NameContext::kStore;
    return n.kind == "NameExpr";
  }

  void collect(std::uint32_t id, bool stores, std::vector<std::string>& out) const {
    const auto& n = t_.node(id);
    if (stores ? is_store_name(n) : is_load_name(n)) out.push_back(n.text);
    for (auto c : n.children) collect(c, stores, out);
  }

  const std::string& alias(const std::string& name) {
    auto it = names_.find(name);
    if (it == names_.end()) it = names_.emplace(name, "var_" + std::to_string(names_.size())).first;
    return it->second;
  }

  void computed_from(const std::vector<std::string>& targets, std::vector<std::string> sources) {
    std::vector<std::string> renamed;
    for (const auto& s : sources) renamed.push_back(alias(s));
    std::sort(renamed.begin(), renamed.end());
    renamed.erase(std::unique(renamed.begin(), renamed.end()), renamed.end());
    std::string tail;
    for (const auto& s : renamed) tail += "," + s;
    for (const auto& target : targets) {
      edges_.push_back(alias(target) + "|computedFrom|" + tail);
      defined_.insert(target);
    }
  }

  // Splits a node's children into binding targets and value sources.
  bool binding_parts(const SyntaxNode& n, std::vector<std::uint32_t>& targets,
                     std::vector<std::uint32_t>& sources, std::vector<std::uint32_t>& rest) const {
    if (lang_ == Language::kPython) {
      static const std::set<std::string, std::less<>> kBinders = {
          "Assign", "AugAssign", "AnnAssign", "For", "AsyncFor", "comprehension", "NamedExpr",
          "withitem"};
      if (!kBinders.contains(n.kind)) return false;
      for (auto c : n.children) {
        const auto& k = t_.node(c);
        if (k.kind == "body" || k.kind == "orelse") {
          rest.push_back(c);
        } else if (k.ctx == NameContext::kStore) {
          targets.push_back(c);
        } else {
          sources.push_back(c);
        }
      }
      return !targets.empty();
    }
    if (n.kind == "VariableDeclarator") {
      targets.push_back(0xffffffffU);  // the declarator itself
      for (auto c : n.children) sources.push_back(c);
      return true;
    }
    if (n.kind == "AssignExpr" && n.children.size() == 2 &&
        t_.node(n.children[0]).kind == "NameExpr") {
      targets.push_back(n.children[0]);
      sources.push_back(n.children[1]);
      return true;
    }
    return false;
  }

  void visit(std::uint32_t id) {
    const auto& n = t_.node(id);
    std::vector<std::uint32_t> targets, sources, rest;
    if (binding_parts(n, targets, sources, rest)) {
      std::vector<std::string> reads;
      for (auto s : sources) {
        collect(s, false, reads);
        visit(s);
      }
      std::vector<std::string> written;
      for (auto tgt : targets) {
        if (tgt == 0xffffffffU) {
          written.push_back(n.text);
        } else if (lang_ == Language::kJava) {
          written.push_back(t_.node(tgt).text);
        } else {
          collect(tgt, true, written);
          visit_loads_only(tgt);
        }
      }
      computed_from(written, std::move(reads));
      for (auto r : rest) visit(r);
      return;
    }
    if (is_store_name(n)) {
      alias(n.text);
      defined_.insert(n.text);
    } else if (is_load_name(n) && defined_.contains(n.text)) {
      const auto& a = alias(n.text);
      edges_.push_back(a + "|comesFrom|," + a);
    }
    for (auto c : n.children) visit(c);
  }

  // Loads inside a target, e.g. the `self` of `self.x = ...`.
  void visit_loads_only(std::uint32_t id) {
    const auto& n = t_.node(id);
    if (is_load_name(n) && defined_.contains(n.text)) {
      const auto& a = alias(n.text);
      edges_.push_back(a + "|comesFrom|," + a);
    }
    for (auto c : n.children) visit_loads_only(c);
  }

  const SyntaxTree& t_;
  Language lang_;
  std::unordered_map<std::string, std::string> names_;
  std::set<std::string> defined_;
  std::vector<std::string> edges_;
};

}  // namespace

CodeBleuBreakdown codebleu_breakdown(std::string_view hyp, std::string_view ref, Language language) {
  CodeBleuBreakdown out;
  const auto hyp_toks = code_tokens(hyp, language);
  const auto ref_toks = code_tokens(ref, language);
  if (!ref_toks.empty()) {
    out.ngram = bleu_tokens(hyp_toks, ref_toks);
    out.weighted_ngram = weighted_bleu(hyp_toks, ref_toks, language);
    const auto hyp_tree = parse(hyp, language);
    const auto ref_tree = parse(ref, language);
    out.syntax = clipped_recall(subtrees(hyp_tree), subtrees(ref_tree));
    const auto ref_flow = DataFlow(ref_tree, language).edges();
    if (!ref_flow.empty()) {
      out.dataflow = clipped_recall(DataFlow(hyp_tree, language).edges(), ref_flow);
    }
  }
  double sum = 0.0;
  int present = 0;
  for (const auto& c : {out.ngram, out.weighted_ngram, out.syntax, out.dataflow}) {
    if (c) {
      sum += *c;
      ++present;
    }
  }
  if (present == 0) {
    out.score = hyp_toks.empty() ? 1.0 : 0.0;
  } else {
    out.score = std::clamp(sum / present, 0.0, 1.0);
  }
  return out;
}

double codebleu(std::string_view hyp, std::string_view ref, Language language) {
  return codebleu_breakdown(hyp, ref, language).score;
}

}  // namespace reco::style
