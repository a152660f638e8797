#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"

namespace reco::style {

// Maximum node count accepted by parse() and tree_edit_distance().
inline constexpr std::size_t kMaxTreeNodes = 5000;

enum class NameContext : std::uint8_t { kNone, kLoad, kStore, kDel };

struct SyntaxNode {
  std::string kind;           // syntactic category, e.g. "Assign", "Name", "MethodInvocation"
  std::string text;           // identifier / literal / operator text where meaningful
  std::uint32_t begin = 0;    // byte span [begin, end) in the source
  std::uint32_t end = 0;
  std::int32_t parent = -1;
  NameContext ctx = NameContext::kNone;
  std::vector<std::uint32_t> children;
};

// Rooted ordered tree stored as a flat node array; node 0 is the root.
class SyntaxTree {
 public:
  SyntaxTree() = default;

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const SyntaxNode& node(std::uint32_t id) const { return nodes_.at(id); }
  SyntaxNode& node(std::uint32_t id) { return nodes_.at(id); }
  const SyntaxNode& root() const { return nodes_.front(); }
  const std::vector<SyntaxNode>& nodes() const { return nodes_; }

  bool parse_fallback() const { return parse_fallback_; }
  void set_parse_fallback(bool v) { parse_fallback_ = v; }
  Language language() const { return language_; }
  void set_language(Language lang) { language_ = lang; }

  // Appends a node; `parent` < 0 only for the root.
  std::uint32_t add(std::string kind, std::int32_t parent, std::uint32_t begin, std::uint32_t end,
                    std::string text = {});
  // Re-parents an existing subtree root under `parent` (appended last).
  void attach(std::uint32_t child, std::uint32_t parent);

  // Nodes in postorder (children left to right, then the node).
  std::vector<std::uint32_t> postorder() const;

  // True when spans nest inside their parents and each node is reachable once.
  bool well_formed() const;

  // S-expression of node kinds, mainly for tests and debugging.
  std::string to_sexp(std::uint32_t id = 0, bool with_text = false) const;

 private:
  std::vector<SyntaxNode> nodes_;
  bool parse_fallback_ = false;
  Language language_ = Language::kPython;
};

}  // namespace reco::style
