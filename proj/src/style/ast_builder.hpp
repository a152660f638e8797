#pragma once

// Parsers build a nested tree first and flatten it once parsing succeeds.

#include <stdexcept>
#include <string>
#include <vector>

#include "reco/style/syntax_tree.hpp"

namespace reco::style::detail {

struct PNode {
  std::string kind;
  std::string text;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  NameContext ctx = NameContext::kNone;
  std::vector<PNode> children;

  PNode() = default;
  PNode(std::string k, std::uint32_t b, std::uint32_t e, std::string t = {})
      : kind(std::move(k)), text(std::move(t)), begin(b), end(e) {}

  PNode& add(PNode child) {
    children.push_back(std::move(child));
    return children.back();
  }
};

// Raised by the grammar parsers; callers fall back to a flat token tree.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spans are widened to cover all children so that nesting always holds.
SyntaxTree flatten(PNode root, Language language);

}  // namespace reco::style::detail
