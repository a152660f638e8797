#include <algorithm>

#include "ast_builder.hpp"

namespace reco::style::detail {
namespace {

void widen(PNode& n) {
  for (auto& c : n.children) {
    widen(c);
    n.begin = std::min(n.begin, c.begin);
    n.end = std::max(n.end, c.end);
  }
  n.end = std::max(n.begin, n.end);
}

}  // namespace

SyntaxTree flatten(PNode root, Language language) {
  widen(root);
  SyntaxTree tree;
  tree.set_language(language);
  // Preorder with explicit stack so deeply nested inputs cannot overflow.
  std::vector<std::pair<PNode*, std::int32_t>> stack{{&root, -1}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    const auto id = tree.add(std::move(node->kind), parent, node->begin, node->end,
                             std::move(node->text));
    tree.node(id).ctx = node->ctx;
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.emplace_back(&*it, static_cast<std::int32_t>(id));
    }
  }
  return tree;
}

}  // namespace reco::style::detail
