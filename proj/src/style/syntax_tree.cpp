#include "reco/style/syntax_tree.hpp"

#include <stdexcept>

namespace reco::style {

std::uint32_t SyntaxTree::add(std::string kind, std::int32_t parent, std::uint32_t begin,
                              std::uint32_t end, std::string text) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  SyntaxNode n;
  n.kind = std::move(kind);
  n.text = std::move(text);
  n.begin = begin;
  n.end = end;
  n.parent = parent;
  nodes_.push_back(std::move(n));
  if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

void SyntaxTree::attach(std::uint32_t child, std::uint32_t parent) {
  auto& c = nodes_.at(child);
  if (c.parent >= 0) {
    auto& siblings = nodes_[static_cast<std::size_t>(c.parent)].children;
    std::erase(siblings, child);
  }
  c.parent = static_cast<std::int32_t>(parent);
  nodes_.at(parent).children.push_back(child);
}

std::vector<std::uint32_t> SyntaxTree::postorder() const {
  std::vector<std::uint32_t> out;
  if (nodes_.empty()) return out;
  out.reserve(nodes_.size());
  // Iterative: (node, next child index) frames.
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& kids = nodes_[id].children;
    if (next < kids.size()) {
      const auto child = kids[next++];
      stack.emplace_back(child, 0);
    } else {
      out.push_back(id);
      stack.pop_back();
    }
  }
  return out;
}

bool SyntaxTree::well_formed() const {
  if (nodes_.empty()) return true;
  if (nodes_.front().parent != -1) return false;
  const auto order = postorder();
  if (order.size() != nodes_.size()) return false;
  std::vector<bool> seen(nodes_.size(), false);
  for (auto id : order) {
    if (seen[id]) return false;
    seen[id] = true;
    const auto& n = nodes_[id];
    if (n.begin > n.end) return false;
    for (auto c : n.children) {
      const auto& k = nodes_[c];
      if (k.parent != static_cast<std::int32_t>(id)) return false;
      if (k.begin < n.begin || k.end > n.end) return false;
    }
  }
  return true;
}

std::string SyntaxTree::to_sexp(std::uint32_t id, bool with_text) const {
  const auto& n = nodes_.at(id);
  std::string out = "(" + n.kind;
  if (with_text && !n.text.empty()) out += " '" + n.text + "'";
  for (auto c : n.children) out += " " + to_sexp(c, with_text);
  out += ")";
  return out;
}

}  // namespace reco::style
