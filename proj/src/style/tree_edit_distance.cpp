#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "reco/error.hpp"
#include "reco/style/distance.hpp"

namespace reco::style {
namespace {

// Postorder view: labels and leftmost-leaf indices, both 0-based.
struct Indexed {
  std::vector<int> label;
  std::vector<int> leftmost;
  std::vector<int> keyroots;
};

Indexed index_tree(const SyntaxTree& t, TedLabels mode, std::unordered_map<std::string, int>& ids) {
  Indexed out;
  if (t.empty()) return out;
  const auto order = t.postorder();
  std::vector<int> position(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  out.label.resize(order.size());
  out.leftmost.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& n = t.node(order[i]);
    std::string key = n.kind;
    if (mode == TedLabels::kFull && !n.text.empty()) {
      key += '\x1f';
      key += n.text;
    }
    out.label[i] = ids.try_emplace(std::move(key), static_cast<int>(ids.size())).first->second;
    // Children precede their parent in postorder, so the first child's
    // leftmost leaf is already known.
    out.leftmost[i] = n.children.empty() ? static_cast<int>(i)
                                         : out.leftmost[position[n.children.front()]];
  }
  // A keyroot is the highest node having a given leftmost leaf.
  std::vector<int> highest(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) highest[out.leftmost[i]] = static_cast<int>(i);
  for (int k : highest) {
    if (k >= 0) out.keyroots.push_back(k);
  }
  std::sort(out.keyroots.begin(), out.keyroots.end());
  return out;
}

void check_size(const SyntaxTree& t) {
  if (t.size() > kMaxTreeNodes) throw SizeLimitError("snippet too large");
}

}  // namespace

std::size_t tree_edit_distance_raw(const SyntaxTree& t1, const SyntaxTree& t2, TedLabels labels) {
  check_size(t1);
  check_size(t2);
  std::unordered_map<std::string, int> ids;
  const auto a = index_tree(t1, labels, ids);
  const auto b = index_tree(t2, labels, ids);
  const auto n = a.label.size();
  const auto m = b.label.size();
  if (n == 0) return m;
  if (m == 0) return n;

  std::vector<int> td(n * m, 0);
  std::vector<int> fd((n + 1) * (m + 1), 0);
  const auto cols = m + 1;

  for (int i : a.keyroots) {
    for (int j : b.keyroots) {
      const int li = a.leftmost[i];
      const int lj = b.leftmost[j];
      const int rows_i = i - li + 2;
      const int cols_j = j - lj + 2;
      // fd(x, y): forest li..li+x-1 against lj..lj+y-1.
      auto at = [&](int x, int y) -> int& { return fd[static_cast<std::size_t>(x) * cols + y]; };
      at(0, 0) = 0;
      for (int x = 1; x < rows_i; ++x) at(x, 0) = x;
      for (int y = 1; y < cols_j; ++y) at(0, y) = y;
      for (int x = 1; x < rows_i; ++x) {
        const int di = li + x - 1;
        for (int y = 1; y < cols_j; ++y) {
          const int dj = lj + y - 1;
          const int del = at(x - 1, y) + 1;
          const int ins = at(x, y - 1) + 1;
          if (a.leftmost[di] == li && b.leftmost[dj] == lj) {
            const int rel = at(x - 1, y - 1) + (a.label[di] == b.label[dj] ? 0 : 1);
            at(x, y) = std::min({del, ins, rel});
            td[static_cast<std::size_t>(di) * m + dj] = at(x, y);
          } else {
            const int px = a.leftmost[di] - li;
            const int py = b.leftmost[dj] - lj;
            const int sub = at(px, py) + td[static_cast<std::size_t>(di) * m + dj];
            at(x, y) = std::min({del, ins, sub});
          }
        }
      }
    }
  }
  return static_cast<std::size_t>(td[(n - 1) * m + (m - 1)]);
}

double tree_edit_distance(const SyntaxTree& t1, const SyntaxTree& t2, TedLabels labels) {
  const auto longest = std::max(t1.size(), t2.size());
  if (longest == 0) return 0.0;
  const auto raw = tree_edit_distance_raw(t1, t2, labels);
  return std::min(1.0, static_cast<double>(raw) / static_cast<double>(longest));
}

}  // namespace reco::style
