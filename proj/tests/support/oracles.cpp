#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

namespace reco::testing {

std::size_t brute_levenshtein(std::string_view a, std::string_view b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                                std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    std::size_t best = std::min(go(i + 1, j), go(i, j + 1)) + 1;
    best = std::min(best, go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1));
    memo[{i, j}] = best;
    return best;
  };
  return go(0, 0);
}

std::vector<std::string> all_strings(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

namespace {

// Shapes as parent arrays in preorder. A forest of k nodes hanging under
// `parent` is a first tree of size s followed by a forest of k - s.
void forests(std::size_t k, int parent, std::vector<int>& cur,
             const std::function<void()>& emit) {
  if (k == 0) {
    emit();
    return;
  }
  for (std::size_t s = 1; s <= k; ++s) {
    const int root = static_cast<int>(cur.size());
    cur.push_back(parent);
    forests(s - 1, root, cur, [&] { forests(k - s, parent, cur, emit); });
    cur.pop_back();
  }
}

std::vector<std::vector<int>> shapes(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur{-1};
  forests(n - 1, 0, cur, [&] { out.push_back(cur); });
  return out;
}

std::vector<std::vector<bool>> ancestry(const TinyTree& t) {
  std::vector<std::vector<bool>> anc(t.size(), std::vector<bool>(t.size(), false));
  for (std::size_t v = 0; v < t.size(); ++v) {
    for (int p = t.parent[v]; p >= 0; p = t.parent[static_cast<std::size_t>(p)]) {
      anc[static_cast<std::size_t>(p)][v] = true;
    }
  }
  return anc;
}

}  // namespace

std::vector<TinyTree> all_labeled_trees(std::size_t max_nodes, std::string_view labels) {
  std::vector<TinyTree> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (const auto& shape : shapes(n)) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < n; ++i) combos *= labels.size();
      for (std::size_t c = 0; c < combos; ++c) {
        TinyTree t;
        t.parent = shape;
        std::size_t code = c;
        for (std::size_t i = 0; i < n; ++i) {
          t.label.push_back(labels[code % labels.size()]);
          code /= labels.size();
        }
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

style::SyntaxTree to_syntax_tree(const TinyTree& t) {
  style::SyntaxTree out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.add(std::string(1, t.label[i]), t.parent[i], 0, 0);
  }
  return out;
}

std::size_t exhaustive_ted(const TinyTree& a, const TinyTree& b) {
  // In preorder numbering, i1 < i2 holds exactly when i1 is an ancestor of
  // i2 or lies to its left, so a mapping that keeps ancestry and is
  // increasing in both coordinates keeps sibling order too.
  const auto anc_a = ancestry(a);
  const auto anc_b = ancestry(b);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t best = a.size() + b.size();

  std::function<void(std::size_t, std::size_t, std::size_t)> go =
      [&](std::size_t i, std::size_t next_j, std::size_t relabels) {
        if (i == a.size()) {
          const std::size_t cost = relabels + (a.size() - pairs.size()) + (b.size() - pairs.size());
          best = std::min(best, cost);
          return;
        }
        go(i + 1, next_j, relabels);
        for (std::size_t j = next_j; j < b.size(); ++j) {
          bool ok = true;
          for (const auto& [pi, pj] : pairs) {
            if (anc_a[pi][i] != anc_b[pj][j]) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          pairs.emplace_back(i, j);
          go(i + 1, j + 1, relabels + (a.label[i] == b.label[j] ? 0 : 1));
          pairs.pop_back();
        }
      };
  go(0, 0, 0);
  return best;
}

namespace {

std::unordered_map<std::string, std::size_t> grams(const std::vector<std::string>& toks,
                                                   std::size_t n) {
  std::unordered_map<std::string, std::size_t> out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      key += toks[i + k];
      key += '\x1f';
    }
    ++out[key];
  }
  return out;
}

}  // namespace

double reference_bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  if (hyp.empty() && ref.empty()) return 1.0;
  if (hyp.empty() || ref.empty()) return 0.0;
  double product = 1.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto h = grams(hyp, n);
    const auto r = grams(ref, n);
    double hits = 0.0;
    double total = 0.0;
    for (const auto& [g, c] : h) {
      total += static_cast<double>(c);
      if (auto it = r.find(g); it != r.end()) hits += static_cast<double>(std::min(c, it->second));
    }
    const double p = n == 1 ? (total > 0 ? hits / total : 0.0) : (hits + 1.0) / (total + 1.0);
    product *= p;
  }
  if (product == 0.0) return 0.0;
  const double c = static_cast<double>(hyp.size());
  const double rl = static_cast<double>(ref.size());
  const double bp = c > rl ? 1.0 : std::exp(1.0 - rl / c);
  return bp * std::pow(product, 0.25);
}

double reference_rouge_l(const std::vector<std::string>& hyp,
                         const std::vector<std::string>& ref) {
  if (hyp.empty() && ref.empty()) return 1.0;
  if (hyp.empty() || ref.empty()) return 0.0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> lcs = [&](std::size_t i,
                                                                 std::size_t j) -> std::size_t {
    if (i == hyp.size() || j == ref.size()) return 0;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    const std::size_t v = hyp[i] == ref[j] ? lcs(i + 1, j + 1) + 1
                                           : std::max(lcs(i + 1, j), lcs(i, j + 1));
    memo[{i, j}] = v;
    return v;
  };
  const double l = static_cast<double>(lcs(0, 0));
  if (l == 0.0) return 0.0;
  const double p = l / static_cast<double>(hyp.size());
  const double r = l / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

}  // namespace reco::testing
