#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "reco/style/distance.hpp"

namespace reco::style {
namespace {

// Bit-parallel edit distance (Myers, in Hyyro's formulation) for a pattern
// of at most 64 bytes.
std::size_t levenshtein_bits(std::string_view pattern, std::string_view text) {
  const auto m = pattern.size();
  std::array<std::uint64_t, 256> peq{};
  for (std::size_t i = 0; i < m; ++i) peq[static_cast<unsigned char>(pattern[i])] |= 1ULL << i;
  std::uint64_t pv = ~0ULL;
  std::uint64_t mv = 0;
  const std::uint64_t high = 1ULL << (m - 1);
  std::size_t score = m;
  for (const char ch : text) {
    const auto eq = peq[static_cast<unsigned char>(ch)];
    const auto xv = eq | mv;
    const auto xh = (((eq & pv) + pv) ^ pv) | eq;
    auto ph = mv | ~(xh | pv);
    auto mh = pv & xh;
    if (ph & high) ++score;
    if (mh & high) --score;
    ph = (ph << 1) | 1;
    mh <<= 1;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
  }
  return score;
}

}  // namespace

std::size_t levenshtein_dp(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  if (b.size() <= 64) return levenshtein_bits(b, a);
  return levenshtein_dp(a, b);
}

double norm_edit_distance(std::string_view a, std::string_view b) {
  const auto longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double dis_one_sided(const IdentifierSet& v1, const IdentifierSet& v2, const IdfTable& idf) {
  if (v1.empty()) return v2.empty() ? 0.0 : 1.0;
  if (v2.empty()) return 1.0;
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [a, count_a] : v1.counts()) {
    double best = 1.0;
    for (const auto& [b, count_b] : v2.counts()) {
      best = std::min(best, norm_edit_distance(a, b));
      if (best == 0.0) break;
    }
    const double w = idf.weight(a);
    weighted += w * best;
    total += w;
  }
  return std::clamp(weighted / total, 0.0, 1.0);
}

double dis_symmetric(const IdentifierSet& v1, const IdentifierSet& v2, const IdfTable& idf) {
  return (dis_one_sided(v1, v2, idf) + dis_one_sided(v2, v1, idf)) / 2.0;
}

}  // namespace reco::style
