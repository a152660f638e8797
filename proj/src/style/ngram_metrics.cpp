#include <algorithm>
#include <cmath>
#include <map>

#include "lexer.hpp"
#include "reco/style/metrics.hpp"

namespace reco::style {
namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> ngram_counts(const std::vector<std::string>& toks, std::size_t n) {
  std::map<Gram, std::size_t> out;
  if (toks.size() < n) return out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    ++out[Gram(toks.begin() + static_cast<std::ptrdiff_t>(i),
               toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

}  // namespace

std::vector<std::string> code_tokens(std::string_view code, Language language) {
  std::vector<std::string> out;
  for (auto& t : detail::lex_tolerant(code, language)) out.push_back(std::move(t.text));
  return out;
}

double bleu_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  if (hyp.empty() || ref.empty()) return hyp.empty() && ref.empty() ? 1.0 : 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto h = ngram_counts(hyp, n);
    const auto r = ngram_counts(ref, n);
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : h) {
      total += count;
      auto it = r.find(gram);
      if (it != r.end()) matched += std::min(count, it->second);
    }
    double precision;
    if (n == 1) {
      if (matched == 0) return 0.0;
      precision = static_cast<double>(matched) / static_cast<double>(total);
    } else {
      precision = (static_cast<double>(matched) + 1.0) / (static_cast<double>(total) + 1.0);
    }
    log_sum += std::log(precision);
  }
  const auto c = static_cast<double>(hyp.size());
  const auto r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return std::clamp(bp * std::exp(log_sum / 4.0), 0.0, 1.0);
}

double bleu(std::string_view hyp, std::string_view ref, Language language) {
  return bleu_tokens(code_tokens(hyp, language), code_tokens(ref, language));
}

double rouge_l_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  if (hyp.empty() || ref.empty()) return hyp.empty() && ref.empty() ? 1.0 : 0.0;
  std::vector<std::size_t> prev(ref.size() + 1, 0);
  std::vector<std::size_t> cur(ref.size() + 1, 0);
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      cur[j] = hyp[i - 1] == ref[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const auto lcs = static_cast<double>(prev[ref.size()]);
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(hyp.size());
  const double r = lcs / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

double rouge_l(std::string_view hyp, std::string_view ref, Language language) {
  return rouge_l_tokens(code_tokens(hyp, language), code_tokens(ref, language));
}

}  // namespace reco::style
