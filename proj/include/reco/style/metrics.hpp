#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/style/distance.hpp"
#include "reco/style/identifiers.hpp"
#include "reco/style/syntax_tree.hpp"

namespace reco::style {

// Parsed snippet with its identifier sets, reusable across comparisons.
struct StyleProfile {
  SyntaxTree tree;
  IdentifierSet variables{IdentifierRole::kVariable};
  IdentifierSet apis{IdentifierRole::kApi};
};

StyleProfile make_profile(std::string_view code, Language language);

struct StyleReport {
  double dis_var = 0.0;
  double dis_api = 0.0;
  double ted = 0.0;
  double csdis = 0.0;
  double cssim = 1.0;
  bool fallback_a = false;
  bool fallback_b = false;
};

StyleReport cssim(const StyleProfile& a, const StyleProfile& b, const IdfTable& idf,
                  TedLabels labels = TedLabels::kKind);
StyleReport cssim(std::string_view c1, std::string_view c2, Language language, const IdfTable& idf,
                  TedLabels labels = TedLabels::kKind);

// Lexical tokens used by the n-gram metrics (comments dropped).
std::vector<std::string> code_tokens(std::string_view code, Language language = Language::kPython);

// BLEU-4 with brevity penalty; precisions of order 2..4 use add-one smoothing.
double bleu_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);
double bleu(std::string_view hyp, std::string_view ref, Language language = Language::kPython);

// F1 of longest-common-subsequence precision and recall.
double rouge_l_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);
double rouge_l(std::string_view hyp, std::string_view ref, Language language = Language::kPython);

struct CodeBleuBreakdown {
  // nullopt when the reference side of that component is empty.
  std::optional<double> ngram;
  std::optional<double> weighted_ngram;
  std::optional<double> syntax;
  std::optional<double> dataflow;
  double score = 0.0;
};

CodeBleuBreakdown codebleu_breakdown(std::string_view hyp, std::string_view ref, Language language);
double codebleu(std::string_view hyp, std::string_view ref, Language language);

enum class MetricKind : std::uint8_t { kCssim, kBleu, kRougeL, kCodeBleu };

std::string to_string(MetricKind kind);
MetricKind parse_metric(std::string_view name);  // throws ConfigError

struct MetricScore {
  MetricKind metric;
  double value;
};

// metric(hyp, ref). CSSim uses `idf`; the other metrics ignore it.
MetricScore score_metric(MetricKind metric, std::string_view hyp, std::string_view ref,
                         Language language, const IdfTable& idf = {});

}  // namespace reco::style
