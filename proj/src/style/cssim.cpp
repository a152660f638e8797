#include <algorithm>

#include "reco/error.hpp"
#include "reco/style/metrics.hpp"
#include "reco/style/parse.hpp"

namespace reco::style {

StyleProfile make_profile(std::string_view code, Language language) {
  StyleProfile p;
  p.tree = parse(code, language);
  p.variables = extract_variables(p.tree, language);
  p.apis = extract_apis(p.tree, language);
  return p;
}

StyleReport cssim(const StyleProfile& a, const StyleProfile& b, const IdfTable& idf,
                  TedLabels labels) {
  StyleReport r;
  r.dis_var = dis_symmetric(a.variables, b.variables, idf);
  r.dis_api = dis_symmetric(a.apis, b.apis, idf);
  r.ted = tree_edit_distance(a.tree, b.tree, labels);
  r.csdis = std::clamp((r.dis_var + r.dis_api + r.ted) / 3.0, 0.0, 1.0);
  r.cssim = 1.0 - r.csdis;
  r.fallback_a = a.tree.parse_fallback();
  r.fallback_b = b.tree.parse_fallback();
  return r;
}

StyleReport cssim(std::string_view c1, std::string_view c2, Language language, const IdfTable& idf,
                  TedLabels labels) {
  return cssim(make_profile(c1, language), make_profile(c2, language), idf, labels);
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kCssim:
      return "cssim";
    case MetricKind::kBleu:
      return "bleu";
    case MetricKind::kRougeL:
      return "rouge_l";
    case MetricKind::kCodeBleu:
      return "codebleu";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view name) {
  if (name == "cssim") return MetricKind::kCssim;
  if (name == "bleu") return MetricKind::kBleu;
  if (name == "rouge_l") return MetricKind::kRougeL;
  if (name == "codebleu") return MetricKind::kCodeBleu;
  throw ConfigError("unknown metric '" + std::string(name) +
                    "' (expected cssim, bleu, rouge_l or codebleu)");
}

MetricScore score_metric(MetricKind metric, std::string_view hyp, std::string_view ref,
                         Language language, const IdfTable& idf) {
  switch (metric) {
    case MetricKind::kCssim:
      return {metric, cssim(hyp, ref, language, idf).cssim};
    case MetricKind::kBleu:
      return {metric, bleu(hyp, ref, language)};
    case MetricKind::kRougeL:
      return {metric, rouge_l(hyp, ref, language)};
    case MetricKind::kCodeBleu:
      return {metric, codebleu(hyp, ref, language)};
  }
  throw ConfigError("unknown metric");
}

}  // namespace reco::style
