#include <gtest/gtest.h>

#include <random>

#include "fuzz.hpp"
#include "reco/error.hpp"
#include "reco/style/metrics.hpp"
#include "reco/style/parse.hpp"

using namespace reco;
using namespace reco::style;

namespace {

SyntaxTree chain(std::initializer_list<const char*> kinds) {
  SyntaxTree t;
  int parent = -1;
  for (const char* k : kinds) parent = static_cast<int>(t.add(k, parent, 0, 0));
  return t;
}

const char* kWordCount = R"(def word_count(text):
    count = {}
    for word in text.split():
        count[word] = count.get(word, 0) + 1
    return count
)";

const char* kWordCountRenamed = R"(def words_count(s):
    words_count = {}
    for w in s.split():
        words_count[w] = words_count.get(w, 0) + 1
    return words_count
)";

}  // namespace

TEST(EditDistance, SpecExamples) {
  EXPECT_NEAR(norm_edit_distance("word_count", "words_count"), 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(norm_edit_distance("token_count", "words_count"), 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(norm_edit_distance("word_count", "words_count"), 0.0909, 1e-4);
  EXPECT_NEAR(norm_edit_distance("token_count", "words_count"), 0.3636, 1e-4);
  EXPECT_EQ(norm_edit_distance("same", "same"), 0.0);
  EXPECT_EQ(norm_edit_distance("", ""), 0.0);
  EXPECT_EQ(norm_edit_distance("", "abc"), 1.0);
}

TEST(EditDistance, BitParallelAgreesWithDp) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 3000; ++i) {
    const auto a = reco::testing::random_word(rng, i % 3 == 0 ? 150 : 70, "abcd");
    const auto b = reco::testing::random_word(rng, i % 5 == 0 ? 90 : 40, "abcd");
    ASSERT_EQ(levenshtein(a, b), levenshtein_dp(a, b)) << a << " / " << b;
  }
}

TEST(EditDistance, MetricAxiomsOnRandomStrings) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const auto a = reco::testing::random_word(rng, 9, "abc");
    const auto b = reco::testing::random_word(rng, 9, "abc");
    const auto c = reco::testing::random_word(rng, 9, "abc");
    EXPECT_EQ(levenshtein(a, a), 0u);
    EXPECT_EQ(levenshtein(a, b), levenshtein(b, a));
    EXPECT_LE(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c));
    if (a != b) EXPECT_GT(levenshtein(a, b), 0u);
  }
}

TEST(DisVar, OneSidedAndSymmetric) {
  IdfTable idf;
  IdentifierSet wc(IdentifierRole::kVariable, {"word_count"});
  IdentifierSet wsc(IdentifierRole::kVariable, {"words_count"});
  IdentifierSet tc(IdentifierRole::kVariable, {"token_count"});
  IdentifierSet x(IdentifierRole::kVariable, {"x"});
  IdentifierSet empty;
  EXPECT_EQ(dis_one_sided(wc, wc, idf), 0.0);
  EXPECT_NEAR(dis_one_sided(wc, wsc, idf), 1.0 / 11.0, 1e-15);
  EXPECT_EQ(dis_one_sided(x, empty, idf), 1.0);
  EXPECT_EQ(dis_one_sided(empty, x, idf), 1.0);
  EXPECT_EQ(dis_one_sided(empty, empty, idf), 0.0);
  EXPECT_NEAR(dis_symmetric(wc, wsc, idf), 0.0909, 1e-4);
  EXPECT_EQ(dis_symmetric(wc, wsc, idf), dis_symmetric(wsc, wc, idf));
  EXPECT_LT(dis_symmetric(wc, wsc, idf), dis_symmetric(tc, wsc, idf));
  EXPECT_NEAR(dis_symmetric(tc, wsc, idf), 0.3636, 1e-4);
}

TEST(DisVar, IdfWeightsTheAverage) {
  // "common" appears in every document, "rare" in none: weights 1 and ln(4)+1.
  std::vector<IdentifierSet> docs(3, IdentifierSet(IdentifierRole::kVariable, {"common"}));
  auto idf = idf_weights(docs);
  IdentifierSet v1(IdentifierRole::kVariable, {"common", "rare"});
  IdentifierSet v2(IdentifierRole::kVariable, {"common"});
  const double w_rare = std::log(4.0) + 1.0;
  EXPECT_NEAR(dis_one_sided(v1, v2, idf), w_rare * 1.0 / (1.0 + w_rare), 1e-12);
}

TEST(Ted, SpecExamples) {
  auto t = parse("x = 1\nif x:\n    y = 2\n", Language::kPython);
  EXPECT_EQ(tree_edit_distance(t, t), 0.0);
  EXPECT_EQ(tree_edit_distance(chain({"A"}), chain({"B"})), 1.0);
  EXPECT_EQ(tree_edit_distance(chain({"A", "B"}), chain({"A"})), 0.5);
  EXPECT_EQ(tree_edit_distance_raw(chain({"A", "B"}), chain({"A"})), 1u);
}

TEST(Ted, NormalizedValueIsCappedAtOne) {
  SyntaxTree star;
  const auto r = star.add("X", -1, 0, 0);
  star.add("Y", static_cast<std::int32_t>(r), 0, 0);
  star.add("Z", static_cast<std::int32_t>(r), 0, 0);
  const auto c = chain({"A", "B", "C"});
  EXPECT_EQ(tree_edit_distance_raw(c, star), 4u);
  EXPECT_EQ(tree_edit_distance(c, star), 1.0);
}

TEST(Ted, LabelModes) {
  auto a = parse("x = 1", Language::kPython);
  auto b = parse("y = 2", Language::kPython);
  EXPECT_EQ(tree_edit_distance(a, b, TedLabels::kKind), 0.0);
  EXPECT_GT(tree_edit_distance(a, b, TedLabels::kFull), 0.0);
}

TEST(Ted, SizeGuard) {
  SyntaxTree big;
  big.add("R", -1, 0, 0);
  for (std::size_t i = 1; i <= kMaxTreeNodes; ++i) big.add("L", 0, 0, 0);
  EXPECT_THROW(tree_edit_distance(big, chain({"A"})), SizeLimitError);
}

TEST(Cssim, IdentityAndSymmetry) {
  IdfTable idf;
  auto self = cssim(kWordCount, kWordCount, Language::kPython, idf);
  EXPECT_EQ(self.cssim, 1.0);
  EXPECT_EQ(self.csdis, 0.0);
  auto ab = cssim(kWordCount, kWordCountRenamed, Language::kPython, idf);
  auto ba = cssim(kWordCountRenamed, kWordCount, Language::kPython, idf);
  EXPECT_EQ(ab.cssim, ba.cssim);
  EXPECT_EQ(ab.dis_var, ba.dis_var);
  EXPECT_EQ(ab.dis_api, ba.dis_api);
  EXPECT_EQ(ab.ted, ba.ted);
  EXPECT_GT(ab.cssim, 0.0);
  EXPECT_LT(ab.cssim, 1.0);
  EXPECT_EQ(ab.ted, 0.0);
  // Receivers are part of the callee path: text.split vs s.split (4/10) and
  // count.get vs words_count.get (6/15).
  EXPECT_NEAR(ab.dis_api, 0.4, 1e-12);
  EXPECT_GT(ab.dis_var, 0.0);
  EXPECT_NEAR(ab.csdis, (ab.dis_var + ab.dis_api + ab.ted) / 3.0, 1e-15);
  EXPECT_EQ(ab.cssim, 1.0 - ab.csdis);
}

TEST(Cssim, NamingPreferenceCarriesThrough) {
  IdfTable idf;
  const std::string a = "word_count = 0\n";
  const std::string b = "words_count = 0\n";
  const std::string c = "token_count = 0\n";
  auto ab = cssim(a, b, Language::kPython, idf);
  auto cb = cssim(c, b, Language::kPython, idf);
  EXPECT_NEAR(ab.dis_var, 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(cb.dis_var, 4.0 / 11.0, 1e-15);
  EXPECT_GT(ab.cssim, cb.cssim);
}

TEST(Cssim, FallbackIsFlagged) {
  IdfTable idf;
  auto r = cssim("def f(:", "x = 1", Language::kPython, idf);
  EXPECT_TRUE(r.fallback_a);
  EXPECT_FALSE(r.fallback_b);
  EXPECT_GE(r.cssim, 0.0);
  EXPECT_LE(r.cssim, 1.0);
}

TEST(Cssim, BoundedOnFuzzedPairs) {
  std::mt19937_64 rng(5);
  IdfTable idf;
  for (int i = 0; i < 300; ++i) {
    for (auto lang : {Language::kPython, Language::kJava}) {
      const auto a = reco::testing::random_snippet(rng, lang);
      const auto b = reco::testing::random_snippet(rng, lang);
      auto r = cssim(a, b, lang, idf);
      for (double x : {r.dis_var, r.dis_api, r.ted, r.csdis, r.cssim}) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
      }
      EXPECT_EQ(r.cssim, cssim(b, a, lang, idf).cssim);
      EXPECT_EQ(cssim(a, a, lang, idf).cssim, 1.0);
    }
  }
}

// ---------------------------------------------------------------------------

TEST(Bleu, Basics) {
  EXPECT_DOUBLE_EQ(bleu("a b c d e", "a b c d e"), 1.0);
  EXPECT_DOUBLE_EQ(bleu("x = 1", "x = 1"), 1.0);
  EXPECT_EQ(bleu("p q r", "a b c"), 0.0);
  EXPECT_EQ(bleu("", ""), 1.0);
  EXPECT_EQ(bleu("", "a"), 0.0);
  // Four matching unigrams, three bigrams, two trigrams, one 4-gram; hyp 4 vs ref 5.
  const double p = 1.0 * (4.0 / 4.0) * (3.0 / 3.0) * (2.0 / 2.0);
  EXPECT_NEAR(bleu("a b c d", "a b c d e"), std::exp(1.0 - 5.0 / 4.0) * std::pow(p, 0.25), 1e-12);
}

TEST(RougeL, Basics) {
  EXPECT_DOUBLE_EQ(rouge_l("a b c", "a b c"), 1.0);
  EXPECT_NEAR(rouge_l("a c", "a b c"), 0.8, 1e-15);
  EXPECT_EQ(rouge_l("x y", "a b"), 0.0);
}

TEST(Tokens, CommentsDropped) {
  EXPECT_EQ(code_tokens("x = 1  # note\n"), (std::vector<std::string>{"x", "=", "1"}));
  EXPECT_EQ(code_tokens("a += b; // c\n/* d */", Language::kJava),
            (std::vector<std::string>{"a", "+=", "b", ";"}));
}

TEST(CodeBleu, IdenticalInputIsOne) {
  auto r = codebleu_breakdown(kWordCount, kWordCount, Language::kPython);
  EXPECT_DOUBLE_EQ(r.score, 1.0);
  ASSERT_TRUE(r.dataflow.has_value());
  EXPECT_DOUBLE_EQ(*r.dataflow, 1.0);
  const char* java = "int f(int a) { int b = a + 1; return b; }";
  EXPECT_DOUBLE_EQ(codebleu(java, java, Language::kJava), 1.0);
}

TEST(CodeBleu, RenamedVariablesKeepStructure) {
  auto r = codebleu_breakdown(kWordCountRenamed, kWordCount, Language::kPython);
  ASSERT_TRUE(r.syntax.has_value());
  EXPECT_DOUBLE_EQ(*r.syntax, 1.0);
  EXPECT_LT(*r.ngram, 1.0);
  EXPECT_LT(*r.weighted_ngram, 1.0);
  ASSERT_TRUE(r.dataflow.has_value());
  EXPECT_DOUBLE_EQ(*r.dataflow, 1.0);
}

TEST(CodeBleu, NoDataFlowDropsComponent) {
  auto r = codebleu_breakdown("print(1)", "print(2)", Language::kPython);
  EXPECT_FALSE(r.dataflow.has_value());
  ASSERT_TRUE(r.ngram && r.weighted_ngram && r.syntax);
  EXPECT_NEAR(r.score, (*r.ngram + *r.weighted_ngram + *r.syntax) / 3.0, 1e-15);
}

TEST(CodeBleu, EmptyReference) {
  auto r = codebleu_breakdown("x = 1", "", Language::kPython);
  EXPECT_FALSE(r.ngram.has_value());
  EXPECT_FALSE(r.dataflow.has_value());
  EXPECT_GE(r.score, 0.0);
  EXPECT_LE(r.score, 1.0);
}

TEST(MetricKinds, ParseAndDispatch) {
  EXPECT_EQ(parse_metric("cssim"), MetricKind::kCssim);
  EXPECT_EQ(parse_metric("rouge_l"), MetricKind::kRougeL);
  EXPECT_EQ(to_string(MetricKind::kCodeBleu), "codebleu");
  EXPECT_THROW(parse_metric("meteor"), ConfigError);
  for (auto m : {MetricKind::kCssim, MetricKind::kBleu, MetricKind::kRougeL, MetricKind::kCodeBleu}) {
    auto s = score_metric(m, kWordCount, kWordCount, Language::kPython);
    EXPECT_EQ(s.metric, m);
    EXPECT_DOUBLE_EQ(s.value, 1.0);
  }
}
