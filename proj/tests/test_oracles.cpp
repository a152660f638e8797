#include <gtest/gtest.h>

#include <random>
#include <set>

#include "criteria.hpp"
#include "fuzz.hpp"
#include "oracles.hpp"
#include "reco/style/distance.hpp"
#include "reco/style/metrics.hpp"
#include "synthetic.hpp"

using namespace reco;
using namespace reco::testing;

namespace {

TinyTree chain(std::size_t n, char label = 'a') {
  TinyTree t;
  for (std::size_t i = 0; i < n; ++i) {
    t.parent.push_back(static_cast<int>(i) - 1);
    t.label.push_back(label);
  }
  return t;
}

TinyTree star(std::size_t n, char label = 'a') {
  TinyTree t;
  for (std::size_t i = 0; i < n; ++i) {
    t.parent.push_back(i == 0 ? -1 : 0);
    t.label.push_back(label);
  }
  return t;
}

}  // namespace

// The oracles are checked on their own before anything is compared to them.

TEST(OracleSelf, BruteLevenshteinKnownValues) {
  EXPECT_EQ(brute_levenshtein("", ""), 0u);
  EXPECT_EQ(brute_levenshtein("abc", ""), 3u);
  EXPECT_EQ(brute_levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(brute_levenshtein("flaw", "lawn"), 2u);
  EXPECT_EQ(brute_levenshtein("word_count", "words_count"), 1u);
}

TEST(OracleSelf, StringEnumerationCounts) {
  EXPECT_EQ(all_strings("ab", 0).size(), 1u);
  EXPECT_EQ(all_strings("abc", 3).size(), 1u + 3 + 9 + 27);
  const auto s = all_strings("ab", 2);
  EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), s.size());
}

TEST(OracleSelf, TreeEnumerationCounts) {
  // Ordered trees with n nodes: Catalan(n-1) shapes, 2^n labelings.
  EXPECT_EQ(all_labeled_trees(1, "a").size(), 1u);
  EXPECT_EQ(all_labeled_trees(4, "a").size(), 1u + 1 + 2 + 5);
  EXPECT_EQ(all_labeled_trees(5, "ab").size(), 2u + 4 * 1 + 8 * 2 + 16 * 5 + 32 * 14);
  for (const auto& t : all_labeled_trees(4, "ab")) {
    ASSERT_EQ(t.parent[0], -1);
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LT(t.parent[i], static_cast<int>(i));
    EXPECT_TRUE(to_syntax_tree(t).well_formed());
  }
}

TEST(OracleSelf, ExhaustiveTedKnownValues) {
  EXPECT_EQ(exhaustive_ted(chain(1), chain(1)), 0u);
  EXPECT_EQ(exhaustive_ted(chain(1, 'a'), chain(1, 'b')), 1u);
  EXPECT_EQ(exhaustive_ted(chain(3), chain(1)), 2u);
  EXPECT_EQ(exhaustive_ted(chain(4), star(4)), 4u);
  EXPECT_EQ(exhaustive_ted(star(3), star(3)), 0u);
  EXPECT_EQ(exhaustive_ted(chain(3), star(3)), 2u);
}

TEST(OracleSelf, ReferenceNgramMetricsKnownValues) {
  const std::vector<std::string> a = {"the", "cat", "sat", "on", "the", "mat"};
  EXPECT_NEAR(reference_bleu(a, a), 1.0, 1e-12);
  EXPECT_NEAR(reference_rouge_l(a, a), 1.0, 1e-12);
  EXPECT_EQ(reference_bleu({"x"}, {"y"}), 0.0);
  const std::vector<std::string> h = {"a", "b", "c", "d"};
  const std::vector<std::string> r = {"a", "c", "d", "e", "f"};
  // LCS 3: precision 3/4, recall 3/5.
  EXPECT_NEAR(reference_rouge_l(h, r), 2 * 0.75 * 0.6 / (0.75 + 0.6), 1e-12);
}

// Library against oracles on smaller exhaustive spaces than the acceptance run.

TEST(OracleEquivalence, LevenshteinAllShortPairs) {
  const auto strings = all_strings("abc", 4);
  for (const auto& a : strings) {
    for (const auto& b : strings) {
      const auto expected = brute_levenshtein(a, b);
      ASSERT_EQ(style::levenshtein(a, b), expected) << a << " / " << b;
      ASSERT_EQ(style::levenshtein_dp(a, b), expected) << a << " / " << b;
    }
  }
}

TEST(OracleEquivalence, TreeEditDistanceAllSmallTrees) {
  const auto trees = all_labeled_trees(4, "ab");
  for (const auto& a : trees) {
    const auto ta = to_syntax_tree(a);
    for (const auto& b : trees) {
      ASSERT_EQ(style::tree_edit_distance_raw(ta, to_syntax_tree(b)), exhaustive_ted(a, b));
    }
  }
}

TEST(OracleEquivalence, BleuAndRougeOnFuzzedPairs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto lang = i % 2 ? Language::kJava : Language::kPython;
    const auto ta = style::code_tokens(random_snippet(rng, lang, 0), lang);
    const auto tb = style::code_tokens(random_snippet(rng, lang, 0), lang);
    EXPECT_NEAR(style::bleu_tokens(ta, tb), reference_bleu(ta, tb), 1e-12);
    EXPECT_NEAR(style::rouge_l_tokens(ta, tb), reference_rouge_l(ta, tb), 1e-12);
  }
}

// The criteria themselves at reduced sizes, so a regression shows up in the
// unit suite before the acceptance run.

TEST(Criteria, OracleEquivalenceReduced) {
  const auto v = check_oracle_equivalence(5, 4);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(Criteria, CssimAxiomsReduced) {
  const auto v = check_cssim_axioms(300);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(Criteria, ClosedForms) {
  const auto v = check_closed_forms();
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(Criteria, BaselineMetricOracles) {
  const auto v = check_baseline_metric_oracles(20);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(Criteria, Bm25ReproductionReportsMissingData) {
  reco::testing::TempDir empty;
  const auto v = check_bm25_reproduction(empty.path());
  EXPECT_FALSE(v.pass);
  EXPECT_NE(v.detail.find("no test split"), std::string::npos) << v.detail;
}
