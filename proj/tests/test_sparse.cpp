#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "reco/error.hpp"
#include "reco/sparse.hpp"
#include "synthetic.hpp"

using namespace reco;
using namespace reco::sparse;

namespace {

std::vector<AugmentedText> docs_of(const std::vector<std::string>& texts) {
  std::vector<AugmentedText> out;
  for (std::size_t i = 0; i < texts.size(); ++i) out.push_back({"d" + std::to_string(i), texts[i], 0});
  return out;
}

// Textbook BM25 with the Lucene idf, written out term by term.
double oracle_bm25(const std::vector<std::vector<std::string>>& docs,
                   const std::vector<std::string>& query, std::size_t d, double k1, double b) {
  double avg = 0.0;
  for (const auto& doc : docs) avg += static_cast<double>(doc.size());
  avg /= static_cast<double>(docs.size());
  double score = 0.0;
  for (const auto& term : query) {
    double df = 0.0;
    for (const auto& doc : docs) {
      if (std::find(doc.begin(), doc.end(), term) != doc.end()) df += 1.0;
    }
    const double tf =
        static_cast<double>(std::count(docs[d].begin(), docs[d].end(), term));
    if (tf == 0.0) continue;
    const double n = static_cast<double>(docs.size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    const double len = static_cast<double>(docs[d].size());
    score += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len / avg));
  }
  return score;
}

}  // namespace

TEST(Tokenize, SplitsIdentifiersAndLowercases) {
  EXPECT_EQ(tokenize("Counter(lst)"), (std::vector<std::string>{"counter", "lst"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("word_count"), (std::vector<std::string>{"word", "count"}));
  EXPECT_EQ(tokenize("getHTTPResponse2x"),
            (std::vector<std::string>{"get", "http", "response2x"}));
  EXPECT_EQ(tokenize("  a--b  "), (std::vector<std::string>{"a", "b"}));
}

TEST(Tokenize, IdentifierSplittingCanBeDisabled) {
  TokenizerOptions opts{false};
  EXPECT_EQ(tokenize("word_count wordCount", opts),
            (std::vector<std::string>{"word_count", "wordcount"}));
}

TEST(Tokenize, KeepsUtf8InsideTerms) {
  EXPECT_EQ(tokenize("caf\xc3\xa9 bar"), (std::vector<std::string>{"caf\xc3\xa9", "bar"}));
}

TEST(Augmented, QueryRepeatedThenGenerations) {
  const std::vector<std::string> gens = {"a", "b"};
  auto q = build_augmented_query("q", gens, "id");
  EXPECT_EQ(q.text, "q\nq\na\nb");
  EXPECT_EQ(q.n, 2);
  EXPECT_EQ(q.source_id, "id");
  EXPECT_EQ(build_augmented_query("q", {}).text, "q");
  const std::vector<std::string> one = {"A"};
  EXPECT_EQ(build_augmented_query("count items", one).text, "count items\nA");
}

TEST(Augmented, CodeMirrorsQuery) {
  const std::vector<std::string> rw = {"r1", "r2"};
  EXPECT_EQ(build_augmented_code("c", rw).text, "c\nc\nr1\nr2");
  EXPECT_EQ(build_augmented_code("c", {}).text, "c");
}

TEST(Augmented, IdentityRewritesGiveTwoNCopies) {
  const std::string c = "def f(x):\n    return x";
  const std::vector<std::string> rw(3, c);
  auto aug = build_augmented_code(c, rw);
  auto terms = tokenize(aug.text);
  auto base = tokenize(c);
  EXPECT_EQ(terms.size(), base.size() * 6);
}

TEST(Bm25, SingleDocumentScore) {
  auto index = index_corpus(docs_of({"alpha"}));
  EXPECT_NEAR(index.idf("alpha"), std::log(1.0 + 0.5 / 1.5), 1e-12);
  EXPECT_NEAR(index.idf("alpha"), 0.2877, 1e-4);
  auto scores = index.score_all("alpha");
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_NEAR(scores[0], 0.2877, 1e-4);
}

TEST(Bm25, MatchesTextbookOracle) {
  const std::vector<std::string> texts = {"the quick brown fox", "quick quick fox jumps over",
                                          "lazy dog", "brown dog brown cat fox",
                                          "a completely different document here"};
  const std::vector<std::pair<double, double>> params = {{0.9, 0.4}, {1.2, 0.75}, {0.0, 0.0},
                                                         {2.0, 1.0}};
  std::vector<std::vector<std::string>> tok;
  for (const auto& t : texts) tok.push_back(tokenize(t));
  for (const auto& [k1, b] : params) {
    auto index = index_corpus(docs_of(texts), {k1, b});
    for (const std::string q : {"quick fox", "brown brown dog", "missing", "fox jumps lazy"}) {
      auto scores = index.score_all(q);
      for (std::size_t d = 0; d < texts.size(); ++d) {
        EXPECT_NEAR(scores[d], oracle_bm25(tok, tokenize(q), d, k1, b), 1e-12)
            << "k1=" << k1 << " b=" << b << " q=" << q << " d=" << d;
      }
    }
  }
}

TEST(Bm25, StatisticsAreConsistent) {
  auto index = index_corpus(docs_of({"a b c", "a", "b b b b b"}));
  EXPECT_EQ(index.doc_count(), 3u);
  EXPECT_DOUBLE_EQ(index.average_doc_length(), 3.0);
  EXPECT_EQ(index.doc_length(2), 5u);
  EXPECT_EQ(index.document_frequency("b"), 2u);
  EXPECT_EQ(index.document_frequency("zzz"), 0u);
  ASSERT_NE(index.postings("b"), nullptr);
  EXPECT_EQ(index.postings("b")->at(1).tf, 5u);
  EXPECT_THROW(index_corpus({}), Error);
}

TEST(Bm25, MonotoneInTermAndDocumentFrequency) {
  auto index = index_corpus(docs_of({"x y", "x x y", "x x x y"}));
  auto s = index.score_all("x");
  // Longer docs here also hold more x; compare at fixed length instead.
  auto fixed = index_corpus(docs_of({"x y y y", "x x y y", "x x x y"}));
  auto f = fixed.score_all("x");
  EXPECT_LE(f[0], f[1]);
  EXPECT_LE(f[1], f[2]);
  EXPECT_GT(s[0], 0.0);

  auto rare = index_corpus(docs_of({"t u", "v w", "v w"}));
  auto common = index_corpus(docs_of({"t u", "t w", "t w"}));
  EXPECT_GE(rare.score_all("t")[0], common.score_all("t")[0]);
}

TEST(Search, ExactTextRanksFirst) {
  const auto d = reco::testing::distinct_corpus(20, 0);
  std::vector<AugmentedText> docs;
  for (const auto& r : d.test) docs.push_back(build_augmented_code(r.code, {}, r.id));
  auto index = index_corpus(docs);
  auto hits = sparse_search(index, build_augmented_query(d.test[7].code, {}), 5);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0].doc, 7u);
  EXPECT_LE(hits.size(), 5u);
  for (std::size_t i = 1; i < hits.size(); ++i) EXPECT_GE(hits[i - 1].score, hits[i].score);
}

TEST(Search, OutOfVocabularyGivesNothing) {
  auto index = index_corpus(docs_of({"alpha beta", "gamma"}));
  EXPECT_TRUE(sparse_search(index, {"q", "zeta eta", 0}, 10).empty());
  EXPECT_THROW(sparse_search(index, {"q", "alpha", 0}, 0), ConfigError);
}

TEST(Search, TiesBrokenByDocumentNumber) {
  auto index = index_corpus(docs_of({"other", "same text", "filler", "same text"}));
  auto hits = sparse_search(index, {"q", "same", 0}, 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc, 1u);
  EXPECT_EQ(hits[1].doc, 3u);
  EXPECT_EQ(hits[0].score, hits[1].score);
}

TEST(Search, QueryRepetitionKeepsRanking) {
  const auto d = reco::testing::distinct_corpus(30, 0);
  std::vector<AugmentedText> docs;
  for (const auto& r : d.test) docs.push_back({r.id, r.code + " " + d.test[0].code, 0});
  auto index = index_corpus(docs);
  const std::string q = d.test[3].code;
  auto once = sparse_search(index, {"q", q, 1}, 30);
  auto thrice = sparse_search(index, {"q", q + "\n" + q + "\n" + q, 3}, 30);
  ASSERT_EQ(once.size(), thrice.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once[i].doc, thrice[i].doc);
}

TEST(Search, Deterministic) {
  const auto d = reco::testing::distinct_corpus(40, 0);
  std::vector<AugmentedText> docs;
  for (const auto& r : d.test) docs.push_back({r.id, r.code, 0});
  auto a = index_corpus(docs);
  auto b = index_corpus(docs);
  EXPECT_EQ(sparse_search(a, {"q", "return", 0}, 40), sparse_search(b, {"q", "return", 0}, 40));
}

TEST(Persistence, SaveLoadRoundTrip) {
  reco::testing::TempDir dir;
  auto index = index_corpus(docs_of({"a b c", "b c d", "unicode caf\xc3\xa9"}), {1.1, 0.3},
                            {false});
  index.save(dir / "idx.bin");
  auto back = SparseIndex::load(dir / "idx.bin");
  EXPECT_EQ(back.doc_ids(), index.doc_ids());
  EXPECT_EQ(back.params().k1, 1.1);
  EXPECT_EQ(back.params().b, 0.3);
  EXPECT_FALSE(back.tokenizer().split_identifiers);
  EXPECT_EQ(back.score_all("b c caf\xc3\xa9"), index.score_all("b c caf\xc3\xa9"));
}

TEST(Persistence, RejectsForeignAndTruncatedFiles) {
  reco::testing::TempDir dir;
  reco::testing::write_file(dir / "bad.bin", "not an index at all");
  EXPECT_THROW(SparseIndex::load(dir / "bad.bin"), StorageError);
  auto index = index_corpus(docs_of({"a b c"}));
  index.save(dir / "ok.bin");
  auto bytes = reco::testing::read_file(dir / "ok.bin");
  reco::testing::write_file(dir / "cut.bin", bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(SparseIndex::load(dir / "cut.bin"), StorageError);
  EXPECT_THROW(SparseIndex::load(dir / "missing.bin"), StorageError);
}
