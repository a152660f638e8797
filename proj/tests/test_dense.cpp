#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reco/dense.hpp"
#include "reco/error.hpp"
#include "stub_servers.hpp"
#include "synthetic.hpp"

using namespace reco;
using namespace reco::dense;

namespace {

EmbeddingVector v(std::vector<double> xs) { return EmbeddingVector{std::move(xs)}; }

EmbeddingVector random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<double> xs(dim);
  for (auto& x : xs) x = g(rng);
  return normalized(v(xs));
}

// Fixed answer for every text in a batch.
class ConstService : public EmbeddingService {
 public:
  explicit ConstService(std::vector<std::vector<double>> answer) : answer_(std::move(answer)) {}
  std::vector<std::vector<double>> embed_batch(std::span<const std::string>) override {
    return answer_;
  }

 private:
  std::vector<std::vector<double>> answer_;
};

}  // namespace

TEST(Embed, NormalizesClientSide) {
  ConstService svc({{3.0, 4.0}});
  const std::vector<std::string> texts = {"a"};
  auto out = embed(texts, svc);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].values[0], 0.6);
  EXPECT_DOUBLE_EQ(out[0].values[1], 0.8);
}

TEST(Embed, EmptyInputAndMismatches) {
  ConstService svc({});
  EXPECT_TRUE(embed({}, svc).empty());
  ConstService ragged({{1.0, 0.0}, {1.0, 0.0, 0.0}});
  const std::vector<std::string> two = {"a", "b"};
  EXPECT_THROW(embed(two, ragged), EndpointError);
  ConstService short_answer(std::vector<std::vector<double>>{{1.0}});
  EXPECT_THROW(embed(two, short_answer), EndpointError);
  EXPECT_THROW(normalized(v({0.0, 0.0})), Error);
  EXPECT_THROW(normalized(v({NAN, 1.0})), Error);
}

TEST(Pooling, ClosedForms) {
  const std::vector<EmbeddingVector> one = {v({0, 1})};
  EXPECT_EQ(augment_representation(v({1, 0}), one), v({0.5, 0.5}));
  const std::vector<EmbeddingVector> two = {v({0, 2}), v({2, 2})};
  EXPECT_EQ(augment_representation(v({2, 0}), two), v({1.5, 1.0}));
  const auto q = v({0.6, 0.8});
  const std::vector<EmbeddingVector> same = {q, q, q};
  auto fixed = augment_representation(q, same);
  EXPECT_NEAR(fixed.values[0], 0.6, 1e-15);
  EXPECT_NEAR(fixed.values[1], 0.8, 1e-15);
  EXPECT_THROW(augment_representation(q, {}), Error);
  const std::vector<EmbeddingVector> bad = {v({1, 2, 3})};
  EXPECT_THROW(augment_representation(q, bad), Error);
}

TEST(Pooling, PermutationInvariantAndLinear) {
  std::mt19937_64 rng(3);
  const auto q = random_unit(rng, 16);
  std::vector<EmbeddingVector> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(random_unit(rng, 16));
  auto a = augment_representation(q, gens);
  std::reverse(gens.begin(), gens.end());
  auto b = augment_representation(q, gens);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-15);

  auto scaled = q;
  for (auto& x : scaled.values) x *= 2.0;
  auto c = augment_representation(scaled, gens);
  // Doubling v_q adds exactly N * v_q / 2N = v_q / 2.
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(c.values[i] - b.values[i], q.values[i] / 2, 1e-12);
}

TEST(Pooling, MeanRepresentation) {
  const std::vector<EmbeddingVector> xs = {v({1, 0}), v({0, 1})};
  EXPECT_EQ(mean_representation(xs), v({0.5, 0.5}));
  EXPECT_THROW(mean_representation({}), Error);
}

TEST(Similarity, DotProduct) {
  EXPECT_DOUBLE_EQ(similarity(v({1, 0}), v({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(similarity(v({1, 0}), v({0, 1})), 0.0);
  EXPECT_NEAR(similarity(v({0.6, 0.8}), v({0.8, 0.6})), 0.96, 1e-15);
  EXPECT_DOUBLE_EQ(similarity(v({2.5, -1}), v({0.6, 0.8})), 2.5 * similarity(v({1, -0.4}), v({0.6, 0.8})));
  EXPECT_THROW(similarity(v({1}), v({1, 2})), Error);
}

TEST(Search, OrthogonalDocsTieByDocNumber) {
  const std::vector<EmbeddingVector> docs = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
  DenseIndex index({"a", "b", "c"}, docs);
  auto hits = dense_search(index, v({0, 1, 0}), 10);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].doc, 1u);
  EXPECT_DOUBLE_EQ(hits[0].score, 1.0);
  EXPECT_EQ(hits[1].doc, 0u);
  EXPECT_EQ(hits[2].doc, 2u);
  EXPECT_EQ(dense_search(index, v({0, 1, 0}), 1).size(), 1u);
  EXPECT_THROW(dense_search(index, v({1, 0}), 1), Error);
  EXPECT_THROW(dense_search(index, v({1, 0, 0}), 0), ConfigError);
}

TEST(Search, StoredVectorRanksFirstAndScaleInvariant) {
  std::mt19937_64 rng(9);
  std::vector<EmbeddingVector> docs;
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) {
    docs.push_back(random_unit(rng, 32));
    ids.push_back("d" + std::to_string(i));
  }
  DenseIndex index(ids, docs);
  for (std::size_t d : {0u, 57u, 199u}) {
    auto hits = dense_search(index, docs[d], 5);
    EXPECT_EQ(hits[0].doc, d);
    auto scaled = docs[d];
    for (auto& x : scaled.values) x *= 7.5;
    auto hits2 = dense_search(index, scaled, 200);
    auto hits1 = dense_search(index, docs[d], 200);
    for (std::size_t i = 0; i < hits1.size(); ++i) EXPECT_EQ(hits1[i].doc, hits2[i].doc);
  }
}

TEST(Search, ParallelKernelMatchesSerialExactly) {
  std::mt19937_64 rng(17);
  std::vector<EmbeddingVector> docs;
  std::vector<std::string> ids;
  for (int i = 0; i < 3000; ++i) {
    docs.push_back(random_unit(rng, 48));
    ids.push_back(std::to_string(i));
  }
  DenseIndex index(ids, docs);
  for (int q = 0; q < 5; ++q) {
    const auto query = random_unit(rng, 48);
    EXPECT_EQ(index.score_all(query), index.score_all_serial(query));
  }
}

TEST(InfoNce, ClosedForms) {
  const std::vector<std::pair<EmbeddingVector, EmbeddingVector>> single = {{v({0.6, 0.8}), v({1, 0})}};
  EXPECT_EQ(infonce_loss(single), 0.0);
  const std::vector<std::pair<EmbeddingVector, EmbeddingVector>> equal = {
      {v({1, 0}), v({1, 0})}, {v({1, 0}), v({1, 0})}};
  EXPECT_NEAR(infonce_loss(equal), std::log(2.0), 1e-12);
  EXPECT_NEAR(infonce_loss(equal), 0.6931, 1e-4);
  const std::vector<std::pair<EmbeddingVector, EmbeddingVector>> dominant = {
      {v({50, 0}), v({1, 0})}, {v({0, 50}), v({0, 1})}};
  const double l = infonce_loss(dominant);
  EXPECT_GE(l, 0.0);
  EXPECT_LT(l, 1e-15);
  const std::vector<std::pair<EmbeddingVector, EmbeddingVector>> huge = {
      {v({1e6, 0}), v({1, 0})}, {v({0, 1e6}), v({1, 0})}};
  EXPECT_TRUE(std::isfinite(infonce_loss(huge)));
  EXPECT_THROW(infonce_loss({}), Error);
}

TEST(InfoNce, NonNegativeOnRandomBatches) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::pair<EmbeddingVector, EmbeddingVector>> pairs;
    for (int i = 0; i < 8; ++i) pairs.emplace_back(random_unit(rng, 8), random_unit(rng, 8));
    EXPECT_GE(infonce_loss(pairs), 0.0);
  }
}

TEST(Persistence, Float32RoundTrip) {
  reco::testing::TempDir dir;
  const std::vector<EmbeddingVector> docs = {v({0.6, 0.8}), v({1, 0})};
  DenseIndex index({"x", "y"}, docs);
  index.save(dir / "vec.bin");
  auto back = DenseIndex::load(dir / "vec.bin");
  EXPECT_EQ(back.doc_ids(), index.doc_ids());
  EXPECT_EQ(back.dim(), 2u);
  EXPECT_FLOAT_EQ(static_cast<float>(back.row(0)[1]), 0.8f);
  const auto bytes = reco::testing::read_file(dir / "vec.bin");
  EXPECT_EQ(bytes.size(), 16u + 2 * 2 * 4);
  reco::testing::write_file(dir / "cut.bin", bytes.substr(0, 20));
  EXPECT_THROW(DenseIndex::load(dir / "cut.bin"), StorageError);
}

TEST(HttpEmbedding, StubContract) {
  reco::testing::EmbedStub stub([](const std::string& t) {
    return t == "a" ? std::vector<double>{3.0, 4.0} : std::vector<double>{1.0, 0.0};
  });
  HttpEmbeddingService svc({stub.base_url(), 2, 10});
  const std::vector<std::string> texts = {"a", "b", "a", "c", "a"};
  auto out = embed(texts, svc);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_DOUBLE_EQ(out[0].values[0], 0.6);
  EXPECT_EQ(out[0], out[2]);
  EXPECT_EQ(out[1].values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(stub.requests(), 3u);
  EXPECT_LE(stub.max_batch(), 2u);
  for (const auto& e : out) EXPECT_NEAR(l2_norm(e), 1.0, 1e-12);
}

TEST(HttpEmbedding, DeterministicDefaultVectors) {
  reco::testing::EmbedStub stub;
  HttpEmbeddingService svc({stub.base_url(), 64, 10});
  const std::vector<std::string> texts = {"def f(): pass", "def f(): pass"};
  auto out = embed(texts, svc);
  EXPECT_EQ(out[0], out[1]);
  EXPECT_EQ(out[0].dim(), 8u);
}

TEST(HttpEmbedding, FailuresAreEndpointErrors) {
  HttpEmbeddingService down({"http://127.0.0.1:1", 4, 2});
  const std::vector<std::string> texts = {"x"};
  EXPECT_THROW(down.embed_batch(texts), EndpointError);
  EXPECT_THROW(HttpEmbeddingService({"", 4, 2}), ConfigError);
  EXPECT_THROW(HttpEmbeddingService({"http://x", 0, 2}), ConfigError);
}
