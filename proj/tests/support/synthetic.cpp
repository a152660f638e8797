#include "synthetic.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>

namespace reco::testing {
namespace {

constexpr std::array<const char*, 20> kSyllables = {"ka", "lo", "mi", "nu", "pe", "ra", "si",
                                                    "to", "vu", "we", "zo", "bi", "da", "fe",
                                                    "gu", "ho", "ji", "ke", "ly", "mo"};

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

std::string pseudo_word(std::size_t index) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    out += kSyllables[index % kSyllables.size()];
    index /= kSyllables.size();
  }
  return out;
}

corpus::Dataset distinct_corpus(std::size_t test_size, std::size_t train_size,
                                Language language) {
  corpus::Dataset d;
  d.name = "distinct";
  d.language = language;
  // Codes draw from words [0, 4000); queries from [4000, 8000).
  auto make = [&](std::size_t i, const std::string& prefix) {
    const auto a = pseudo_word(3 * i);
    const auto b = pseudo_word(3 * i + 1);
    const auto c = pseudo_word(3 * i + 2);
    corpus::PairRecord r;
    r.id = prefix + std::to_string(i);
    r.language = language;
    r.query = "describe task " + pseudo_word(4000 + 2 * i) + " " + pseudo_word(4001 + 2 * i);
    if (language == Language::kPython) {
      r.code = "def " + a + "_" + b + "(" + c + "):\n    return " + c + " + " +
               std::to_string(i) + "\n";
    } else {
      r.code = "public static int " + a + capitalized(b) + "(int " + c + ") {\n    return " + c +
               " + " + std::to_string(i) + ";\n}\n";
    }
    return r;
  };
  for (std::size_t i = 0; i < test_size; ++i) d.test.push_back(make(i, "t"));
  for (std::size_t i = 0; i < train_size; ++i) d.train.push_back(make(test_size + i, "r"));
  return d;
}

StyleCorpus style_corpus(std::size_t test_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> threshold(1, 30);
  std::uniform_int_distribution<int> factor(2, 9);
  StyleCorpus sc;
  sc.dataset.name = "style";
  sc.dataset.language = Language::kPython;

  auto make = [&](std::size_t i, const std::string& prefix, bool test) {
    const auto verb = pseudo_word(3 * i);
    const auto noun = pseudo_word(3 * i + 1);
    const auto acc = pseudo_word(3 * i + 2);
    const int k = threshold(rng);
    const int m = factor(rng);
    std::ostringstream e;
    e << "def " << verb << "_" << noun << "(" << noun << "_list):\n"
      << "    " << acc << "_total = 0\n"
      << "    for " << noun << "_item in " << noun << "_list:\n"
      << "        if " << noun << "_item > " << k << ":\n"
      << "            " << acc << "_total += " << noun << "_item * " << m << "\n"
      << "    return " << acc << "_total\n";
    std::ostringstream c;
    c << "def f(xs):\n"
      << "    s = 0\n"
      << "    i = 0\n"
      << "    while i < len(xs):\n"
      << "        if xs[i] > " << k << ":\n"
      << "            s = s + xs[i] * " << m << "\n"
      << "        i += 1\n"
      << "    return s\n";
    corpus::PairRecord r;
    r.id = prefix + std::to_string(i);
    r.query = verb + " " + noun + " " + acc;
    r.code = c.str();
    if (test) {
      sc.dataset.test.push_back(r);
      sc.exemplars.push_back(e.str());
    } else {
      sc.dataset.train.push_back(r);
    }
  };
  for (std::size_t i = 0; i < test_size; ++i) make(i, "s", true);
  for (std::size_t i = 0; i < 4; ++i) make(test_size + i, "r", false);
  return sc;
}

augment::Completion TableLlm::complete(const augment::ChatRequest& request) {
  ++calls_;
  const auto& table = request.kind == augment::PromptKind::kGenerate ? by_query_ : by_code_;
  if (auto it = table.find(request.target); it != table.end()) return {it->second, false};
  return {request.target, false};
}

TableLlm style_mock(const StyleCorpus& sc) {
  std::map<std::string, std::string> by_query;
  std::map<std::string, std::string> by_code;
  for (std::size_t i = 0; i < sc.dataset.test.size(); ++i) {
    by_query[sc.dataset.test[i].query] = sc.exemplars[i];
    // Several test codes can coincide textually; the first pairing wins.
    by_code.emplace(sc.dataset.test[i].code, sc.dataset.test[i].query);
  }
  return TableLlm(std::move(by_query), std::move(by_code));
}

augment::LlmEndpoint mock_endpoint(const std::string& model) {
  augment::LlmEndpoint e;
  e.base_url = "mock://";
  e.model = model;
  e.concurrency = 4;
  return e;
}

void augment_test_split(const corpus::Dataset& dataset, augment::LlmClient& client,
                        corpus::AugmentationStore& store, const std::string& model, int n,
                        std::uint64_t seed) {
  const auto endpoint = mock_endpoint(model);
  augment::Augmentor aug(client, endpoint, dataset.train, dataset.language, nullptr, &store);
  augment::run_augmentation(aug, dataset.test, augment::JobKind::kGenerate, n, seed,
                            endpoint.concurrency, &store, model);
  augment::run_augmentation(aug, dataset.test, augment::JobKind::kRewrite, n, seed,
                            endpoint.concurrency, &store, model);
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("reco-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace reco::testing
