#include <algorithm>
#include <numeric>

#include "reco/augmentor.hpp"
#include "reco/error.hpp"

namespace reco::augment {
namespace {

constexpr const char* kCardinals[] = {"zero", "one", "two", "three", "four", "five", "six",
                                      "seven", "eight", "nine", "ten", "eleven", "twelve"};
constexpr const char* kOrdinals[] = {"zeroth", "first", "second", "third", "fourth",
                                     "fifth", "sixth", "seventh", "eighth", "ninth",
                                     "tenth", "eleventh", "twelfth", "thirteenth"};

std::string cardinal(std::size_t n) {
  return n < std::size(kCardinals) ? kCardinals[n] : std::to_string(n);
}

std::string ordinal(std::size_t n) {
  if (n < std::size(kOrdinals)) return kOrdinals[n];
  return std::to_string(n) + "th";
}

std::string show_examples(std::size_t k) {
  if (k == 0) return {};
  return k == 1 ? " I will show you one example first."
                : " I will show you " + cardinal(k) + " examples first.";
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

std::vector<Shot> sample_shots(std::span<const corpus::PairRecord> train, std::size_t k,
                               std::mt19937_64& rng) {
  if (k > train.size()) {
    throw ConfigError("cannot sample " + std::to_string(k) + " shots from " +
                      std::to_string(train.size()) + " training pairs");
  }
  // Partial Fisher-Yates: the first k slots end up as a uniform draw in draw order.
  std::vector<std::size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Shot> shots;
  shots.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
    const auto& rec = train[idx[i]];
    shots.push_back({rec.query, rec.code});
  }
  return shots;
}

PromptTemplate build_gen_prompt(std::string_view query, std::vector<Shot> shots,
                                Language language) {
  if (blank(query)) throw ConfigError("generation prompt needs a non-empty description");
  PromptTemplate p;
  p.kind = PromptKind::kGenerate;
  p.language = language;
  p.instruction = "Please generate a " + to_string(language) +
                  " code snippet according to the last given description. Only output the "
                  "code snippets. Do not explain the code." +
                  show_examples(shots.size());
  p.shots = std::move(shots);
  p.target = std::string(query);
  return p;
}

PromptTemplate build_sum_prompt(std::string_view code, std::vector<Shot> shots,
                                Language language) {
  if (blank(code)) throw ConfigError("summarization prompt needs non-empty code");
  PromptTemplate p;
  p.kind = PromptKind::kSummarize;
  p.language = language;
  p.instruction = "What is the main purpose of the " + ordinal(shots.size() + 1) + " " +
                  to_string(language) +
                  " code snippet? Summarize in one sentence and be concise." +
                  show_examples(shots.size());
  p.shots = std::move(shots);
  p.target = std::string(code);
  return p;
}

std::string PromptTemplate::render() const {
  std::string out = instruction;
  out += "\n\n";
  for (const auto& shot : shots) {
    if (kind == PromptKind::kGenerate) {
      out += "Description: " + shot.query + "\nCode:\n" + shot.code + "\n\n";
    } else {
      out += "Code:\n" + shot.code + "\nPurpose: " + shot.query + "\n\n";
    }
  }
  if (kind == PromptKind::kGenerate) {
    out += "Description: " + target + "\nCode:\n";
  } else {
    out += "Code:\n" + target + "\nPurpose:";
  }
  return out;
}

std::string trim_completion(std::string_view completion) {
  std::string_view body = completion;
  if (const auto fence = body.find("```"); fence != std::string_view::npos) {
    // Content of the first fenced block; the opening fence line may carry a language tag.
    auto start = body.find('\n', fence);
    start = start == std::string_view::npos ? body.size() : start + 1;
    auto stop = body.find("```", start);
    body = body.substr(start, stop == std::string_view::npos ? std::string_view::npos
                                                             : stop - start);
  }
  // Drop leading blank lines but keep the first line's indentation.
  while (!body.empty()) {
    const auto nl = body.find('\n');
    const auto line = body.substr(0, nl);
    if (!blank(line) || nl == std::string_view::npos) break;
    body.remove_prefix(nl + 1);
  }
  const auto last = body.find_last_not_of(" \t\r\n");
  if (last == std::string_view::npos) return {};
  return std::string(body.substr(0, last + 1));
}

}  // namespace reco::augment
