#include "reco/sparse.hpp"

namespace reco::sparse {
namespace {

bool is_word_byte(unsigned char c, bool keep_underscore) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c >= 0x80 || (keep_underscore && c == '_');
}

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }

void push_lower(std::vector<std::string>& out, std::string_view word) {
  if (word.empty()) return;
  std::string term(word);
  for (auto& ch : term) {
    if (is_upper(static_cast<unsigned char>(ch))) ch = static_cast<char>(ch - 'A' + 'a');
  }
  out.push_back(std::move(term));
}

// camelCase / PascalCase / ACRONYMWord boundaries inside one alphanumeric run.
void split_camel(std::vector<std::string>& out, std::string_view word) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    const auto prev = static_cast<unsigned char>(word[i - 1]);
    const auto cur = static_cast<unsigned char>(word[i]);
    const bool lower_to_upper = (is_lower(prev) || (prev >= '0' && prev <= '9')) && is_upper(cur);
    const bool acronym_end = is_upper(prev) && is_upper(cur) && i + 1 < word.size() &&
                             is_lower(static_cast<unsigned char>(word[i + 1]));
    if (lower_to_upper || acronym_end) {
      push_lower(out, word.substr(start, i - start));
      start = i;
    }
  }
  push_lower(out, word.substr(start));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, TokenizerOptions options) {
  std::vector<std::string> out;
  const bool keep_underscore = !options.split_identifiers;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]), keep_underscore)) {
      ++i;
    }
    const std::size_t start = i;
    while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]), keep_underscore)) {
      ++i;
    }
    if (i == start) continue;
    const auto word = text.substr(start, i - start);
    if (options.split_identifiers) {
      split_camel(out, word);
    } else {
      push_lower(out, word);
    }
  }
  return out;
}

namespace {

AugmentedText augment(std::string_view original, std::span<const std::string> gens,
                      std::string source_id) {
  AugmentedText out;
  out.source_id = std::move(source_id);
  out.n = static_cast<int>(gens.size());
  if (gens.empty()) {
    out.text = std::string(original);
    return out;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out.text += '\n';
    out.text += original;
  }
  for (const auto& g : gens) {
    out.text += '\n';
    out.text += g;
  }
  return out;
}

}  // namespace

AugmentedText build_augmented_query(std::string_view query, std::span<const std::string> gens,
                                    std::string source_id) {
  return augment(query, gens, std::move(source_id));
}

AugmentedText build_augmented_code(std::string_view code, std::span<const std::string> rewrites,
                                   std::string source_id) {
  return augment(code, rewrites, std::move(source_id));
}

}  // namespace reco::sparse
