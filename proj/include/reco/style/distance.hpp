#pragma once

#include <cstddef>
#include <string_view>

#include "reco/style/identifiers.hpp"
#include "reco/style/syntax_tree.hpp"

namespace reco::style {

// Unit-cost Levenshtein distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Textbook two-row dynamic program; kept for cross-checking the fast path.
std::size_t levenshtein_dp(std::string_view a, std::string_view b);

// levenshtein(a, b) / max(|a|, |b|), and 0 when both are empty.
double norm_edit_distance(std::string_view a, std::string_view b);

// IDF-weighted mean over the texts of v1 of the smallest normalized edit
// distance to any text of v2. Both empty gives 0, exactly one empty gives 1.
double dis_one_sided(const IdentifierSet& v1, const IdentifierSet& v2, const IdfTable& idf);

double dis_symmetric(const IdentifierSet& v1, const IdentifierSet& v2, const IdfTable& idf);

enum class TedLabels : std::uint8_t {
  kKind,  // syntactic kind only
  kFull,  // kind plus identifier / literal text
};

// Zhang-Shasha unit-cost tree edit distance. Throws SizeLimitError when
// either tree exceeds kMaxTreeNodes.
std::size_t tree_edit_distance_raw(const SyntaxTree& t1, const SyntaxTree& t2,
                                   TedLabels labels = TedLabels::kKind);

// Raw distance over max(|t1|, |t2|), capped at 1.
double tree_edit_distance(const SyntaxTree& t1, const SyntaxTree& t2,
                          TedLabels labels = TedLabels::kKind);

}  // namespace reco::style
