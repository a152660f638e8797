#pragma once

#include <string_view>

#include "reco/corpus.hpp"
#include "reco/style/syntax_tree.hpp"

namespace reco::style {

// Parses a snippet with the grammar for `language`. Input that the grammar
// rejects yields a flat tree (root "Fallback" with one leaf per lexical
// token) and parse_fallback() set. Python snippets are dedented first.
// Throws SizeLimitError when the resulting tree exceeds kMaxTreeNodes.
SyntaxTree parse(std::string_view code, Language language);

// The flat token tree on its own.
SyntaxTree fallback_tree(std::string_view code, Language language);

}  // namespace reco::style
