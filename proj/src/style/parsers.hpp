#pragma once

#include <string_view>

#include "ast_builder.hpp"

namespace reco::style::detail {

// Both throw ParseFailure when the input is not valid for the grammar.
PNode parse_python_tree(std::string_view src);
PNode parse_java_tree(std::string_view src);

}  // namespace reco::style::detail
