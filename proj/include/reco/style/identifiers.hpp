#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reco/corpus.hpp"
#include "reco/style/syntax_tree.hpp"

namespace reco::style {

enum class IdentifierRole : std::uint8_t { kVariable, kApi };

// Distinct identifier texts with their occurrence counts.
class IdentifierSet {
 public:
  explicit IdentifierSet(IdentifierRole role = IdentifierRole::kVariable) : role_(role) {}
  IdentifierSet(IdentifierRole role, std::initializer_list<std::string_view> texts);

  IdentifierRole role() const { return role_; }
  // Empty texts are ignored.
  void add(std::string_view text, std::size_t count = 1);
  bool contains(std::string_view text) const { return counts_.find(text) != counts_.end(); }
  std::size_t count(std::string_view text) const;
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  const std::map<std::string, std::size_t, std::less<>>& counts() const { return counts_; }
  std::vector<std::string> texts() const;

 private:
  IdentifierRole role_;
  std::map<std::string, std::size_t, std::less<>> counts_;
};

// Variables bound in the snippet: assignment targets, parameters, loop and
// comprehension variables, exception names (python); declarators,
// parameters and pattern variables (java).
IdentifierSet extract_variables(const SyntaxTree& tree, Language language);

// Callee names at call sites. Dotted receivers made only of names keep the
// whole path ("collections.Counter", "System.out.println"); any other
// receiver contributes just the method name. Java object creation counts as
// a call of the type name.
IdentifierSet extract_apis(const SyntaxTree& tree, Language language);

// idf(t) = ln((D+1)/(df(t)+1)) + 1 over D documents.
class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::size_t document_count, std::map<std::string, std::size_t, std::less<>> df);

  std::size_t document_count() const { return documents_; }
  std::size_t document_frequency(std::string_view text) const;
  // Unseen identifiers get the df = 0 weight.
  double weight(std::string_view text) const;
  double max_weight() const;
  std::size_t vocabulary_size() const { return df_.size(); }

 private:
  std::size_t documents_ = 0;
  std::map<std::string, std::size_t, std::less<>> df_;
};

// One document per set. Throws ConfigError on an empty corpus.
IdfTable idf_weights(std::span<const IdentifierSet> corpus);

// One document per snippet holding its variables and APIs together.
IdfTable idf_from_code(std::span<const std::string> codes, Language language);

}  // namespace reco::style
