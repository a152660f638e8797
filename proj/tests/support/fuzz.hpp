#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "reco/corpus.hpp"

namespace reco::testing {

// Random but mostly well-formed snippets: functions with assignments, loops,
// branches, calls and returns over a small identifier pool. Roughly one in
// `broken_every` snippets gets a random byte deleted so the fallback path is
// exercised as well (0 disables that).
std::string random_python(std::mt19937_64& rng, int broken_every = 10);
std::string random_java(std::mt19937_64& rng, int broken_every = 10);
std::string random_snippet(std::mt19937_64& rng, Language language, int broken_every = 10);

// Random lowercase word of 1..max_len letters drawn from `alphabet`.
std::string random_word(std::mt19937_64& rng, std::size_t max_len, std::string_view alphabet);

}  // namespace reco::testing
