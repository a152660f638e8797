// Prints one PASS/FAIL line per acceptance criterion. With --only <name> a
// single criterion is run; the exit status is nonzero if any selected one fails.

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "criteria.hpp"

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::err);
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--only <criterion>]\n";
      return 2;
    }
  }
  const char* env = std::getenv("RECO_DATA_DIR");
  const std::filesystem::path data_dir = env ? env : "data";

  using reco::testing::Verdict;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"bm25_reproduction", [&] { return reco::testing::check_bm25_reproduction(data_dir); }},
      {"mock_llm_properties", [] { return reco::testing::check_mock_llm_properties(); }},
      {"cssim_axioms", [] { return reco::testing::check_cssim_axioms(); }},
      {"oracle_equivalence", [] { return reco::testing::check_oracle_equivalence(); }},
      {"closed_form", [] { return reco::testing::check_closed_forms(); }},
      {"baseline_metric_oracles", [] { return reco::testing::check_baseline_metric_oracles(); }},
      {"harness_consistency", [] { return reco::testing::check_harness_consistency(); }},
  };

  bool all = true;
  bool ran = false;
  for (const auto& [name, check] : checks) {
    if (!only.empty() && name != only) continue;
    ran = true;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {name, false, std::string("threw: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    all = all && v.pass;
  }
  if (!ran) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all ? 0 : 1;
}
