#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbisim/quantaloid.hpp"

namespace qbisim {

/// Outcome of one axiom over a batch of random instances. A violation is a
/// case where the hypothesis held and the conclusion did not.
struct AxiomResult {
  std::string axiom;
  std::size_t cases = 0;
  std::size_t hypothesis_held = 0;
  std::size_t violations = 0;
  bool skipped = false;
  std::string note;
  std::vector<std::string> examples;
};

// "A1..A6", "A2,A5" or a single name.
std::vector<std::string> parse_axiom_suite(const std::string& text);

/// Builds `cases` instances per axiom from `seed` and checks the class Od
/// against A1 to A6. A2 is skipped over bases that are not locally distributive.
std::vector<AxiomResult> run_axioms(const QuantaloidPtr& base, const std::vector<std::string>& axioms,
                                    std::uint64_t seed, std::size_t cases);

}  // namespace qbisim
