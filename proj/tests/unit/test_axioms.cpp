#include <doctest.h>

#include "qbisim/axioms.hpp"
#include "../support/builders.hpp"

using namespace qbisim;
using namespace qbisim::testing;

TEST_CASE("axiom suite parsing") {
  CHECK(parse_axiom_suite("A1..A6") == std::vector<std::string>{"A1", "A2", "A3", "A4", "A5", "A6"});
  CHECK(parse_axiom_suite("A2,A5") == std::vector<std::string>{"A2", "A5"});
  CHECK(parse_axiom_suite("A4") == std::vector<std::string>{"A4"});
  CHECK_THROWS_AS(parse_axiom_suite("A7"), Error);
  CHECK_THROWS_AS(parse_axiom_suite("A3..A1"), Error);
}

TEST_CASE("axioms hold on small batches") {
  for (auto base : {q2(), ql_m2(), m3()}) {
    const auto results = run_axioms(base, parse_axiom_suite("A1..A6"), 17, 25);
    REQUIRE(results.size() == 6);
    for (const auto& r : results) {
      INFO(base->label() << " " << r.axiom << " " << r.note);
      CHECK(r.violations == 0);
      if (!r.skipped) {
        CHECK(r.cases == 25);
        CHECK(r.hypothesis_held > 0);
      }
    }
  }
}

TEST_CASE("runs are reproducible from the seed") {
  const auto a = run_axioms(ql_m2(), {"A3", "A6"}, 99, 20);
  const auto b = run_axioms(ql_m2(), {"A3", "A6"}, 99, 20);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].hypothesis_held == b[i].hypothesis_held);
}
