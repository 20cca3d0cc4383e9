#pragma once

// Small categories used across the test suites, built in code.

#include <limits>

#include "qbisim/bisim.hpp"
#include "qbisim/quantaloid.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim::testing {

inline QuantaloidPtr ql_m2() {
  static const QuantaloidPtr q = quantaloids::language({"m"}, 2);
  return q;
}

inline QuantaloidPtr q2() {
  static const QuantaloidPtr q = quantaloids::boolean();
  return q;
}

inline QuantaloidPtr m3() {
  static const QuantaloidPtr q = quantaloids::metric({0, 1, 2, std::numeric_limits<double>::infinity()});
  return q;
}

// a0 --m--> a1
inline VCatPtr aut1(const QuantaloidPtr& q = ql_m2()) {
  Graph g;
  g.vertices = {{"a0", 0}, {"a1", 0}};
  g.edges = {{0, 1, quantaloids::words(*q, {"m"})}};
  return free_vcategory(q, g);
}

// b0 --m--> b0
inline VCatPtr loop1(const QuantaloidPtr& q = ql_m2()) {
  Graph g;
  g.vertices = {{"b0", 0}};
  g.edges = {{0, 0, quantaloids::words(*q, {"m"})}};
  return free_vcategory(q, g);
}

// Q2-category from explicit hom bits (row major).
inline VCatPtr q2_category(std::vector<std::string> names, const std::vector<int>& homs) {
  const auto n = names.size();
  VCategory a(q2(), std::move(names), std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) a.set_hom(x, y, Elem::at(homs[x * n + y]));
  }
  return std::make_shared<const VCategory>(std::move(a));
}

// a0 <= a1
inline VCatPtr p01() { return q2_category({"a0", "a1"}, {1, 1, 0, 1}); }
inline VCatPtr point() { return q2_category({"p"}, {1}); }
inline VCatPtr codiscrete2() { return q2_category({"x", "y"}, {1, 1, 1, 1}); }
inline VCatPtr discrete2() { return q2_category({"x", "y"}, {1, 0, 0, 1}); }

}  // namespace qbisim::testing
