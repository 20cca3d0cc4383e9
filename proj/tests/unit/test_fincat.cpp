#include <doctest.h>

#include "qbisim/fincat.hpp"

using namespace qbisim;

TEST_CASE("poset categories are valid with meets as pullbacks") {
  auto c = FiniteCategory::chain(2);
  CHECK(validate_fincat(c).ok());
  CHECK(c.morphism_count() == 3);
  CHECK(c.has_pullbacks());
  auto diamond = FiniteCategory::poset({"b", "x", "y", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(validate_fincat(diamond).ok());
  const auto xt = diamond.hom(1, 3).front();
  const auto yt = diamond.hom(2, 3).front();
  auto pb = diamond.pullback(xt, yt);
  REQUIRE(pb);
  CHECK(pb->apex == 0);
}

TEST_CASE("broken associativity is reported") {
  // one object, morphisms id, a, b with a;a = b, a;b = a, b;a = b
  FiniteCategory::Spec s;
  s.objects = {"o"};
  s.morphisms = {{"id", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
  s.identities = {0};
  for (std::uint32_t f = 0; f < 3; ++f) {
    s.compose.push_back({0, f, f});
    s.compose.push_back({f, 0, f});
  }
  s.compose.push_back({1, 1, 2});
  s.compose.push_back({1, 2, 1});
  s.compose.push_back({2, 1, 2});
  s.compose.push_back({2, 2, 1});
  auto r = validate_fincat(FiniteCategory(s));
  CHECK(r.has("associativity"));
}

TEST_CASE("a non-universal chosen pullback is reported") {
  auto good = FiniteCategory::chain(2);
  auto spec = good.spec();
  // cospan (0<=1, 0<=1) has pullback 0; replace by the cone with apex 0 but
  // then make the cospan (id_1, id_1) point at apex 0, which misses the cone from 1
  const auto id1 = good.identity(1);
  for (auto& [key, pb] : spec.pullbacks) {
    if (key.first == id1 && key.second == id1) pb = {0, *good.find_morphism("0<=1"), *good.find_morphism("0<=1")};
  }
  auto r = validate_fincat(FiniteCategory(spec));
  CHECK(r.has("pullback"));
}

TEST_CASE("functors and exactness") {
  auto small = std::make_shared<const FiniteCategory>(FiniteCategory::chain(2));
  auto big = std::make_shared<const FiniteCategory>(FiniteCategory::chain(3));
  auto inc = CatFunctor::from_objects(small, big, {0, 1});
  CHECK(validate_cat_functor(inc).ok());
  CHECK(check_preserves_pullbacks(inc).ok());
  // 0 <= 1 and 2 <= 1 in a V shape: pullback of the two legs does not exist
  // when mapping into a poset without that meet; use the collapse to a point
  auto point = std::make_shared<const FiniteCategory>(FiniteCategory::chain(1));
  auto collapse = CatFunctor::from_objects(small, point, {0, 0});
  CHECK(validate_cat_functor(collapse).ok());
  CHECK(check_preserves_pullbacks(collapse).ok());
}
