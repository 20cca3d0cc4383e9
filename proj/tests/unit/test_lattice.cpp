#include <doctest.h>

#include <random>

#include "qbisim/lattice.hpp"
#include "qbisim/quantaloid.hpp"

using namespace qbisim;

namespace {

OrderSpec diamond_spec() { return {{"bot", "a", "b", "top"}, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}}; }

OrderSpec pentagon_spec() {
  // bot < a < b < top, bot < c < top
  return {{"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 4}, {3, 4}}};
}

}  // namespace

TEST_CASE("order queries") {
  auto two = Lattice::chain({"0", "1"});
  CHECK(two->leq(Elem::at(0), Elem::at(1)));
  CHECK_FALSE(two->leq(Elem::at(1), Elem::at(0)));
  auto d = Lattice::from_order(diamond_spec());
  for (const auto& x : d->elements()) CHECK(d->leq(x, x));
  CHECK_FALSE(d->leq(Elem::at(1), Elem::at(2)));
  CHECK(d->join(Elem::at(1), Elem::at(2)) == Elem::at(3));
  CHECK(d->meet(Elem::at(1), Elem::at(2)) == Elem::at(0));
  CHECK_THROWS_AS(d->leq(Elem::at(7), Elem::at(0)), Error);
}

TEST_CASE("empty joins and meets") {
  auto d = Lattice::from_order(diamond_spec());
  CHECK(d->join(std::span<const Elem>{}) == d->bottom());
  CHECK(d->meet(std::span<const Elem>{}) == d->top());
  auto p = Lattice::powerset({"", "m"});
  CHECK(p->join(std::span<const Elem>{}) == p->bottom());
}

TEST_CASE("powerset join is union") {
  auto p = Lattice::powerset({"", "m"});
  const Elem m = p->atom(1), eps = p->atom(0);
  CHECK(p->join(m, eps) == p->top());
  CHECK(p->format(p->top()) == "{ε,m}");
}

TEST_CASE("metric grid join is the numeric minimum") {
  auto q = quantaloids::metric({0, 1, 2, INFINITY});
  const Lattice& h = *q->hom(0, 0);
  CHECK(h.join(Elem::at(1), Elem::at(2)) == Elem::at(1));
  CHECK(h.top() == Elem::at(0));
  CHECK(h.bottom() == Elem::at(3));
}

TEST_CASE("validation reports missing transitivity") {
  OrderSpec s{{"x", "y", "z"}, {{0, 1}, {1, 2}}};
  auto r = validate_lattice(s);
  CHECK_FALSE(r.ok());
  CHECK(r.has("transitivity"));
  CHECK(validate_lattice(diamond_spec()).ok());
  CHECK(validate_lattice({{"0", "1"}, {{0, 1}}}).ok());
  CHECK_THROWS_AS(Lattice::from_order(s), Error);
}

TEST_CASE("validation reports missing joins and antisymmetry") {
  // two maximal elements: no top
  auto r = validate_lattice({{"bot", "a", "b"}, {{0, 1}, {0, 2}}});
  CHECK_FALSE(r.ok());
  auto r2 = validate_lattice({{"a", "b"}, {{0, 1}, {1, 0}}});
  CHECK(r2.has("antisymmetry"));
  CHECK(validate_lattice({{}, {}}).has("empty"));
}

TEST_CASE("distributivity") {
  CHECK(Lattice::from_order(diamond_spec())->is_distributive());
  CHECK_FALSE(Lattice::from_order(pentagon_spec())->is_distributive());
  CHECK(Lattice::chain({"0", "1", "2"})->is_distributive());
  CHECK(Lattice::powerset({"a", "b", "c"})->is_distributive());
  // M3 is not distributive
  OrderSpec m3{{"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}}};
  CHECK_FALSE(Lattice::from_order(m3)->is_distributive());
}

TEST_CASE("join in a lattice is meet in its dual") {
  auto p = Lattice::from_order(pentagon_spec());
  auto d = p->dual();
  for (const auto& x : p->elements()) {
    for (const auto& y : p->elements()) CHECK(p->join(x, y) == d->meet(x, y));
  }
}

TEST_CASE("join is monotone in the subset") {
  auto p = Lattice::from_order(pentagon_spec());
  auto all = p->elements();
  std::mt19937 rng(3);
  for (int round = 0; round < 200; ++round) {
    std::vector<Elem> s, t;
    for (const auto& e : all) {
      const bool in_s = rng() & 1;
      if (in_s) s.push_back(e);
      if (in_s || (rng() & 1)) t.push_back(e);
    }
    CHECK(p->leq(p->join(s), p->join(t)));
  }
}

TEST_CASE("right adjoints") {
  auto two = Lattice::chain({"0", "1"});
  auto id = MonotoneMap::identity(two);
  CHECK(right_adjoint_of_monotone(id).equals(id));

  auto top = MonotoneMap::tabulated(two, two, {Elem::at(1), Elem::at(1)});
  CHECK_THROWS_AS(right_adjoint_of_monotone(top), Error);

  auto d = Lattice::from_order(diamond_spec());
  auto collapse = MonotoneMap::tabulated(d, two, {Elem::at(0), Elem::at(0), Elem::at(0), Elem::at(1)});
  CHECK(collapse.validate().ok());
  try {
    right_adjoint_of_monotone(collapse);
    FAIL("expected NoAdjoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoAdjoint);
  }
}

TEST_CASE("Galois property of every computed right adjoint") {
  auto p = Lattice::powerset({"x", "y", "z"});
  auto c = Lattice::chain({"0", "1", "2"});
  std::mt19937 rng(8);
  int found = 0;
  for (int round = 0; round < 300; ++round) {
    // random join-preserving map from the powerset: choose atom images
    std::vector<Elem> atom_img;
    for (int i = 0; i < 3; ++i) atom_img.push_back(Elem::at(rng() % 3));
    std::vector<Elem> table;
    for (const auto& s : p->elements()) {
      Elem acc = c->bottom();
      s.bits().for_each([&](std::size_t i) { c->join_into(acc, atom_img[i]); });
      table.push_back(acc);
    }
    auto f = MonotoneMap::tabulated(p, c, table);
    auto g = right_adjoint_of_monotone(f);
    ++found;
    for (const auto& v : p->elements()) {
      for (const auto& w : c->elements()) CHECK(c->leq(f(v), w) == p->leq(v, g(w)));
    }
  }
  CHECK(found == 300);
}

TEST_CASE("monotone map validation") {
  auto two = Lattice::chain({"0", "1"});
  auto flip = MonotoneMap::tabulated(two, two, {Elem::at(1), Elem::at(0)});
  CHECK_FALSE(flip.validate().ok());
}
