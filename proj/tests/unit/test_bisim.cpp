#include <doctest.h>

#include <algorithm>
#include <functional>

#include "qbisim/bisim.hpp"
#include "qbisim/random.hpp"
#include "../oracles/brute.hpp"
#include "../support/builders.hpp"

using namespace qbisim;
using namespace qbisim::testing;

namespace {

oracle::Pairs sorted(oracle::Pairs p) {
  std::sort(p.begin(), p.end());
  return p;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InternalAssertion;
}

}  // namespace

TEST_CASE("relation algebra") {
  auto a = p01();
  auto d = SimRelation::diagonal(a);
  CHECK(d.size() == 2);
  CHECK(d.total_left());
  CHECK(d.inverse() == d);
  CHECK(d.compose(d) == d);
  auto f = SimRelation::full(a, a);
  CHECK(f.size() == 4);
  CHECK(d.is_subset_of(f));
  CHECK(d.unite(f) == f);
  CHECK(kind_of([&] { d.compose(SimRelation::full(point(), a)); }) == ErrorKind::EndpointMismatch);
  auto mixed = quantaloids::rel({{"p", "q"}, {"r", "s", "t"}});
  VCategory v(mixed, {"x", "y"}, {0, 1});
  auto vp = std::make_shared<const VCategory>(v);
  SimRelation r(vp, vp);
  CHECK(kind_of([&] { r.insert(0, 1); }) == ErrorKind::TypeMismatch);
}

TEST_CASE("fixture verdicts") {
  auto a = aut1();
  auto l = loop1();
  auto bis = largest_bisimulation(a, l);
  CHECK(bis.relation.empty());
  CHECK(simulates(a, l));
  CHECK_FALSE(simulates(l, a));
  CHECK_FALSE(bisimilar(a, l));
  CHECK(bisimilar(p01(), point()));
  CHECK(bisimilar(codiscrete2(), point()));
  CHECK(bisimilar(discrete2(), point()));
  auto s = largest_simulation(a, l);
  CHECK(s.relation.size() == 2);
}

TEST_CASE("counterexamples name a failing pair") {
  auto a = aut1();
  auto l = loop1();
  auto r = SimRelation::from_pairs(a, l, {{0, 0}, {1, 0}});
  auto c = check_bisimulation(r);
  REQUIRE_FALSE(c.holds);
  REQUIRE(c.counterexample);
  CHECK(c.counterexample->converse);
  CHECK(is_simulation(r));
  auto half = SimRelation::from_pairs(a, l, {{0, 0}});
  auto hc = check_simulation(half);
  REQUIRE_FALSE(hc.holds);
  CHECK(hc.counterexample->a == 0);
  CHECK(hc.counterexample->a2 == 1);
}

TEST_CASE("refinement agrees with brute force") {
  gen::Rng rng(77);
  for (auto base : {q2(), ql_m2(), m3(), quantaloids::rel({{"p"}, {"r", "s"}})}) {
    for (int round = 0; round < 60; ++round) {
      auto a = gen::vcategory(base, 1 + rng() % 3, rng);
      auto b = gen::vcategory(base, 1 + rng() % 3, rng);
      auto sim = largest_simulation(a, b);
      auto bis = largest_bisimulation(a, b);
      CHECK(sorted(sim.relation.pairs()) == sorted(oracle::largest_simulation(*a, *b)));
      CHECK(sorted(bis.relation.pairs()) == sorted(oracle::largest_bisimulation(*a, *b)));
      CHECK(is_simulation(sim.relation));
      CHECK(is_bisimulation(bis.relation));
      CHECK(bis.relation.is_subset_of(sim.relation));
      CHECK(oracle::is_simulation(*a, *b, sim.relation.pairs()));
      for (const auto& rm : sim.trace) {
        CHECK_FALSE(sim.relation.contains(rm.a, rm.b));
        CHECK(rm.round >= 1);
        CHECK(rm.round <= sim.rounds);
      }
    }
  }
}

TEST_CASE("simulation checks agree with brute force on random relations") {
  gen::Rng rng(5);
  for (auto base : {q2(), ql_m2(), m3()}) {
    for (int round = 0; round < 200; ++round) {
      auto a = gen::vcategory(base, 1 + rng() % 3, rng);
      auto b = gen::vcategory(base, 1 + rng() % 3, rng);
      SimRelation r(a, b);
      for (auto [x, y] : oracle::candidates(*a, *b)) {
        if (rng() % 2) r.insert(x, y);
      }
      CHECK(is_simulation(r) == oracle::is_simulation(*a, *b, r.pairs()));
      CHECK(is_bisimulation(r) == oracle::is_bisimulation(*a, *b, r.pairs()));
    }
  }
}

TEST_CASE("bisimulations are closed under inverse, composition and union") {
  gen::Rng rng(21);
  for (auto base : {q2(), ql_m2()}) {
    for (int round = 0; round < 40; ++round) {
      auto a = gen::vcategory(base, 1 + rng() % 3, rng);
      auto b = gen::vcategory(base, 1 + rng() % 3, rng);
      auto c = gen::vcategory(base, 1 + rng() % 3, rng);
      auto ab = largest_bisimulation(a, b).relation;
      auto bc = largest_bisimulation(b, c).relation;
      CHECK(is_bisimulation(ab.inverse()));
      CHECK(is_bisimulation(ab.compose(bc)));
      auto d = SimRelation::diagonal(a);
      CHECK(is_bisimulation(d));
      auto aa = largest_bisimulation(a, a).relation;
      CHECK(is_bisimulation(aa.unite(d)));
      CHECK(d.is_subset_of(aa));
    }
  }
}

TEST_CASE("functional bisimulations") {
  VFunctor collapse{codiscrete2(), point(), {0, 0}};
  CHECK(is_od(collapse));
  VFunctor to_point{p01(), point(), {0, 0}};
  CHECK(is_od(to_point));
  VFunctor fold{aut1(), loop1(), {0, 0}};
  CHECK(validate_vfunctor(fold).ok());
  CHECK_FALSE(is_functional_bisimulation(fold));
  VFunctor incl{point(), p01(), {1}};
  CHECK(is_functional_bisimulation(incl));
  CHECK_FALSE(is_od(incl));

  gen::Rng rng(3);
  for (auto base : {q2(), ql_m2(), m3()}) {
    for (int round = 0; round < 60; ++round) {
      auto f = gen::od_map(base, 1 + rng() % 3, rng);
      CHECK(validate_vfunctor(f).ok());
      CHECK(is_od(f));
      CHECK(oracle::functional_bisimulation(*f.source, *f.target, f.map));
      auto g = gen::functor_into(f.target, 1 + rng() % 3, rng);
      CHECK(is_functional_bisimulation(g) == oracle::functional_bisimulation(*g.source, *g.target, g.map));
    }
  }
}

TEST_CASE("quotients") {
  auto c = codiscrete2();
  auto e = equivalence_closure(largest_bisimulation(c, c).relation);
  CHECK(e.blocks.size() == 1);
  auto q = quotient(e);
  CHECK(q.category->size() == 1);
  CHECK(q.category->hom(0, 0) == Elem::at(1));
  CHECK(q.category->name(0) == "[x,y]");
  CHECK(is_od(q.map));

  auto p = p01();
  auto pe = equivalence_closure(largest_bisimulation(p, p).relation);
  CHECK(pe.blocks.size() == 1);
  auto pq = quotient(pe);
  CHECK(pq.category->size() == 1);
  CHECK(pq.category->hom(0, 0) == Elem::at(1));

  auto bad = SimRelation::full(aut1(), aut1());
  CHECK(kind_of([&] { equivalence_closure(bad); }) == ErrorKind::NotABisimulation);

  gen::Rng rng(8);
  for (auto base : {q2(), ql_m2(), m3()}) {
    for (int round = 0; round < 40; ++round) {
      auto a = gen::inflate(gen::vcategory(base, 1 + rng() % 3, rng), 3, rng).source;
      auto eq = gen::bisim_equivalence(a, rng);
      auto qq = quotient(eq);
      CHECK(validate_vcategory(*qq.category).ok());
      CHECK(is_od(qq.map));
      CHECK(bisimilar(a, qq.category));
    }
  }
}

TEST_CASE("witnesses") {
  auto c = codiscrete2();
  auto r = largest_bisimulation(c, point()).relation;
  auto w = cospan_witness(r);
  CHECK(is_od(w.left));
  CHECK(is_od(w.right));
  auto s = span_witness(r);
  CHECK(is_od(s.left));
  CHECK(is_od(s.right));
  for (std::uint32_t x = 0; x < s.apex->size(); ++x) CHECK(r.contains(s.left.map[x], s.right.map[x]));

  auto empty = largest_bisimulation(aut1(), loop1()).relation;
  const auto k = kind_of([&] { cospan_witness(empty); });
  CHECK((k == ErrorKind::NotBisimilar || k == ErrorKind::NotABisimulation));

  gen::Rng rng(31);
  for (auto base : {q2(), ql_m2()}) {
    for (int round = 0; round < 30; ++round) {
      auto cc = gen::vcategory(base, 1 + rng() % 3, rng);
      auto f = gen::inflate(cc, 2, rng);
      auto g = gen::inflate(cc, 2, rng);
      auto rr = largest_bisimulation(f.source, g.source).relation;
      REQUIRE(rr.total_left());
      REQUIRE(rr.total_right());
      auto cw = cospan_witness(rr);
      CHECK(is_od(cw.left));
      CHECK(is_od(cw.right));
      auto sw = span_witness(rr);
      CHECK(is_od(sw.left));
      CHECK(is_od(sw.right));
    }
  }
}

TEST_CASE("span witness needs a locally distributive base") {
  // Pentagon lattice with meet as tensor: one object, unit = top.
  Quantaloid::Data d;
  d.label = "N5";
  d.objects = {"*"};
  auto n5 = Lattice::from_order({{"bot", "a", "b", "c", "top"},
                                 {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 4}, {3, 4}}});
  d.homs = {n5};
  d.ids = {Elem::at(4)};
  std::vector<std::uint32_t> table;
  for (std::uint32_t u = 0; u < 5; ++u) {
    for (std::uint32_t v = 0; v < 5; ++v) table.push_back(n5->meet(Elem::at(u), Elem::at(v)).index());
  }
  auto t = std::make_shared<DenseTensor>(1);
  t->set(0, 0, 0, table);
  d.tensor = t;
  auto q = Quantaloid::make(std::move(d));
  REQUIRE_FALSE(q->locally_distributive());
  VCategory one(q, {"p"}, {0});
  one.set_hom(0, 0, Elem::at(4));
  auto p = std::make_shared<const VCategory>(one);
  auto r = SimRelation::diagonal(p);
  CHECK(kind_of([&] { span_witness(r); }) == ErrorKind::NotLocallyDistributive);
}
