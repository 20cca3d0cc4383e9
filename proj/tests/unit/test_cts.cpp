#include <doctest.h>

#include "qbisim/bisim.hpp"
#include "qbisim/cts.hpp"
#include "qbisim/random.hpp"
#include "../support/compare.hpp"

using namespace qbisim;
using namespace qbisim::testing;

namespace {

FinCatPtr p2() {
  static const FinCatPtr c = std::make_shared<const FiniteCategory>(FiniteCategory::chain(2));
  return c;
}

FinCatPtr p3() {
  static const FinCatPtr c = std::make_shared<const FiniteCategory>(FiniteCategory::chain(3));
  return c;
}

std::uint32_t arrow(const FiniteCategory& t, const std::string& name) { return *t.find_morphism(name); }

// (y <- a -> z) in a poset
Span span_of(const FiniteCategory& t, std::uint32_t a, std::uint32_t y, std::uint32_t z) {
  return {a, t.hom(a, y).at(0), t.hom(a, z).at(0)};
}

bool iso(const FiniteCategory& t, const Span& s, const Span& u) { return span_leq(t, s, u) && span_leq(t, u, s); }

}  // namespace

TEST_CASE("span calculus in 0 <= 1") {
  const FiniteCategory& t = *p2();
  const Span s = span_of(t, 0, 1, 1);
  const Span u = span_of(t, 1, 1, 1);
  CHECK(span_compose(t, s, u).apex == 0);
  CHECK(span_leq(t, s, u));
  CHECK_FALSE(span_leq(t, u, s));
  CHECK(span_leq(t, s, s));
  const Span id1{1, t.identity(1), t.identity(1)};
  CHECK(iso(t, span_compose(t, id1, s), s));
  CHECK(iso(t, span_compose(t, s, id1), s));
  CHECK_THROWS_AS(span_leq(t, s, span_of(t, 0, 0, 1)), Error);
  CHECK_THROWS_AS(span_compose(t, span_of(t, 0, 0, 0), u), Error);
  CHECK(format_span(t, s) == "(0)");
  CHECK(arrow(t, "0<=1") == t.hom(0, 1).at(0));
}

TEST_CASE("span composition is associative up to iso") {
  for (const auto& c : {p2(), p3()}) {
    const FiniteCategory& t = *c;
    const auto n = static_cast<std::uint32_t>(t.object_count());
    for (std::uint32_t w = 0; w < n; ++w) {
      for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
          for (std::uint32_t z = 0; z < n; ++z) {
            for (const auto& a : enumerate_spans(t, w, x)) {
              for (const auto& b : enumerate_spans(t, x, y)) {
                for (const auto& d : enumerate_spans(t, y, z)) {
                  CHECK(iso(t, span_compose(t, span_compose(t, a, b), d), span_compose(t, a, span_compose(t, b, d))));
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("crible quantaloids") {
  auto one = build_S_quantaloid(std::make_shared<const FiniteCategory>(FiniteCategory::chain(1)));
  CHECK(one->quantaloid()->hom(0, 0)->element_count() == 2);
  CHECK(validate_quantaloid(*one->quantaloid()).ok());

  auto s = build_S_quantaloid(p2());
  const Quantaloid& q = *s->quantaloid();
  CHECK(validate_quantaloid(q).ok());
  const Lattice& h11 = *q.hom(1, 1);
  REQUIRE(h11.element_count() == 3);
  CHECK(h11.names() == std::vector<std::string>{"{}", "{(0)}", "{(0),(1)}"});
  const Elem top = s->principal(1, 1, span_of(*p2(), 1, 1, 1));
  CHECK(q.tensor(1, 1, 1, top, top) == top);
  CHECK(q.id(1) == top);

  auto s3 = build_S_quantaloid(p3());
  CHECK(validate_quantaloid(*s3->quantaloid()).ok());

  // diamond: bottom < a, c < top, with meets
  auto diamond = std::make_shared<const FiniteCategory>(
      FiniteCategory::poset({"b", "a", "c", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  auto sd = build_S_quantaloid(diamond);
  CHECK(validate_quantaloid(*sd->quantaloid()).ok());
}

TEST_CASE("crible tensor is the closure of pointwise composites") {
  for (const auto& c : {p2(), p3()}) {
    auto s = build_S_quantaloid(c);
    const FiniteCategory& t = *c;
    const Quantaloid& q = *s->quantaloid();
    const auto n = static_cast<std::uint32_t>(t.object_count());
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        for (std::uint32_t z = 0; z < n; ++z) {
          for (const auto& m : q.hom(x, y)->elements()) {
            for (const auto& k : q.hom(y, z)->elements()) {
              // direct: every span below some composite
              const auto& xs = s->spans(x, y);
              const auto& ys = s->spans(y, z);
              const auto& zs = s->spans(x, z);
              Bits direct(zs.size());
              for (std::size_t r = 0; r < zs.size(); ++r) {
                s->members(x, y, m).for_each([&](std::size_t i) {
                  s->members(y, z, k).for_each([&](std::size_t j) {
                    if (span_leq(t, zs[r], span_compose(t, xs[i], ys[j]))) direct.set(r);
                  });
                });
              }
              CHECK(s->members(x, z, q.tensor(x, y, z, m, k)) == direct);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("specifications as enriched categories") {
  auto s = build_S_quantaloid(p2());
  const FiniteCategory& t = *p2();
  CtsSpec empty{{{"x", 0}, {"y", 1}}, {}};
  auto a = cts_to_vcat(*s, empty);
  CHECK(a->hom(0, 0) == s->quantaloid()->id(0));
  CHECK(a->hom(1, 1) == s->quantaloid()->id(1));
  CHECK(a->hom(0, 1) == s->quantaloid()->hom(0, 1)->bottom());

  const Span lab = span_of(t, 0, 0, 1);
  CtsSpec one{{{"x", 0}, {"y", 1}}, {{0, 1, lab}}};
  auto b = cts_to_vcat(*s, one);
  CHECK(b->hom(0, 1) == s->principal(0, 1, lab));

  // loop labelled (1 <- 0 -> 1): its square is below it
  const Span loop = span_of(t, 0, 1, 1);
  CHECK(span_leq(t, span_compose(t, loop, loop), loop));
  CtsSpec l{{{"z", 1}}, {{0, 0, loop}}};
  auto c = cts_to_vcat(*s, l);
  CHECK(c->hom(0, 0) == s->quantaloid()->hom(1, 1)->join(s->quantaloid()->id(1), s->principal(1, 1, loop)));

  CtsSpec bad{{{"x", 0}, {"y", 0}}, {{0, 1, lab}}};
  CHECK_THROWS_AS(cts_to_vcat(*s, bad), Error);
}

TEST_CASE("disjoint union of specs gives the coproduct") {
  auto s = build_S_quantaloid(p3());
  const FiniteCategory& t = *p3();
  CtsSpec a{{{"x", 0}, {"y", 2}}, {{0, 1, span_of(t, 0, 0, 2)}}};
  CtsSpec b{{{"u", 1}}, {{0, 0, span_of(t, 0, 1, 1)}}};
  CtsSpec ab = a;
  for (const auto& st : b.states) ab.states.push_back(st);
  for (auto tr : b.transitions) {
    tr.source += 2;
    tr.target += 2;
    ab.transitions.push_back(tr);
  }
  auto sum = coproduct({cts_to_vcat(*s, a), cts_to_vcat(*s, b)}).sum;
  CHECK(same_content(*sum, *cts_to_vcat(*s, ab)));
}

TEST_CASE("refinement along functors between posets") {
  auto s2 = build_S_quantaloid(p2());
  auto s3 = build_S_quantaloid(p3());
  auto idf = CatFunctor::from_objects(p2(), p2(), {0, 1});
  auto r_id = s_functor(idf, *s2, *s2);
  CHECK(r_id.adjoints.left_adjoint());
  CtsSpec spec{{{"x", 0}, {"y", 1}, {"z", 1}}, {{0, 1, span_of(*p2(), 0, 0, 1)}, {1, 2, span_of(*p2(), 1, 1, 1)}}};
  auto a = cts_to_vcat(*s2, spec);
  CHECK(same_content(*refine(r_id, a), *a));

  auto inc = CatFunctor::from_objects(p2(), p3(), {0, 1});
  auto g = CatFunctor::from_objects(p3(), p2(), {0, 1, 1});
  CatAdjunction adj{inc, g, {p3()->identity(0), p3()->identity(1), p3()->hom(1, 2).at(0)}};
  CHECK(validate_cat_adjunction(adj).ok());
  auto r = s_functor(inc, *s2, *s3, &adj);
  CHECK(validate_tse(*r.tse).ok());
  CHECK(r.adjoints.left_adjoint());
  CHECK(r.left_of_right.size() == 9);
  auto image = refine(r, a);
  CHECK(validate_vcategory(*image).ok());
  // image homs are generated by the images of the source cribles
  for (std::uint32_t x = 0; x < a->size(); ++x) {
    for (std::uint32_t y = 0; y < a->size(); ++y) {
      const auto ex = a->extent(x), ey = a->extent(y);
      std::vector<Span> imgs;
      s2->members(ex, ey, a->hom(x, y)).for_each([&](std::size_t i) {
        const Span& sp = s2->spans(ex, ey)[i];
        imgs.push_back({inc.on_objects[sp.apex], inc.on_morphisms[sp.left], inc.on_morphisms[sp.right]});
      });
      CHECK(image->hom(x, y) == s3->generated(ex, ey, imgs));
    }
  }

  CatAdjunction wrong{inc, g, {p3()->identity(0), p3()->identity(1), p3()->identity(1)}};
  CHECK_FALSE(validate_cat_adjunction(wrong).ok());
}

TEST_CASE("refinement rejects functors that break pullbacks") {
  auto diamond = std::make_shared<const FiniteCategory>(
      FiniteCategory::poset({"b", "a", "c", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  auto sd = build_S_quantaloid(diamond);
  auto s3 = build_S_quantaloid(p3());
  auto f = CatFunctor::from_objects(diamond, p3(), {0, 1, 1, 2});
  REQUIRE(validate_cat_functor(f).ok());
  try {
    s_functor(f, *sd, *s3);
    FAIL("expected NotExact");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotExact);
  }
}

TEST_CASE("refinement keeps Od maps Od") {
  auto s2 = build_S_quantaloid(p2());
  auto s3 = build_S_quantaloid(p3());
  auto r = s_functor(CatFunctor::from_objects(p2(), p3(), {0, 1}), *s2, *s3);
  auto collapse = s_functor(CatFunctor::from_objects(p2(), p2(), {0, 1}), *s2, *s2);
  gen::Rng rng(44);
  for (int round = 0; round < 40; ++round) {
    auto f = gen::od_map(s2->quantaloid(), 1 + rng() % 3, rng);
    REQUIRE(is_od(f));
    CHECK(is_od(refine(r, f)));
    CHECK(is_od(refine(collapse, f)));
  }
}
