#include <doctest.h>

#include <cmath>
#include <random>

#include "qbisim/quantaloid.hpp"

using namespace qbisim;

namespace {

Arrow arrow(const Elem& e) { return {0, 0, e}; }

}  // namespace

TEST_CASE("Q2 is a valid quantale") {
  auto q = quantaloids::boolean();
  CHECK(validate_quantaloid(*q).ok());
  CHECK(q->locally_distributive());
}

TEST_CASE("Q2 with a constant bottom tensor breaks the unit law") {
  auto q = quantaloids::boolean();
  auto d = q->data();
  auto t = std::make_shared<DenseTensor>(1);
  t->set(0, 0, 0, {0, 0, 0, 0});
  d.tensor = t;
  auto broken = Quantaloid::make(d);
  auto r = validate_quantaloid(*broken);
  CHECK(r.has("unit"));
}

TEST_CASE("truncated language quantale") {
  auto q = quantaloids::language({"m"}, 2);
  CHECK(q->hom(0, 0)->element_count() == 8);
  CHECK(validate_quantaloid(*q).ok());
  const Elem m = quantaloids::words(*q, {"m"});
  const Elem mm = quantaloids::words(*q, {"mm"});
  CHECK(q->tensor(0, 0, 0, m, m) == mm);
  CHECK(q->tensor(0, 0, 0, mm, m) == q->hom(0, 0)->bottom());
  CHECK(q->tensor(0, 0, 0, m, mm) == q->hom(0, 0)->bottom());
  for (const auto& l : q->hom(0, 0)->elements()) {
    CHECK(q->tensor(0, 0, 0, q->id(0), l) == l);
    CHECK(q->tensor(0, 0, 0, l, q->id(0)) == l);
  }
}

TEST_CASE("language tensor against a brute-force concatenation") {
  auto q = quantaloids::language({"a", "b"}, 4);
  const WordIndex& w = *q->words();
  std::mt19937_64 rng(2);
  for (int round = 0; round < 200; ++round) {
    Bits f(w.size()), g(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      f.assign(i, rng() % 6 == 0);
      g.assign(i, rng() % 6 == 0);
    }
    Bits expect(w.size());
    f.for_each([&](std::size_t i) {
      g.for_each([&](std::size_t j) {
        const std::string word = w.name(i) + w.name(j);
        if (word.size() <= 4) expect.set(*w.index(*w.parse(word)));
      });
    });
    CHECK(q->tensor(0, 0, 0, Elem::of(f), Elem::of(g)).bits() == expect);
  }
}

TEST_CASE("language quantales validate on atoms for larger alphabets") {
  auto q = quantaloids::language({"a", "b"}, 3);
  CHECK(validate_quantaloid(*q).ok());
  auto multi = quantaloids::language({"ab", "c"}, 2);
  CHECK(validate_quantaloid(*multi).ok());
  CHECK(multi->words()->name(*multi->words()->index({0, 1})) == "ab.c");
}

TEST_CASE("residuals") {
  auto b = quantaloids::boolean();
  CHECK(residual(*b, Side::right, arrow(Elem::at(1)), arrow(Elem::at(0))).value == Elem::at(0));
  CHECK(residual(*b, Side::right, arrow(Elem::at(0)), arrow(Elem::at(0))).value == Elem::at(1));

  auto q = quantaloids::language({"m"}, 2);
  auto r = residual(*q, Side::right, arrow(quantaloids::words(*q, {"m"})), arrow(quantaloids::words(*q, {"mm"})));
  CHECK(r.value == quantaloids::words(*q, {"m", "mm"}));
}

TEST_CASE("residuals are the largest solutions") {
  for (auto q : {quantaloids::boolean(), quantaloids::language({"m"}, 2), quantaloids::metric({0, 1, 2, INFINITY}),
                 quantaloids::language({"a", "b"}, 1)}) {
    const Lattice& h = *q->hom(0, 0);
    for (const auto& f : h.elements()) {
      for (const auto& x : h.elements()) {
        const Elem rr = residual(*q, Side::right, arrow(f), arrow(x)).value;
        const Elem lr = residual(*q, Side::left, arrow(f), arrow(x)).value;
        CHECK(h.leq(q->tensor(0, 0, 0, f, rr), x));
        CHECK(h.leq(q->tensor(0, 0, 0, lr, f), x));
        for (const auto& g : h.elements()) {
          if (h.leq(q->tensor(0, 0, 0, f, g), x)) CHECK(h.leq(g, rr));
          if (h.leq(q->tensor(0, 0, 0, g, f), x)) CHECK(h.leq(g, lr));
        }
      }
    }
  }
}

TEST_CASE("tensor distributes over random joins") {
  auto q = quantaloids::language({"a", "b"}, 3);
  const Lattice& h = *q->hom(0, 0);
  std::mt19937_64 rng(4);
  auto random_elem = [&] {
    Bits b(h.width());
    for (std::size_t i = 0; i < h.width(); ++i) b.assign(i, rng() % 4 == 0);
    return Elem::of(b);
  };
  for (int round = 0; round < 100; ++round) {
    const Elem f = random_elem();
    std::vector<Elem> s;
    for (int i = 0; i < int(rng() % 4); ++i) s.push_back(random_elem());
    std::vector<Elem> images;
    for (const auto& x : s) images.push_back(q->tensor(0, 0, 0, f, x));
    CHECK(q->tensor(0, 0, 0, f, h.join(s)) == h.join(images));
  }
}

TEST_CASE("Rel") {
  auto one = quantaloids::rel({{"*"}});
  CHECK(one->hom(0, 0)->element_count() == 2);
  CHECK(validate_quantaloid(*one).ok());
  auto q = quantaloids::rel({{"1", "2"}});
  CHECK(validate_quantaloid(*q).ok());
  const Lattice& h = *q->hom(0, 0);
  // atoms: (1,1) (1,2) (2,1) (2,2)
  CHECK(q->tensor(0, 0, 0, h.atom(1), h.atom(2)) == h.atom(0));
  CHECK(q->id(0) == h.subset({0, 3}));
  CHECK(h.is_distributive());
  auto two = quantaloids::rel({{"1", "2"}, {"a"}});
  CHECK(validate_quantaloid(*two).ok());
}

TEST_CASE("powerset quantaloid of a category") {
  auto point = std::make_shared<const FiniteCategory>(FiniteCategory::chain(1));
  auto b1 = quantaloids::powerset_of(point);
  CHECK(b1->hom(0, 0)->element_count() == 2);
  CHECK(validate_quantaloid(*b1).ok());
  auto c = std::make_shared<const FiniteCategory>(FiniteCategory::chain(2));
  auto bp = quantaloids::powerset_of(c);
  CHECK(validate_quantaloid(*bp).ok());
  CHECK(bp->hom(0, 1)->element_count() == 2);
  CHECK(bp->hom(1, 0)->element_count() == 1);
  CHECK(bp->hom(0, 0)->format(bp->id(0)) == "{id_0}");
  CHECK(bp->locally_distributive());
}

TEST_CASE("metric quantale") {
  auto q = quantaloids::metric({0, 1, 2, INFINITY});
  CHECK(validate_quantaloid(*q).ok());
  CHECK(q->tensor(0, 0, 0, Elem::at(1), Elem::at(1)) == Elem::at(2));
  CHECK(q->tensor(0, 0, 0, Elem::at(2), Elem::at(1)) == Elem::at(3));
  for (std::uint32_t x = 0; x < 4; ++x) CHECK(q->tensor(0, 0, 0, Elem::at(0), Elem::at(x)) == Elem::at(x));
  CHECK_THROWS_AS(quantaloids::metric({1, INFINITY}), Error);
  CHECK_THROWS_AS(quantaloids::metric({0, 1, 2}), Error);
  // (1 + .5) + .5 rounds to 2 + .5 -> inf, while 1 + (.5 + .5) = 2
  auto skew = quantaloids::metric({0, 0.5, 1, 2, INFINITY});
  auto r = validate_quantaloid(*skew);
  CHECK(r.has("associativity"));
}

TEST_CASE("composition of arrows checks endpoints") {
  auto q = quantaloids::rel({{"1"}, {"a", "b"}});
  Arrow f{0, 1, q->hom(0, 1)->top()};
  Arrow g{0, 1, q->hom(0, 1)->top()};
  CHECK_THROWS_AS(q->tensor(f, g), Error);
  Arrow h{1, 0, q->hom(1, 0)->top()};
  CHECK(q->tensor(f, h).value == q->hom(0, 0)->top());
}
