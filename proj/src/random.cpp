#include "qbisim/random.hpp"

#include <algorithm>
#include <numeric>

namespace qbisim::gen {

namespace {

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

}  // namespace

Elem element(const Lattice& l, Rng& rng, double density) {
  if (!l.is_powerset()) return l.element(pick(rng, l.element_count()));
  Bits b(l.width());
  for (std::size_t i = 0; i < l.width(); ++i) b.assign(i, coin(rng, density));
  return Elem::of(std::move(b));
}

Elem below(const Lattice& l, const Elem& x, Rng& rng, double density) {
  if (!l.is_powerset()) return l.meet(element(l, rng), x);
  Bits b(l.width());
  x.bits().for_each([&](std::size_t i) { b.assign(i, coin(rng, density)); });
  return Elem::of(std::move(b));
}

VCatPtr vcategory(const QuantaloidPtr& base, std::size_t n, Rng& rng, double edge_probability) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices.push_back({"s" + std::to_string(i), static_cast<std::uint32_t>(pick(rng, base->object_count()))});
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!coin(rng, edge_probability)) continue;
      const Lattice& l = *base->hom(g.vertices[x].extent, g.vertices[y].extent);
      g.edges.push_back({x, y, element(l, rng)});
    }
  }
  return free_vcategory(base, g);
}

VFunctor functor_into(const VCatPtr& c, std::size_t n, Rng& rng) {
  Graph g;
  std::vector<std::uint32_t> map;
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::uint32_t>(pick(rng, c->size()));
    map.push_back(y);
    g.vertices.push_back({"d" + std::to_string(i), c->extent(y)});
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!coin(rng, 0.6)) continue;
      g.edges.push_back({x, y, below(c->lattice(map[x], map[y]), c->hom(map[x], map[y]), rng)});
    }
  }
  VFunctor f;
  f.source = free_vcategory(c->base(), g);
  f.target = c;
  f.map = std::move(map);
  return f;
}

VFunctor inflate(const VCatPtr& c, std::size_t max_copies, Rng& rng) {
  Graph g;
  std::vector<std::uint32_t> map;
  std::vector<std::vector<std::uint32_t>> copies(c->size());
  for (std::uint32_t y = 0; y < c->size(); ++y) {
    const std::size_t k = 1 + pick(rng, max_copies);
    for (std::size_t i = 0; i < k; ++i) {
      copies[y].push_back(static_cast<std::uint32_t>(g.vertices.size()));
      g.vertices.push_back({c->name(y) + "." + std::to_string(i), c->extent(y)});
      map.push_back(y);
    }
  }
  // From every copy of y, split C(y,y') among the copies of y' so that the
  // pieces join back to C(y,y'). Closing keeps everything below C.
  for (std::uint32_t y = 0; y < c->size(); ++y) {
    for (std::uint32_t y2 = 0; y2 < c->size(); ++y2) {
      const Lattice& l = c->lattice(y, y2);
      const Elem& whole = c->hom(y, y2);
      for (auto x : copies[y]) {
        const auto& targets = copies[y2];
        std::vector<Elem> pieces;
        if (l.is_powerset()) {
          pieces.assign(targets.size(), l.bottom());
          whole.bits().for_each([&](std::size_t i) {
            bool placed = false;
            for (auto& p : pieces) {
              if (coin(rng, 0.5)) {
                p.bits().set(i);
                placed = true;
              }
            }
            if (!placed) pieces[pick(rng, pieces.size())].bits().set(i);
          });
        } else {
          for (std::size_t t = 0; t < targets.size(); ++t) pieces.push_back(below(l, whole, rng));
          pieces[pick(rng, pieces.size())] = whole;
        }
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (!(pieces[t] == l.bottom())) g.edges.push_back({x, targets[t], pieces[t]});
        }
      }
    }
  }
  VFunctor p;
  p.source = free_vcategory(c->base(), g);
  p.target = c;
  p.map = std::move(map);
  return p;
}

VFunctor isomorphism(const VCatPtr& c, Rng& rng) {
  std::vector<std::uint32_t> perm(c->size());
  std::iota(perm.begin(), perm.end(), 0U);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> names(c->size());
  std::vector<std::uint32_t> extents(c->size());
  for (std::uint32_t x = 0; x < c->size(); ++x) {
    names[perm[x]] = c->name(x) + "'";
    extents[perm[x]] = c->extent(x);
  }
  VCategory out(c->base(), std::move(names), std::move(extents));
  for (std::uint32_t x = 0; x < c->size(); ++x) {
    for (std::uint32_t y = 0; y < c->size(); ++y) out.set_hom(perm[x], perm[y], c->hom(x, y));
  }
  VFunctor f;
  f.source = c;
  f.target = std::make_shared<const VCategory>(std::move(out));
  f.map = std::move(perm);
  return f;
}

BisimEquivalence bisim_equivalence(const VCatPtr& a, Rng& rng) {
  SimRelation s = SimRelation::diagonal(a);
  for (std::uint32_t x = 0; x < a->size(); ++x) {
    for (std::uint32_t y = x + 1; y < a->size(); ++y) {
      if (a->extent(x) == a->extent(y) && coin(rng, 0.6)) {
        s.insert(x, y);
        s.insert(y, x);
      }
    }
  }
  return equivalence_closure(largest_bisimulation_within(s).relation);
}

VFunctor od_map(const QuantaloidPtr& base, std::size_t n, Rng& rng) {
  const VCatPtr c = vcategory(base, n, rng);
  switch (pick(rng, 3)) {
    case 0:
      return inflate(c, 3, rng);
    case 1:
      return inflate(c, 2, rng).then(isomorphism(c, rng));
    default: {
      const VCatPtr a = inflate(c, 3, rng).source;
      return quotient(bisim_equivalence(a, rng)).map;
    }
  }
}

}  // namespace qbisim::gen
