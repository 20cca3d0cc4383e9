// Acceptance criteria 1-10: one PASS/FAIL line each; exits 1 if any fails.
//
//   acceptance [--only N] [--seed S]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qbisim/axioms.hpp"
#include "qbisim/bisim.hpp"
#include "qbisim/cob.hpp"
#include "qbisim/cts.hpp"
#include "qbisim/io.hpp"
#include "qbisim/random.hpp"
#include "../oracles/brute.hpp"
#include "../oracles/classical.hpp"

using namespace qbisim;

namespace {

using Rng = gen::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

QuantaloidPtr base_q2() {
  static const QuantaloidPtr q = quantaloids::boolean();
  return q;
}
QuantaloidPtr base_ql() {
  static const QuantaloidPtr q = quantaloids::language({"m"}, 2);
  return q;
}
QuantaloidPtr base_m3() {
  static const QuantaloidPtr q = quantaloids::metric({0, 1, 2, std::numeric_limits<double>::infinity()});
  return q;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Od by its definition, through the brute-force oracle.
bool oracle_od(const VFunctor& f) {
  std::vector<bool> hit(f.target->size(), false);
  for (auto y : f.map) hit[y] = true;
  for (bool h : hit) {
    if (!h) return false;
  }
  return oracle::functional_bisimulation(*f.source, *f.target, f.map);
}

bool od_both(const VFunctor& f) { return is_od(f) && oracle_od(f); }

oracle::Pairs as_pairs(const SimRelation& r) {
  auto p = r.pairs();
  return oracle::Pairs(p.begin(), p.end());
}

bool same_content(const VCategory& a, const VCategory& b) {
  if (a.base() != b.base() || a.size() != b.size() || a.extents() != b.extents()) return false;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (!(a.hom(x, y) == b.hom(x, y))) return false;
    }
  }
  return true;
}

bool same_functor(const VFunctor& f, const VFunctor& g) {
  return same_content(*f.source, *g.source) && same_content(*f.target, *g.target) && f.map == g.map;
}

// ---------------------------------------------------------------------------
// 1. Largest relations against the subset oracle

struct PairCase {
  VCatPtr a;
  VCatPtr b;
};

// Random same-base pair with at most three objects each. Some pairs are
// built to be bisimilar so that suites 2 and 3 have material.
PairCase random_pair(const QuantaloidPtr& base, std::size_t i, Rng& rng) {
  for (;;) {
    PairCase p;
    switch (i % 4) {
      case 0:
        p = {gen::vcategory(base, pick(rng, 1, 3), rng), gen::vcategory(base, pick(rng, 1, 3), rng)};
        break;
      case 1: {
        auto c = gen::vcategory(base, pick(rng, 1, 2), rng);
        p = {gen::inflate(c, 2, rng).source, c};
        break;
      }
      case 2: {
        auto a = gen::vcategory(base, pick(rng, 1, 3), rng);
        p = {a, gen::isomorphism(a, rng).target};
        break;
      }
      default: {
        auto c = gen::vcategory(base, 1, rng);
        p = {gen::inflate(c, 3, rng).source, gen::inflate(c, 3, rng).source};
        break;
      }
    }
    if (p.a->size() <= 3 && p.b->size() <= 3) return p;
  }
}

std::vector<PairCase> bisimilar_pairs;

Outcome criterion1(std::uint64_t seed) {
  Outcome o;
  std::size_t total = 0, sims = 0, bisims = 0;
  for (const auto& base : {base_q2(), base_ql(), base_m3()}) {
    Rng rng(seed);
    for (std::size_t i = 0; i < 200; ++i) {
      const auto p = random_pair(base, i, rng);
      const auto sim = largest_simulation(p.a, p.b).relation;
      const auto bis = largest_bisimulation(p.a, p.b).relation;
      const auto want_sim = oracle::largest_simulation(*p.a, *p.b);
      const auto want_bis = oracle::largest_bisimulation(*p.a, *p.b);
      std::ostringstream id;
      id << base->label() << " #" << i;
      o.expect(as_pairs(sim) == want_sim, "largest simulation differs on " + id.str());
      o.expect(as_pairs(bis) == want_bis, "largest bisimulation differs on " + id.str());
      if (!sim.empty()) ++sims;
      if (bisimilar(p.a, p.b)) {
        ++bisims;
        bisimilar_pairs.push_back(p);
      }
      ++total;
    }
  }
  o.detail = std::to_string(total) + " pairs over Q2, QL({m},2), M3; " + std::to_string(sims) +
             " with nonempty simulation, " + std::to_string(bisims) + " bisimilar";
  return o;
}

// ---------------------------------------------------------------------------
// 2. Bisimilarity and Od cospans

Outcome criterion2(std::uint64_t seed) {
  Outcome o;
  if (bisimilar_pairs.empty()) criterion1(seed);
  std::size_t witnessed = 0;
  for (const auto& p : bisimilar_pairs) {
    const auto w = cospan_witness(largest_bisimulation(p.a, p.b).relation);
    o.expect(w.left.target == w.apex && w.right.target == w.apex, "legs do not share the apex");
    o.expect(od_both(w.left) && od_both(w.right), "cospan leg not in Od");
    ++witnessed;
  }
  Rng rng(seed ^ 0xc05);
  const QuantaloidPtr bases[] = {base_q2(), base_ql(), base_m3()};
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& base = bases[i % 3];
    auto c = gen::vcategory(base, pick(rng, 1, 3), rng);
    auto f = gen::inflate(c, 2, rng);
    auto g = gen::inflate(c, (i % 2 == 0) ? 2 : 3, rng);
    o.expect(od_both(f) && od_both(g), "generated cospan leg not in Od");
    o.expect(bisimilar(f.source, g.source), "Od cospan #" + std::to_string(i) + " over " + base->label() +
                                                " but not bisimilar");
  }
  o.detail = std::to_string(witnessed) + " cospan witnesses, 100 Od cospans";
  return o;
}

// ---------------------------------------------------------------------------
// 3. Span witnesses under distributivity, and the gate

// Two objects: Boolean endo-homs and a pentagon from u to v acted on by
// scalars. A valid quantaloid that is not locally distributive.
QuantaloidPtr pentagon_base() {
  Quantaloid::Data d;
  d.label = "N5-collage";
  d.objects = {"u", "v"};
  auto two = Lattice::chain({"0", "1"});
  auto one = Lattice::chain({"bot"});
  auto n5 = Lattice::from_order({{"bot", "a", "b", "c", "top"},
                                 {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 4}, {3, 4}}});
  d.homs = {two, n5, one, two};
  d.ids = {Elem::at(1), Elem::at(1)};
  auto t = std::make_shared<DenseTensor>(2);
  auto hom = [&](std::uint32_t x, std::uint32_t y) { return d.homs[x * 2 + y]; };
  for (std::uint32_t u = 0; u < 2; ++u) {
    for (std::uint32_t v = 0; v < 2; ++v) {
      for (std::uint32_t w = 0; w < 2; ++w) {
        const auto& f = *hom(u, v);
        const auto& g = *hom(v, w);
        const auto& h = *hom(u, w);
        std::vector<std::uint32_t> table;
        for (std::uint32_t i = 0; i < f.width(); ++i) {
          for (std::uint32_t j = 0; j < g.width(); ++j) {
            std::uint32_t r = h.bottom().index();  // anything through hom(v,u)
            if (u == v && v == w) {
              r = i & j;
            } else if (u == v && i == 1) {
              r = j;  // 1 (x) x = x
            } else if (v == w && j == 1) {
              r = i;  // x (x) 1 = x
            }
            table.push_back(r);
          }
        }
        t->set(u, v, w, std::move(table));
      }
    }
  }
  d.tensor = t;
  return Quantaloid::make(std::move(d));
}

Outcome criterion3(std::uint64_t seed) {
  Outcome o;
  if (bisimilar_pairs.empty()) criterion1(seed);
  std::size_t witnessed = 0;
  for (const auto& p : bisimilar_pairs) {
    if (p.a->base() == base_m3()) continue;
    const auto w = span_witness(largest_bisimulation(p.a, p.b).relation);
    o.expect(w.left.source == w.apex && w.right.source == w.apex, "legs do not share the apex");
    o.expect(od_both(w.left) && od_both(w.right), "span leg not in Od");
    ++witnessed;
  }
  o.expect(witnessed > 0, "no bisimilar pairs over Q2 or QL");

  auto q = pentagon_base();
  const auto rep = validate_quantaloid(*q);
  o.expect(rep.ok(), "pentagon base is not a quantaloid: " + rep.summary());
  o.expect(!q->locally_distributive(), "pentagon base reported distributive");
  VCategory one(q, {"p"}, {0});
  one.set_hom(0, 0, q->id(0));
  auto a = std::make_shared<const VCategory>(one);
  bool gated = false;
  try {
    span_witness(SimRelation::diagonal(a));
  } catch (const Error& e) {
    gated = e.kind() == ErrorKind::NotLocallyDistributive;
  }
  o.expect(gated, "span_witness accepted a base with a pentagon hom");
  o.detail = std::to_string(witnessed) + " span witnesses over Q2/QL; pentagon base rejected";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Axioms A1-A6

Outcome criterion4(std::uint64_t seed) {
  Outcome o;
  std::ostringstream d;
  for (const auto& base : {base_q2(), base_ql()}) {
    const auto results = run_axioms(base, parse_axiom_suite("A1..A6"), seed, 200);
    o.expect(results.size() == 6, "expected six axioms");
    std::size_t held = 0;
    for (const auto& r : results) {
      o.expect(!r.skipped, r.axiom + " skipped over " + base->label());
      o.expect(r.cases == 200, r.axiom + " ran " + std::to_string(r.cases) + " cases");
      o.expect(r.violations == 0, r.axiom + " has " + std::to_string(r.violations) + " violations over " + base->label());
      o.expect(r.hypothesis_held > 0, r.axiom + " never met its hypothesis over " + base->label());
      held += r.hypothesis_held;
    }
    d << base->label() << ": " << held << " instances with hypothesis; ";
  }
  o.detail = d.str() + "0 violations expected";
  return o;
}

// ---------------------------------------------------------------------------
// 5. Quotients

Outcome criterion5(std::uint64_t seed) {
  Outcome o;
  Rng rng(seed ^ 0x9a07);
  const QuantaloidPtr bases[] = {base_q2(), base_ql(), base_m3()};
  std::size_t merged = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& base = bases[i % 3];
    auto c = gen::vcategory(base, pick(rng, 1, 3), rng);
    auto a = gen::inflate(c, 2, rng).source;
    const auto e = gen::bisim_equivalence(a, rng);
    o.expect(is_bisimulation(e.relation()), "closure is not a bisimulation");
    const auto q = quotient(e);
    o.expect(od_both(q.map), "quotient map not in Od (#" + std::to_string(i) + ")");
    if (e.blocks.size() < a->size()) ++merged;
    // Well-definedness: the join into a block is the same from every member.
    for (std::uint32_t b1 = 0; b1 < e.blocks.size(); ++b1) {
      for (std::uint32_t b2 = 0; b2 < e.blocks.size(); ++b2) {
        for (auto x : e.blocks[b1]) {
          const Lattice& l = a->lattice(x, e.blocks[b2].front());
          Elem acc = l.bottom();
          for (auto y : e.blocks[b2]) acc = l.join(acc, a->hom(x, y));
          o.expect(acc == q.category->hom(b1, b2), "representative " + a->name(x) + " disagrees");
        }
      }
    }
  }
  o.detail = "100 bisimulation equivalences, " + std::to_string(merged) + " nontrivial";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Adjunction F_@ -| F^@

struct CobCase {
  std::string name;
  TsePtr tse;
  std::vector<VCatPtr> sources;  // over the source base
  std::vector<VCatPtr> targets;  // over the target base
};

io::Bundle& fixtures() {
  static io::Bundle b = io::load_bundle({QBISIM_FIXTURE_DIR});
  return b;
}

std::vector<VCatPtr> fixture_categories_over(const QuantaloidPtr& q) {
  std::vector<VCatPtr> out;
  auto& b = fixtures();
  for (const auto& n : b.names("vcategories")) {
    auto a = b.vcategory(n);
    if (a->base() == q && a->size() <= 3) out.push_back(a);
  }
  return out;
}

// All encodings of functors X -> A for fixture categories X.
std::vector<VCatPtr> slice_objects(const Slice& s) {
  std::vector<VCatPtr> out;
  for (const auto& x : fixture_categories_over(s.over->base())) {
    for (const auto& g : enumerate_vfunctors(x, s.over)) out.push_back(slice_encode(s, g));
  }
  return out;
}

std::vector<CobCase> cob_cases() {
  auto& b = fixtures();
  std::vector<CobCase> out;
  for (const char* n : {"ID_QL", "RELABEL", "COLLAPSE"}) {
    auto t = b.tse(n);
    out.push_back({n, t, fixture_categories_over(t->source()), fixture_categories_over(t->target())});
  }
  const auto sc = slice_change(b.functor("P01_POINT"));
  out.push_back({"SLICE_P01", sc.tse, slice_objects(sc.source), slice_objects(sc.target)});
  return out;
}

Outcome criterion6(std::uint64_t) {
  Outcome o;
  std::size_t pairs = 0, arrows = 0;
  for (const auto& c : cob_cases()) {
    const auto& f = *c.tse;
    const auto g = local_right_adjoints(f);
    o.expect(g.left_adjoint(), c.name + " is not a left adjoint in Caten");
    if (!g.left_adjoint()) continue;
    o.expect(!c.sources.empty() && !c.targets.empty(), c.name + " has no fixture categories");
    for (const auto& a : c.sources) {
      const auto fa = apply_cob(f, a);
      for (const auto& bcat : c.targets) {
        const auto gb = right_adjoint_cob(f, g, bcat);
        const auto left = enumerate_vfunctors(fa, bcat);
        const auto right = enumerate_vfunctors(a, gb);
        o.expect(left.size() == right.size(), c.name + ": |W-Cat(F_@A,B)| = " + std::to_string(left.size()) +
                                                  " but |V-Cat(A,F^@B)| = " + std::to_string(right.size()));
        for (const auto& h : left) {
          const auto k = transpose_to_right(f, a, h, gb);
          o.expect(transpose_to_left(f, bcat, k, fa) == h, c.name + ": transposes do not compose to the identity");
        }
        for (const auto& k : right) {
          const auto h = transpose_to_left(f, bcat, k, fa);
          o.expect(transpose_to_right(f, a, h, gb) == k, c.name + ": transposes do not compose to the identity");
        }
        ++pairs;
        arrows += left.size();
      }
    }
  }
  o.detail = "4 tses, " + std::to_string(pairs) + " (A,B) pairs, " + std::to_string(arrows) + " arrows matched";
  return o;
}

// ---------------------------------------------------------------------------
// 7. Od preservation

Outcome criterion7(std::uint64_t seed) {
  Outcome o;
  auto& b = fixtures();
  std::vector<std::pair<std::string, TsePtr>> tses;
  for (const auto& n : b.names("tses")) tses.emplace_back(n, b.tse(n));
  std::size_t used = 0, maps = 0;
  for (const auto& [name, t] : tses) {
    const auto g = local_right_adjoints(*t);
    if (!g.coherent()) continue;
    ++used;
    Rng rng(seed ^ std::hash<std::string>{}(name));
    for (std::size_t i = 0; i < 100; ++i) {
      const auto f = gen::od_map(t->source(), pick(rng, 1, 3), rng);
      o.expect(od_both(f), name + ": generator produced a map outside Od");
      const auto image = apply_cob(*t, f);
      o.expect(od_both(image), name + ": image of Od map #" + std::to_string(i) + " is not in Od");
      ++maps;
    }
  }
  o.detail = std::to_string(used) + " fixture tses with coherent local right adjoints, " + std::to_string(maps) +
             " Od maps pushed forward";
  return o;
}

// ---------------------------------------------------------------------------
// 8. Automata against classical partition refinement

std::string to_aut(const oracle::Lts& l) {
  std::ostringstream os;
  os << "des (0," << l.transitions.size() << "," << l.states << ")\n";
  for (const auto& [s, a, t] : l.transitions) os << "(" << s << ",\"" << a << "\"," << t << ")\n";
  return os.str();
}

oracle::Lts random_lts(std::size_t states, const std::vector<std::string>& sigma, Rng& rng) {
  oracle::Lts l;
  l.states = states;
  std::bernoulli_distribution edge(1.5 / static_cast<double>(states));
  for (std::size_t s = 0; s < states; ++s) {
    for (const auto& a : sigma) {
      for (std::size_t t = 0; t < states; ++t) {
        if (edge(rng)) l.transitions.emplace_back(s, a, t);
      }
    }
  }
  return l;
}

// Split one state into two copies sharing its transitions: bisimilar.
oracle::Lts unfold(const oracle::Lts& l, Rng& rng) {
  oracle::Lts out = l;
  const std::size_t s = pick(rng, 0, l.states - 1);
  const std::size_t copy = l.states;
  out.states = l.states + 1;
  for (const auto& [x, a, y] : l.transitions) {
    if (x == s) out.transitions.emplace_back(copy, a, y);
    if (y == s && (rng() & 1)) {
      // Redirect some arrivals to the copy.
      for (auto& tr : out.transitions) {
        if (std::get<0>(tr) == x && std::get<1>(tr) == a && std::get<2>(tr) == y) {
          std::get<2>(tr) = copy;
          break;
        }
      }
    }
  }
  return out;
}

Outcome criterion8(std::uint64_t seed) {
  Outcome o;
  Rng rng(seed ^ 0xa07);
  std::size_t yes = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const std::vector<std::string> sigma = (i % 2 == 0) ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
    oracle::Lts x = random_lts(pick(rng, 1, 5), sigma, rng);
    oracle::Lts y;
    switch (i % 3) {
      case 0:
        y = random_lts(pick(rng, 1, 6), sigma, rng);
        break;
      case 1:
        y = unfold(x, rng);
        break;
      default:
        y = unfold(x, rng);
        if (!y.transitions.empty()) y.transitions.erase(y.transitions.begin() + static_cast<long>(pick(rng, 0, y.transitions.size() - 1)));
        break;
    }
    const std::size_t k = 2 * std::max(x.states, y.states);
    auto ql = quantaloids::language(sigma, k);
    std::istringstream sx(to_aut(x)), sy(to_aut(y));
    const auto a = io::import_aut(sx, ql);
    const auto b = io::import_aut(sy, ql);
    const bool lib = bisimilar(a, b);
    const bool classic = oracle::classically_bisimilar(x, y);
    o.expect(lib == classic, "pair #" + std::to_string(i) + ": library says " + (lib ? "yes" : "no") +
                                 ", partition refinement says " + (classic ? "yes" : "no") + "\n" + to_aut(x) + to_aut(y));
    if (classic) ++yes;
  }
  o.detail = "50 automaton pairs (<=6 states, |Σ|<=2, k = 2 x states), " + std::to_string(yes) + " bisimilar";
  return o;
}

// ---------------------------------------------------------------------------
// 9. Slices

// Every V-category with one or two objects over a one-object base.
std::vector<VCatPtr> small_categories(const QuantaloidPtr& q) {
  std::vector<VCatPtr> out;
  const auto elems = q->hom(0, 0)->elements();
  for (std::uint32_t n = 1; n <= 2; ++n) {
    const std::size_t cells = n * n;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cells; ++i) combos *= elems.size();
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<std::string> names;
      for (std::uint32_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
      VCategory x(q, names, std::vector<std::uint32_t>(n, 0));
      std::size_t c = code;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          x.set_hom(i, j, elems[c % elems.size()]);
          c /= elems.size();
        }
      }
      if (validate_vcategory(x).ok()) out.push_back(std::make_shared<const VCategory>(std::move(x)));
    }
  }
  return out;
}

Outcome criterion9(std::uint64_t) {
  Outcome o;
  auto& b = fixtures();
  struct Case {
    std::string name;
    VFunctor f;
  };
  const auto aut = b.vcategory("AUT1");
  const auto loop = b.vcategory("LOOP1");
  std::vector<Case> cases = {{"P01 -> POINT", b.functor("P01_POINT")},
                             {"AUT1 -> LOOP1", VFunctor{aut, loop, {0, 0}}}};
  std::size_t objects = 0, pullbacks = 0;
  for (const auto& c : cases) {
    o.expect(validate_vfunctor(c.f).ok(), c.name + " is not a V-functor");
    const auto sc = slice_change(c.f);
    const auto g = local_right_adjoints(*sc.tse);
    o.expect(g.coherent(), c.name + ": local right adjoints are not coherent");
    const auto small = small_categories(c.f.source->base());
    // Objects of V(A): functors X -> A.
    for (const auto& x : small) {
      for (const auto& h : enumerate_vfunctors(x, c.f.source)) {
        const auto enc = slice_encode(sc.source, h);
        const auto dec = slice_decode(sc.source, enc);
        o.expect(same_functor(dec, h), c.name + ": decode(encode h) != h");
        o.expect(same_content(*slice_encode(sc.source, dec), *enc), c.name + ": encode(decode X) != X");
        const auto pushed = slice_decode(sc.target, apply_cob(*sc.tse, enc));
        const auto post = h.then(c.f);
        o.expect(same_content(*pushed.source, *post.source) && pushed.map == post.map,
                 c.name + ": apply_cob differs from post-composition");
        ++objects;
      }
    }
    // Objects of V(B): functors Y -> B, pulled back along f.
    for (const auto& y : small) {
      for (const auto& k : enumerate_vfunctors(y, c.f.target)) {
        const auto enc = slice_encode(sc.target, k);
        const auto pulled = slice_decode(sc.source, right_adjoint_cob(*sc.tse, g, enc));
        const auto cone = pullback(k, c.f);
        o.expect(same_content(*pulled.source, *cone.apex) && pulled.map == cone.right.map,
                 c.name + ": right_adjoint_cob differs from pullback along f");
        ++pullbacks;
      }
    }
  }
  o.detail = std::to_string(objects) + " slice objects pushed forward, " + std::to_string(pullbacks) + " pulled back";
  return o;
}

// ---------------------------------------------------------------------------
// 10. Refinement of specifications

Outcome criterion10(std::uint64_t seed) {
  Outcome o;
  auto& b = fixtures();
  std::size_t built = 0;
  for (const char* cat : {"P2", "P3", "DIAMOND"}) {
    const auto rep = validate_quantaloid(*b.crible(cat)->quantaloid());
    o.expect(rep.ok(), std::string("S(") + cat + ") invalid: " + rep.summary());
    ++built;
  }
  const auto inc = b.cat_functor("INC");
  o.expect(check_preserves_pullbacks(inc).ok(), "INC does not preserve the chosen pullbacks");
  const auto adj = b.adjunction("INC_RETRACT");
  const auto r = s_functor(inc, *b.crible("P2"), *b.crible("P3"), &adj);
  o.expect(r.adjoints.coherent(), "S(INC) local right adjoints are not coherent");

  const auto merge = b.functor("SPEC_MERGE");
  o.expect(od_both(merge), "fixture specification map is not in Od");
  o.expect(od_both(refine(r, merge)), "refined specification map is not in Od");

  Rng rng(seed ^ 0xc75);
  const auto base = b.crible("P2")->quantaloid();
  for (std::size_t i = 0; i < 50; ++i) {
    const auto f = gen::od_map(base, pick(rng, 1, 3), rng);
    o.expect(od_both(f), "generator produced a map outside Od");
    o.expect(od_both(refine(r, f)), "refinement of random Od map #" + std::to_string(i) + " is not in Od");
  }
  o.detail = std::to_string(built) + " crible quantaloids valid; SPEC_MERGE and 50 random Od maps stay Od under S(INC)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--only N] [--seed S]\n";
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome(std::uint64_t)>>> criteria = {
      {"oracle equivalence of largest relations", criterion1},
      {"bisimilarity iff Od cospan", criterion2},
      {"Od span under distributivity", criterion3},
      {"axioms A1-A6", criterion4},
      {"quotient soundness", criterion5},
      {"change-of-base adjunction", criterion6},
      {"Od preservation", criterion7},
      {"classical automata cross-check", criterion8},
      {"slice correspondence", criterion9},
      {"CTS refinement", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(seed);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %-42s %s  (%s; %.1fs)\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
