#include "qbisim/axioms.hpp"

#include <algorithm>
#include <functional>

#include "qbisim/bisim.hpp"
#include "qbisim/random.hpp"

namespace qbisim {

std::vector<std::string> parse_axiom_suite(const std::string& text) {
  std::vector<std::string> out;
  auto number = [&](const std::string& s) -> int {
    if (s.size() != 2 || (s[0] != 'A' && s[0] != 'a') || s[1] < '1' || s[1] > '6') {
      fail(ErrorKind::InvalidArgument, "unknown axiom '" + s + "'");
    }
    return s[1] - '0';
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = number(item.substr(0, dots));
      const int hi = number(item.substr(dots + 2));
      if (hi < lo) fail(ErrorKind::InvalidArgument, "empty axiom range '" + item + "'");
      for (int i = lo; i <= hi; ++i) out.push_back("A" + std::to_string(i));
    } else if (!item.empty()) {
      out.push_back("A" + std::to_string(number(item)));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) fail(ErrorKind::InvalidArgument, "no axioms given");
  return out;
}

namespace {

using gen::Rng;

std::size_t small(Rng& rng, std::size_t hi) { return 1 + std::uniform_int_distribution<std::size_t>(0, hi - 1)(rng); }

// Condition (*): C(c,c') <= join{A(a,a') : f a = c, f a' = c'}.
bool star_condition(const VFunctor& f) {
  const VCategory& a = *f.source;
  const VCategory& c = *f.target;
  for (std::uint32_t y = 0; y < c.size(); ++y) {
    for (std::uint32_t y2 = 0; y2 < c.size(); ++y2) {
      const Lattice& l = c.lattice(y, y2);
      Elem acc = l.bottom();
      for (std::uint32_t x = 0; x < a.size(); ++x) {
        for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) {
          if (f.map[x] == y && f.map[x2] == y2) l.join_into(acc, a.hom(x, x2));
        }
      }
      if (!l.leq(c.hom(y, y2), acc)) return false;
    }
  }
  return true;
}

// Sum of functors between coproducts.
VFunctor sum_map(const std::vector<VFunctor>& fs) {
  std::vector<VCatPtr> sources, targets;
  for (const auto& f : fs) {
    sources.push_back(f.source);
    targets.push_back(f.target);
  }
  const Coproduct a = coproduct(sources);
  const Coproduct b = coproduct(targets);
  VFunctor s;
  s.source = a.sum;
  s.target = b.sum;
  s.map.resize(a.sum->size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::uint32_t x = 0; x < fs[i].source->size(); ++x) {
      s.map[a.injections[i].map[x]] = b.injections[i].map[fs[i].map[x]];
    }
  }
  return s;
}

struct Case {
  bool hypothesis = true;
  bool conclusion = true;
  std::string what;
};

Case case_a1(const QuantaloidPtr& base, Rng& rng) {
  const VCatPtr c = gen::vcategory(base, small(rng, 3), rng);
  const VFunctor iso = gen::isomorphism(c, rng);
  const VFunctor p = gen::inflate(c, 2, rng);
  const VFunctor p2 = gen::inflate(p.source, 2, rng);
  Case k;
  if (!is_od(iso)) {
    k.conclusion = false;
    k.what = "isomorphism not in Od";
  } else if (!is_od(p) || !is_od(p2)) {
    k.hypothesis = false;
  } else if (!is_od(p2.then(p)) || !is_od(p.then(iso))) {
    k.conclusion = false;
    k.what = "composite of Od maps not in Od";
  }
  return k;
}

Case case_a2(const QuantaloidPtr& base, Rng& rng) {
  const VCatPtr c = gen::vcategory(base, small(rng, 3), rng);
  const VFunctor f = gen::inflate(c, 2, rng);
  const VFunctor g = gen::functor_into(c, small(rng, 3), rng);
  Case k;
  k.hypothesis = is_od(f);
  if (!k.hypothesis) return k;
  const Cone p = pullback(g, f);
  if (!is_od(p.left)) {
    k.conclusion = false;
    k.what = "pullback of an Od map along a functor is not in Od";
  }
  return k;
}

Case case_a3(const QuantaloidPtr& base, Rng& rng) {
  const VCatPtr c = gen::vcategory(base, small(rng, 3), rng);
  const VFunctor f = gen::inflate(c, 2, rng);
  const VFunctor g = (rng() & 1) ? gen::inflate(c, 2, rng) : gen::functor_into(c, small(rng, 4), rng);
  const Cone p = pullback(f, g);  // left: P -> A (the pulled-back g), right: P -> B
  Case k;
  k.hypothesis = f.surjective() && star_condition(f) && is_od(p.left);
  if (k.hypothesis && !is_od(g)) {
    k.conclusion = false;
    k.what = "descent fails";
  }
  return k;
}

Case case_a4(const QuantaloidPtr& base, Rng& rng) {
  const VCatPtr one = terminal(base);
  std::vector<VCatPtr> parts(small(rng, 4), one);
  const Coproduct s = coproduct(parts);
  Case k;
  if (!is_od(to_terminal(s.sum, one))) {
    k.conclusion = false;
    k.what = "sum of " + std::to_string(parts.size()) + " terminals -> terminal not in Od";
  }
  return k;
}

Case case_a5(const QuantaloidPtr& base, Rng& rng) {
  std::vector<VFunctor> fs;
  const std::size_t n = small(rng, 3);
  for (std::size_t i = 0; i < n; ++i) fs.push_back(gen::od_map(base, small(rng, 2), rng));
  Case k;
  k.hypothesis = std::all_of(fs.begin(), fs.end(), [](const VFunctor& f) { return is_od(f); });
  if (k.hypothesis && !is_od(sum_map(fs))) {
    k.conclusion = false;
    k.what = "sum of Od maps not in Od";
  }
  return k;
}

Case case_a6(const QuantaloidPtr& base, Rng& rng) {
  const VFunctor g = gen::od_map(base, small(rng, 3), rng);
  const VCategory& a = *g.source;
  const VCategory& c = *g.target;
  // Random partition of A refining the fibres of g.
  std::vector<std::uint32_t> block(a.size());
  std::vector<std::uint32_t> block_target;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    std::vector<std::uint32_t> options;
    for (std::uint32_t b = 0; b < block_target.size(); ++b) {
      if (block_target[b] == g.map[x]) options.push_back(b);
    }
    if (options.empty() || (rng() % 3) == 0) {
      block[x] = static_cast<std::uint32_t>(block_target.size());
      block_target.push_back(g.map[x]);
    } else {
      block[x] = options[rng() % options.size()];
    }
  }
  Graph graph;
  for (std::uint32_t b = 0; b < block_target.size(); ++b) {
    graph.vertices.push_back({"b" + std::to_string(b), c.extent(block_target[b])});
  }
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) graph.edges.push_back({block[x], block[x2], a.hom(x, x2)});
  }
  // Extra generators that stay below C keep f a functor.
  for (std::uint32_t b = 0; b < block_target.size(); ++b) {
    for (std::uint32_t b2 = 0; b2 < block_target.size(); ++b2) {
      if (rng() % 4 != 0) continue;
      const auto y = block_target[b], y2 = block_target[b2];
      graph.edges.push_back({b, b2, gen::below(c.lattice(y, y2), c.hom(y, y2), rng)});
    }
  }
  VFunctor p;
  p.source = g.source;
  p.target = free_vcategory(a.base(), graph);
  p.map = block;
  VFunctor f;
  f.source = p.target;
  f.target = g.target;
  f.map = block_target;
  Case k;
  k.hypothesis = is_od(g) && p.surjective() && validate_vfunctor(p).ok() && validate_vfunctor(f).ok();
  if (k.hypothesis && !is_od(f)) {
    k.conclusion = false;
    k.what = "quotient axiom fails";
  }
  return k;
}

}  // namespace

std::vector<AxiomResult> run_axioms(const QuantaloidPtr& base, const std::vector<std::string>& axioms,
                                    std::uint64_t seed, std::size_t cases) {
  std::vector<AxiomResult> out;
  for (const auto& name : axioms) {
    AxiomResult r;
    r.axiom = name;
    std::function<Case(const QuantaloidPtr&, Rng&)> make;
    if (name == "A1") make = case_a1;
    if (name == "A2") make = case_a2;
    if (name == "A3") make = case_a3;
    if (name == "A4") make = case_a4;
    if (name == "A5") make = case_a5;
    if (name == "A6") make = case_a6;
    if (!make) fail(ErrorKind::InvalidArgument, "unknown axiom '" + name + "'");
    if (name == "A2" && !base->locally_distributive()) {
      r.skipped = true;
      r.note = "base is not locally distributive";
      out.push_back(std::move(r));
      continue;
    }
    // One stream per axiom so that suites can be run separately.
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(name[1] - '0'));
    for (std::size_t i = 0; i < cases; ++i) {
      const Case k = make(base, rng);
      ++r.cases;
      if (!k.hypothesis) continue;
      ++r.hypothesis_held;
      if (!k.conclusion) {
        ++r.violations;
        if (r.examples.size() < 5) r.examples.push_back("case " + std::to_string(i) + ": " + k.what);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qbisim
