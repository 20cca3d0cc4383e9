#include "qbisim/cts.hpp"

#include <algorithm>
#include <set>

#include "qbisim/limits.hpp"

namespace qbisim {

std::uint32_t span_source(const FiniteCategory& t, const Span& s) { return t.morphism(s.left).target; }
std::uint32_t span_target(const FiniteCategory& t, const Span& s) { return t.morphism(s.right).target; }

void check_span(const FiniteCategory& t, const Span& s) {
  if (s.left >= t.morphism_count() || s.right >= t.morphism_count() || s.apex >= t.object_count()) {
    fail(ErrorKind::UnknownElement, "span refers to a missing object or morphism");
  }
  if (t.morphism(s.left).source != s.apex || t.morphism(s.right).source != s.apex) {
    fail(ErrorKind::UnknownElement, "span legs do not start at the apex " + t.object_name(s.apex));
  }
}

std::vector<Span> enumerate_spans(const FiniteCategory& t, std::uint32_t x, std::uint32_t y) {
  std::vector<Span> out;
  for (std::uint32_t a = 0; a < t.object_count(); ++a) {
    for (auto d : t.hom(a, x)) {
      for (auto c : t.hom(a, y)) out.push_back({a, d, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Span span_compose(const FiniteCategory& t, const Span& s, const Span& u) {
  if (span_target(t, s) != span_source(t, u)) fail(ErrorKind::NotComposable, "spans do not meet in the middle");
  const auto pb = t.pullback(s.right, u.left);
  if (!pb) {
    fail(ErrorKind::NotComposable, "no chosen pullback for " + t.morphism(s.right).name + ", " + t.morphism(u.left).name);
  }
  return {pb->apex, t.compose(pb->left, s.left), t.compose(pb->right, u.right)};
}

bool span_leq(const FiniteCategory& t, const Span& s, const Span& u) {
  if (span_source(t, s) != span_source(t, u) || span_target(t, s) != span_target(t, u)) {
    fail(ErrorKind::AmbientMismatch, "spans have different ends");
  }
  for (auto m : t.hom(s.apex, u.apex)) {
    if (t.compose(m, u.left) == s.left && t.compose(m, u.right) == s.right) return true;
  }
  return false;
}

std::string format_span(const FiniteCategory& t, const Span& s) {
  const std::uint32_t x = span_source(t, s);
  const std::uint32_t y = span_target(t, s);
  if (t.hom(s.apex, x).size() == 1 && t.hom(s.apex, y).size() == 1) return "(" + t.object_name(s.apex) + ")";
  return "(" + t.object_name(s.apex) + "," + t.morphism(s.left).name + "," + t.morphism(s.right).name + ")";
}

// ---------------------------------------------------------------------------

std::size_t CribleQuantaloid::index_of(const Hom& h, const Span& s) const {
  const auto it = std::lower_bound(h.spans.begin(), h.spans.end(), s);
  if (it == h.spans.end() || *it != s) fail(ErrorKind::UnknownElement, "span is not in this hom");
  return static_cast<std::size_t>(it - h.spans.begin());
}

Bits CribleQuantaloid::close(const Hom& h, const Bits& gens) const {
  Bits out(h.spans.size());
  gens.for_each([&](std::size_t i) { out |= h.below[i]; });
  return out;
}

const Bits& CribleQuantaloid::members(std::uint32_t x, std::uint32_t y, const Elem& crible) const {
  const Hom& h = homs_[x * n_ + y];
  if (crible.index() >= h.cribles.size()) fail(ErrorKind::UnknownElement, "crible index out of range");
  return h.cribles[crible.index()];
}

Elem CribleQuantaloid::generated(std::uint32_t x, std::uint32_t y, const std::vector<Span>& spans) const {
  const Hom& h = homs_[x * n_ + y];
  Bits gens(h.spans.size());
  for (const auto& s : spans) gens.set(index_of(h, s));
  return Elem::at(h.lookup.at(close(h, gens)));
}

Elem CribleQuantaloid::from_members(std::uint32_t x, std::uint32_t y, const Bits& members) const {
  const Hom& h = homs_[x * n_ + y];
  const auto it = h.lookup.find(members);
  if (it == h.lookup.end()) fail(ErrorKind::UnknownElement, "span set is not down-closed");
  return Elem::at(it->second);
}

std::shared_ptr<const CribleQuantaloid> CribleQuantaloid::build(FinCatPtr t) {
  const FiniteCategory& c = *t;
  if (auto r = validate_fincat(c); !r.ok()) fail(ErrorKind::ValidationError, "base category: " + r.summary());
  if (!c.has_pullbacks()) fail(ErrorKind::ValidationError, "base category has no chosen pullbacks");
  auto out = std::make_shared<CribleQuantaloid>();
  CribleQuantaloid& s = *out;
  s.t_ = t;
  s.n_ = c.object_count();
  const auto n = static_cast<std::uint32_t>(s.n_);
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::crible;
  d.label = "S(T)";
  d.objects = c.object_names();
  d.category = t;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      Hom h;
      h.spans = enumerate_spans(c, x, y);
      const std::size_t k = h.spans.size();
      h.below.assign(k, Bits(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (span_leq(c, h.spans[j], h.spans[i])) h.below[i].set(j);
        }
      }
      // Every crible is a union of principal ones.
      std::set<Bits> seen{Bits(k)};
      std::vector<Bits> todo{Bits(k)};
      while (!todo.empty()) {
        const Bits cur = std::move(todo.back());
        todo.pop_back();
        for (std::size_t i = 0; i < k; ++i) {
          if (cur.test(i)) continue;
          Bits next = cur | h.below[i];
          if (seen.insert(next).second) {
            if (seen.size() > limits().max_lattice_elements) {
              fail(ErrorKind::SizeLimit, "too many cribles in S(T)(" + c.object_name(x) + "," + c.object_name(y) + ")");
            }
            todo.push_back(std::move(next));
          }
        }
      }
      h.cribles.assign(seen.begin(), seen.end());
      std::stable_sort(h.cribles.begin(), h.cribles.end(),
                       [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
      OrderSpec spec;
      for (std::uint32_t i = 0; i < h.cribles.size(); ++i) {
        h.lookup.emplace(h.cribles[i], i);
        std::string name = "{";
        h.cribles[i].for_each([&](std::size_t j) {
          if (name.size() > 1) name += ",";
          name += format_span(c, h.spans[j]);
        });
        spec.names.push_back(name + "}");
      }
      for (std::uint32_t i = 0; i < h.cribles.size(); ++i) {
        for (std::uint32_t j = 0; j < h.cribles.size(); ++j) {
          if (i != j && h.cribles[i].is_subset_of(h.cribles[j])) spec.leq.emplace_back(i, j);
        }
      }
      d.homs.push_back(Lattice::from_order(spec));
      s.homs_.push_back(std::move(h));
    }
  }
  auto tensor = std::make_shared<DenseTensor>(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const Hom& f = s.homs_[x * n + y];
        const Hom& g = s.homs_[y * n + z];
        const Hom& h = s.homs_[x * n + z];
        // closed[i][j] = (f_i o g_j) down
        std::vector<Bits> closed;
        closed.reserve(f.spans.size() * g.spans.size());
        for (const auto& a : f.spans) {
          for (const auto& b : g.spans) closed.push_back(h.below[s.index_of(h, span_compose(c, a, b))]);
        }
        std::vector<std::uint32_t> table;
        table.reserve(f.cribles.size() * g.cribles.size());
        for (const auto& m : f.cribles) {
          for (const auto& k : g.cribles) {
            Bits acc(h.spans.size());
            m.for_each([&](std::size_t i) { k.for_each([&](std::size_t j) { acc |= closed[i * g.spans.size() + j]; }); });
            table.push_back(h.lookup.at(acc));
          }
        }
        tensor->set(x, y, z, std::move(table));
      }
    }
  }
  d.tensor = tensor;
  for (std::uint32_t x = 0; x < n; ++x) {
    const Hom& h = s.homs_[x * n + x];
    Bits gen(h.spans.size());
    gen.set(s.index_of(h, {x, c.identity(x), c.identity(x)}));
    d.ids.push_back(Elem::at(h.lookup.at(s.close(h, gen))));
  }
  s.q_ = Quantaloid::make(std::move(d));
  return out;
}

CriblePtr build_S_quantaloid(FinCatPtr t) { return CribleQuantaloid::build(std::move(t)); }

VCatPtr cts_to_vcat(const CribleQuantaloid& s, const CtsSpec& spec) {
  const FiniteCategory& t = *s.category();
  Graph g;
  for (const auto& st : spec.states) {
    if (st.type >= t.object_count()) fail(ErrorKind::UnknownElement, "state '" + st.name + "' has an unknown type");
    g.vertices.push_back({st.name, st.type});
  }
  for (const auto& tr : spec.transitions) {
    if (tr.source >= spec.states.size() || tr.target >= spec.states.size()) {
      fail(ErrorKind::DanglingReference, "transition refers to a missing state");
    }
    check_span(t, tr.label);
    const auto x = spec.states[tr.source].type;
    const auto y = spec.states[tr.target].type;
    if (span_source(t, tr.label) != x || span_target(t, tr.label) != y) {
      fail(ErrorKind::TypeMismatch, "label " + format_span(t, tr.label) + " does not span " + t.object_name(x) + " and " +
                                        t.object_name(y));
    }
    g.edges.push_back({tr.source, tr.target, s.principal(x, y, tr.label)});
  }
  return free_vcategory(s.quantaloid(), g);
}

// ---------------------------------------------------------------------------

Report validate_cat_adjunction(const CatAdjunction& adj) {
  Report report;
  report.merge(validate_cat_functor(adj.left), "left: ");
  report.merge(validate_cat_functor(adj.right), "right: ");
  if (!report.ok()) return report;
  const FiniteCategory& a = *adj.left.source;
  const FiniteCategory& b = *adj.left.target;
  if (adj.right.source != adj.left.target || adj.right.target != adj.left.source) {
    report.add("typing", "functors are not opposite");
    return report;
  }
  if (adj.counit.size() != b.object_count()) {
    report.add("counit", "one component per object expected");
    return report;
  }
  const auto& fo = adj.left.on_objects;
  const auto& go = adj.right.on_objects;
  for (std::uint32_t y = 0; y < b.object_count(); ++y) {
    const auto& m = b.morphism(adj.counit[y]);
    if (m.source != fo[go[y]] || m.target != y) report.add("counit", "component at " + b.object_name(y) + " is mistyped");
  }
  if (!report.ok()) return report;
  for (std::uint32_t g = 0; g < b.morphism_count(); ++g) {
    const auto& m = b.morphism(g);
    const auto lhs = b.compose(adj.left.on_morphisms[adj.right.on_morphisms[g]], adj.counit[m.target]);
    const auto rhs = b.compose(adj.counit[m.source], g);
    if (lhs != rhs) report.add("naturality", "counit is not natural at " + m.name);
  }
  for (std::uint32_t x = 0; x < a.object_count(); ++x) {
    for (std::uint32_t y = 0; y < b.object_count(); ++y) {
      std::set<std::uint32_t> hit;
      for (auto t : a.hom(x, go[y])) hit.insert(b.compose(adj.left.on_morphisms[t], adj.counit[y]));
      if (hit.size() != a.hom(x, go[y]).size() || hit.size() != b.hom(fo[x], y).size()) {
        report.add("transposition", "not a bijection at " + a.object_name(x) + ", " + b.object_name(y));
      }
    }
  }
  return report;
}

namespace {

Span image(const CatFunctor& f, const Span& s) {
  return {f.on_objects[s.apex], f.on_morphisms[s.left], f.on_morphisms[s.right]};
}

TsePtr s_tse(const CatFunctor& f, const CribleQuantaloid& from, const CribleQuantaloid& to) {
  const FiniteCategory& t = *from.category();
  const auto n = static_cast<std::uint32_t>(t.object_count());
  std::vector<Carrier> carriers;
  for (std::uint32_t x = 0; x < n; ++x) carriers.push_back({t.object_name(x), x, f.on_objects[x]});
  TwoSidedEnrichment tse(from.quantaloid(), to.quantaloid(), std::move(carriers));
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const auto& spans = from.spans(x, y);
      const auto& src = from.quantaloid()->hom(x, y);
      std::vector<Elem> table;
      for (const auto& m : src->elements()) {
        std::vector<Span> images;
        from.members(x, y, m).for_each([&](std::size_t i) { images.push_back(image(f, spans[i])); });
        table.push_back(to.generated(f.on_objects[x], f.on_objects[y], images));
      }
      tse.set_component(x, y, MonotoneMap::tabulated(src, to.quantaloid()->hom(f.on_objects[x], f.on_objects[y]),
                                                     std::move(table)));
    }
  }
  return std::make_shared<const TwoSidedEnrichment>(std::move(tse));
}

}  // namespace

SRefinement s_functor(const CatFunctor& f, const CribleQuantaloid& from, const CribleQuantaloid& to,
                      const CatAdjunction* adjunction) {
  if (f.source != from.category() || f.target != to.category()) {
    fail(ErrorKind::BaseMismatch, "functor is not between the categories of the crible quantaloids");
  }
  if (auto r = validate_cat_functor(f); !r.ok()) fail(ErrorKind::InvalidArgument, "not a functor: " + r.summary());
  if (auto r = check_preserves_pullbacks(f); !r.ok()) fail(ErrorKind::NotExact, r.summary());
  SRefinement out;
  out.tse = s_tse(f, from, to);
  out.adjoints = local_right_adjoints(*out.tse);

  // U(N) = {s : F s in N}
  const FiniteCategory& t = *from.category();
  const auto n = static_cast<std::uint32_t>(t.object_count());
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const auto& spans = from.spans(x, y);
      const auto fx = f.on_objects[x], fy = f.on_objects[y];
      const auto& target_spans = to.spans(fx, fy);
      for (const auto& k : to.quantaloid()->hom(fx, fy)->elements()) {
        const Bits& in = to.members(fx, fy, k);
        Bits pre(spans.size());
        for (std::size_t i = 0; i < spans.size(); ++i) {
          const auto it = std::lower_bound(target_spans.begin(), target_spans.end(), image(f, spans[i]));
          pre.assign(i, in.test(static_cast<std::size_t>(it - target_spans.begin())));
        }
        if (out.adjoints.at(n, x, y)(k) != from.from_members(x, y, pre)) {
          fail(ErrorKind::InternalAssertion, "computed local right adjoint differs from the inverse image");
        }
      }
    }
  }

  if (adjunction == nullptr) return out;
  const CatAdjunction& adj = *adjunction;
  if (!(adj.left.source == f.source && adj.left.target == f.target && adj.left.on_objects == f.on_objects &&
        adj.left.on_morphisms == f.on_morphisms)) {
    fail(ErrorKind::InvalidArgument, "adjunction's left functor differs from F");
  }
  if (auto r = validate_cat_adjunction(adj); !r.ok()) fail(ErrorKind::InvalidArgument, "not an adjunction: " + r.summary());
  const SRefinement g = s_functor(adj.right, to, from);
  out.right_tse = g.tse;
  const FiniteCategory& b = *to.category();
  const auto m = static_cast<std::uint32_t>(b.object_count());
  for (std::uint32_t x = 0; x < m; ++x) {
    for (std::uint32_t y = 0; y < m; ++y) {
      const auto gx = adj.right.on_objects[x], gy = adj.right.on_objects[y];
      const auto& spans = from.spans(gx, gy);
      const auto& src = from.quantaloid()->hom(gx, gy);
      const auto& dst = to.quantaloid()->hom(x, y);
      std::vector<Elem> table;
      for (const auto& nn : src->elements()) {
        std::vector<Span> images;
        from.members(gx, gy, nn).for_each([&](std::size_t i) {
          const Span& s = spans[i];
          images.push_back({f.on_objects[s.apex], b.compose(f.on_morphisms[s.left], adj.counit[x]),
                            b.compose(f.on_morphisms[s.right], adj.counit[y])});
        });
        table.push_back(to.generated(x, y, images));
      }
      MonotoneMap r = MonotoneMap::tabulated(src, dst, std::move(table));
      const MonotoneMap& sg = g.tse->component(x, y);
      for (const auto& nn : src->elements()) {
        for (const auto& mm : dst->elements()) {
          if (dst->leq(r(nn), mm) != src->leq(nn, sg(mm))) {
            fail(ErrorKind::NoAdjoint, "R is not left adjoint to S(G) at (" + b.object_name(x) + "," + b.object_name(y) + ")");
          }
        }
      }
      out.left_of_right.push_back(std::move(r));
    }
  }
  return out;
}

VCatPtr refine(const SRefinement& r, const VCatPtr& a) { return apply_cob(*r.tse, a); }
VFunctor refine(const SRefinement& r, const VFunctor& f) { return apply_cob(*r.tse, f); }

}  // namespace qbisim
