#include "qbisim/cob.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qbisim/limits.hpp"

namespace qbisim {

TwoSidedEnrichment::TwoSidedEnrichment(QuantaloidPtr source, QuantaloidPtr target, std::vector<Carrier> carriers)
    : source_(std::move(source)), target_(std::move(target)), carriers_(std::move(carriers)) {
  for (const auto& c : carriers_) {
    if (c.minus >= source_->object_count() || c.plus >= target_->object_count()) {
      fail(ErrorKind::UnknownElement, "carrier '" + c.name + "' has a leg outside the quantaloids");
    }
  }
  const auto n = static_cast<std::uint32_t>(carriers_.size());
  components_.reserve(n * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const auto& src = source_->hom(carriers_[x].minus, carriers_[y].minus);
      const auto& tgt = target_->hom(carriers_[x].plus, carriers_[y].plus);
      components_.emplace_back(src, tgt, [bot = tgt->bottom()](const Elem&) { return bot; });
    }
  }
}

std::optional<std::uint32_t> TwoSidedEnrichment::find(std::string_view name) const {
  for (std::uint32_t x = 0; x < carriers_.size(); ++x) {
    if (carriers_[x].name == name) return x;
  }
  return std::nullopt;
}

void TwoSidedEnrichment::set_component(std::uint32_t x, std::uint32_t y, MonotoneMap map) {
  if (map.source() != source_->hom(carriers_[x].minus, carriers_[y].minus) ||
      map.target() != target_->hom(carriers_[x].plus, carriers_[y].plus)) {
    fail(ErrorKind::TypeMismatch,
         "component (" + carriers_[x].name + "," + carriers_[y].name + ") has the wrong source or target lattice");
  }
  components_[x * size() + y] = std::move(map);
}

bool TwoSidedEnrichment::left_leg_bijective() const {
  if (carriers_.size() != source_->object_count()) return false;
  std::vector<bool> hit(source_->object_count(), false);
  for (const auto& c : carriers_) {
    if (hit[c.minus]) return false;
    hit[c.minus] = true;
  }
  return true;
}

std::uint32_t TwoSidedEnrichment::carrier_over(std::uint32_t v) const {
  for (std::uint32_t x = 0; x < carriers_.size(); ++x) {
    if (carriers_[x].minus == v) return x;
  }
  fail(ErrorKind::InvalidArgument, "no carrier over " + source_->object_name(v));
}

namespace {

// Elements to range over when checking an inequality that is join-preserving
// in this argument: bottom plus atoms for powersets, everything otherwise.
std::vector<Elem> probes(const Lattice& l, bool join_preserving) {
  if (join_preserving && l.is_powerset()) {
    std::vector<Elem> out{l.bottom()};
    for (std::size_t i = 0; i < l.width(); ++i) out.push_back(l.atom(i));
    return out;
  }
  return l.elements();
}

// Calls check(i, j) over the index grid, or over a fixed-seed sample when the
// grid exceeds the work budget. Returns false when sampled.
template <class Check>
bool sweep(std::size_t rows, std::size_t cols, Check check) {
  const std::size_t budget = limits().max_validation_work;
  if (rows == 0 || cols == 0) return true;
  if (rows <= budget / cols) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (!check(i, j)) return true;
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> di(0, rows - 1), dj(0, cols - 1);
  for (std::size_t s = 0; s < budget; ++s) {
    if (!check(di(rng), dj(rng))) break;
  }
  return false;
}

std::string pair_name(const TwoSidedEnrichment& f, std::uint32_t x, std::uint32_t y) {
  return "(" + f.carrier(x).name + "," + f.carrier(y).name + ")";
}

}  // namespace

Report validate_tse(const TwoSidedEnrichment& f) {
  Report report;
  const Quantaloid& v = *f.source();
  const Quantaloid& w = *f.target();
  const auto n = static_cast<std::uint32_t>(f.size());
  std::vector<bool> joins(n * n, false);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const MonotoneMap& c = f.component(x, y);
      if (c.source() != v.hom(f.carrier(x).minus, f.carrier(y).minus) ||
          c.target() != w.hom(f.carrier(x).plus, f.carrier(y).plus)) {
        report.add("typing", "component " + pair_name(f, x, y));
        continue;
      }
      const Report m = c.validate();
      if (!m.ok()) report.merge(m, "component " + pair_name(f, x, y) + ": ");
      joins[x * n + y] = m.ok() && c.preserves_joins();
    }
  }
  if (!report.ok()) return report;

  for (std::uint32_t x = 0; x < n; ++x) {
    const auto& cx = f.carrier(x);
    const Elem img = f.apply(x, x, v.id(cx.minus));
    if (!w.hom(cx.plus, cx.plus)->leq(w.id(cx.plus), img)) {
      report.add("unit", "id is not below the image of id at carrier " + cx.name);
    }
  }

  bool sampled = false;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto &cx = f.carrier(x), &cy = f.carrier(y), &cz = f.carrier(z);
        // A(f) (x) A(g) <= A(f (x) g) is join-preserving in f when A_{x,y}
        // and A_{x,z} are, and likewise in g.
        const bool jf = joins[x * n + y] && joins[x * n + z];
        const bool jg = joins[y * n + z] && joins[x * n + z];
        const auto fs = probes(*v.hom(cx.minus, cy.minus), jf);
        const auto gs = probes(*v.hom(cy.minus, cz.minus), jg);
        const Lattice& out = *w.hom(cx.plus, cz.plus);
        const bool complete = sweep(fs.size(), gs.size(), [&](std::size_t i, std::size_t j) {
          const Elem lhs = w.tensor(cx.plus, cy.plus, cz.plus, f.apply(x, y, fs[i]), f.apply(y, z, gs[j]));
          const Elem rhs = f.apply(x, z, v.tensor(cx.minus, cy.minus, cz.minus, fs[i], gs[j]));
          if (out.leq(lhs, rhs)) return true;
          report.add("composition", "carriers " + cx.name + "," + cy.name + "," + cz.name + " at " +
                                        v.hom(cx.minus, cy.minus)->format(fs[i]) + ", " +
                                        v.hom(cy.minus, cz.minus)->format(gs[j]));
          return false;
        });
        sampled = sampled || !complete;
      }
    }
  }
  if (sampled) report.note("lax composition was sampled on some carrier triples");
  return report;
}

TsePtr identity_tse(const QuantaloidPtr& v) {
  std::vector<Carrier> carriers;
  for (std::uint32_t u = 0; u < v->object_count(); ++u) carriers.push_back({v->object_name(u), u, u});
  TwoSidedEnrichment f(v, v, std::move(carriers));
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    for (std::uint32_t y = 0; y < f.size(); ++y) f.set_component(x, y, MonotoneMap::identity(v->hom(x, y)));
  }
  return std::make_shared<const TwoSidedEnrichment>(std::move(f));
}

TsePtr compose_tse(const TwoSidedEnrichment& f, const TwoSidedEnrichment& g) {
  if (f.target() != g.source()) fail(ErrorKind::NotComposable, "target of the first enrichment is not the source of the second");
  std::vector<Carrier> carriers;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> legs;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      if (f.carrier(x).plus != g.carrier(y).minus) continue;
      carriers.push_back({"(" + f.carrier(x).name + "," + g.carrier(y).name + ")", f.carrier(x).minus, g.carrier(y).plus});
      legs.emplace_back(x, y);
    }
  }
  TwoSidedEnrichment h(f.source(), g.target(), std::move(carriers));
  for (std::uint32_t i = 0; i < legs.size(); ++i) {
    for (std::uint32_t j = 0; j < legs.size(); ++j) {
      h.set_component(i, j, f.component(legs[i].first, legs[j].first).then(g.component(legs[i].second, legs[j].second)));
    }
  }
  return std::make_shared<const TwoSidedEnrichment>(std::move(h));
}

namespace {

// (a, x) with a+ = x-, a-major.
std::vector<std::pair<std::uint32_t, std::uint32_t>> left_objects(const TwoSidedEnrichment& f, const VCategory& a) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      if (f.carrier(x).minus == a.extent(i)) out.emplace_back(i, x);
    }
  }
  return out;
}

// (b, x) with b+ = x+, b-major.
std::vector<std::pair<std::uint32_t, std::uint32_t>> right_objects(const TwoSidedEnrichment& f, const VCategory& b) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < b.size(); ++i) {
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      if (f.carrier(x).plus == b.extent(i)) out.emplace_back(i, x);
    }
  }
  return out;
}

std::uint32_t position(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& objects, std::uint32_t a,
                       std::uint32_t x) {
  const auto it = std::lower_bound(objects.begin(), objects.end(), std::make_pair(a, x));
  if (it == objects.end() || *it != std::make_pair(a, x)) {
    fail(ErrorKind::InternalAssertion, "object missing from a change of base");
  }
  return static_cast<std::uint32_t>(it - objects.begin());
}

}  // namespace

VCatPtr apply_cob(const TwoSidedEnrichment& f, const VCatPtr& a) {
  if (a->base() != f.source()) fail(ErrorKind::BaseMismatch, "category is not over the source of the enrichment");
  const auto objects = left_objects(f, *a);
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (auto [i, x] : objects) {
    names.push_back("(" + a->name(i) + "," + f.carrier(x).name + ")");
    extents.push_back(f.carrier(x).plus);
  }
  VCategory out(f.target(), std::move(names), std::move(extents));
  for (std::uint32_t p = 0; p < objects.size(); ++p) {
    for (std::uint32_t q = 0; q < objects.size(); ++q) {
      const auto [i, x] = objects[p];
      const auto [j, y] = objects[q];
      out.set_hom(p, q, f.apply(x, y, a->hom(i, j)));
    }
  }
  return std::make_shared<const VCategory>(std::move(out));
}

VFunctor apply_cob(const TwoSidedEnrichment& f, const VFunctor& h) {
  VFunctor out;
  out.source = apply_cob(f, h.source);
  out.target = apply_cob(f, h.target);
  const auto target_objects = left_objects(f, *h.target);
  for (auto [i, x] : left_objects(f, *h.source)) out.map.push_back(position(target_objects, h.map[i], x));
  return out;
}

LocalAdjoints local_right_adjoints(const TwoSidedEnrichment& f) {
  LocalAdjoints g;
  const Quantaloid& v = *f.source();
  const Quantaloid& w = *f.target();
  const auto n = static_cast<std::uint32_t>(f.size());
  g.bijective = f.left_leg_bijective();
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      try {
        g.maps.push_back(right_adjoint_of_monotone(f.component(x, y)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoAdjoint) throw;
        fail(ErrorKind::NoAdjoint, "component " + pair_name(f, x, y) + ": " + e.what());
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto& c = f.carrier(x);
    if (!v.hom(c.minus, c.minus)->leq(v.id(c.minus), g.at(n, x, x)(w.id(c.plus)))) {
      g.unit_coherent = false;
      g.report.add("unit coherence", "id is not below G(id) at carrier " + c.name);
    }
  }
  bool sampled = false;
  for (std::uint32_t x = 0; x < n && g.composition_coherent; ++x) {
    for (std::uint32_t y = 0; y < n && g.composition_coherent; ++y) {
      for (std::uint32_t z = 0; z < n && g.composition_coherent; ++z) {
        const auto &cx = f.carrier(x), &cy = f.carrier(y), &cz = f.carrier(z);
        const auto fs = w.hom(cx.plus, cy.plus)->elements();
        const auto gs = w.hom(cy.plus, cz.plus)->elements();
        const Lattice& out = *v.hom(cx.minus, cz.minus);
        const bool complete = sweep(fs.size(), gs.size(), [&](std::size_t i, std::size_t j) {
          const Elem lhs = v.tensor(cx.minus, cy.minus, cz.minus, g.at(n, x, y)(fs[i]), g.at(n, y, z)(gs[j]));
          const Elem rhs = g.at(n, x, z)(w.tensor(cx.plus, cy.plus, cz.plus, fs[i], gs[j]));
          if (out.leq(lhs, rhs)) return true;
          g.composition_coherent = false;
          g.report.add("composition coherence", "carriers " + cx.name + "," + cy.name + "," + cz.name + " at " +
                                                    w.hom(cx.plus, cy.plus)->format(fs[i]) + ", " +
                                                    w.hom(cy.plus, cz.plus)->format(gs[j]));
          return false;
        });
        sampled = sampled || !complete;
      }
    }
  }
  if (sampled) g.report.note("composition coherence was sampled on some carrier triples");
  if (!g.bijective) g.report.note("left leg is not a bijection onto the source objects");
  return g;
}

VCatPtr right_adjoint_cob(const TwoSidedEnrichment& f, const VCatPtr& b) {
  return right_adjoint_cob(f, local_right_adjoints(f), b);
}

VCatPtr right_adjoint_cob(const TwoSidedEnrichment& f, const LocalAdjoints& g, const VCatPtr& b) {
  if (b->base() != f.target()) fail(ErrorKind::BaseMismatch, "category is not over the target of the enrichment");
  if (g.maps.size() != f.size() * f.size()) fail(ErrorKind::NoAdjoint, "local adjoints do not match the enrichment");
  if (!g.coherent()) fail(ErrorKind::NoAdjoint, "local right adjoints are not coherent: " + g.report.summary());
  const auto n = f.size();
  const auto objects = right_objects(f, *b);
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (auto [i, x] : objects) {
    names.push_back("(" + b->name(i) + "," + f.carrier(x).name + ")");
    extents.push_back(f.carrier(x).minus);
  }
  VCategory out(f.source(), std::move(names), std::move(extents));
  for (std::uint32_t p = 0; p < objects.size(); ++p) {
    for (std::uint32_t q = 0; q < objects.size(); ++q) {
      const auto [i, x] = objects[p];
      const auto [j, y] = objects[q];
      out.set_hom(p, q, g.at(n, x, y)(b->hom(i, j)));
    }
  }
  return std::make_shared<const VCategory>(std::move(out));
}

VFunctor right_adjoint_cob(const TwoSidedEnrichment& f, const LocalAdjoints& g, const VFunctor& h) {
  VFunctor out;
  out.source = right_adjoint_cob(f, g, h.source);
  out.target = right_adjoint_cob(f, g, h.target);
  const auto target_objects = right_objects(f, *h.target);
  for (auto [i, x] : right_objects(f, *h.source)) out.map.push_back(position(target_objects, h.map[i], x));
  return out;
}

VFunctor transpose_to_right(const TwoSidedEnrichment& f, const VCatPtr& a, const VFunctor& h, const VCatPtr& gb) {
  if (!f.left_leg_bijective()) fail(ErrorKind::InvalidArgument, "transposition needs a bijective left leg");
  const auto fa_objects = left_objects(f, *a);
  const auto gb_objects = right_objects(f, *h.target);
  if (h.map.size() != fa_objects.size() || gb->size() != gb_objects.size()) {
    fail(ErrorKind::InvalidArgument, "functor does not start at F_@A or the target is not F^@B");
  }
  VFunctor out;
  out.source = a;
  out.target = gb;
  for (std::uint32_t i = 0; i < a->size(); ++i) {
    const std::uint32_t x = f.carrier_over(a->extent(i));
    out.map.push_back(position(gb_objects, h.map[position(fa_objects, i, x)], x));
  }
  return out;
}

VFunctor transpose_to_left(const TwoSidedEnrichment& f, const VCatPtr& b, const VFunctor& k, const VCatPtr& fa) {
  if (!f.left_leg_bijective()) fail(ErrorKind::InvalidArgument, "transposition needs a bijective left leg");
  const auto fa_objects = left_objects(f, *k.source);
  const auto gb_objects = right_objects(f, *b);
  if (fa->size() != fa_objects.size() || k.target->size() != gb_objects.size()) {
    fail(ErrorKind::InvalidArgument, "functor does not land in F^@B or the source is not F_@A");
  }
  VFunctor out;
  out.source = fa;
  out.target = b;
  for (auto [i, x] : fa_objects) out.map.push_back(gb_objects[k.map[i]].first);
  return out;
}

Report check_caten_2cell(const CatenTwoCell& c) {
  const TwoSidedEnrichment& a = *c.from;
  const TwoSidedEnrichment& b = *c.to;
  if (a.source() != b.source() || a.target() != b.target()) fail(ErrorKind::NotParallel, "enrichments are not parallel");
  Report report;
  if (c.map.size() != a.size()) {
    report.add("size", "carrier map has the wrong size");
    return report;
  }
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    if (c.map[x] >= b.size()) {
      report.add("range", "carrier " + a.carrier(x).name + " maps outside the target span");
      return report;
    }
    const auto& to = b.carrier(c.map[x]);
    if (to.minus != a.carrier(x).minus || to.plus != a.carrier(x).plus) {
      report.add("span", "carrier " + a.carrier(x).name + " is not sent over the same legs");
    }
  }
  if (!report.ok()) return report;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (!a.component(x, y).pointwise_leq(b.component(c.map[x], c.map[y]))) {
        report.add("component", "A" + pair_name(a, x, y) + " is not below B" + pair_name(b, c.map[x], c.map[y]));
      }
    }
  }
  return report;
}

bool caten_2cell_leq(const CatenTwoCell& c, const CatenTwoCell& d) {
  if (c.from != d.from || c.to != d.to) fail(ErrorKind::NotParallel, "2-cells are not parallel");
  const TwoSidedEnrichment& a = *c.from;
  const TwoSidedEnrichment& b = *c.to;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    const auto& cx = a.carrier(x);
    const Elem img = b.apply(c.map[x], d.map[x], a.source()->id(cx.minus));
    if (!a.target()->hom(cx.plus, cx.plus)->leq(a.target()->id(cx.plus), img)) return false;
  }
  return true;
}

TsePtr vcat_as_tse(const VCatPtr& a) {
  const QuantaloidPtr one = quantaloids::unit_base();
  std::vector<Carrier> carriers;
  for (std::uint32_t i = 0; i < a->size(); ++i) carriers.push_back({a->name(i), 0, a->extent(i)});
  TwoSidedEnrichment f(one, a->base(), std::move(carriers));
  for (std::uint32_t i = 0; i < a->size(); ++i) {
    for (std::uint32_t j = 0; j < a->size(); ++j) {
      f.set_component(i, j, MonotoneMap::tabulated(one->hom(0, 0), a->base()->hom(a->extent(i), a->extent(j)),
                                                   {a->hom(i, j)}));
    }
  }
  return std::make_shared<const TwoSidedEnrichment>(std::move(f));
}

VCatPtr tse_as_vcat(const TwoSidedEnrichment& f) {
  const Quantaloid& s = *f.source();
  if (s.object_count() != 1 || s.hom(0, 0)->element_count() != 1) {
    fail(ErrorKind::BaseMismatch, "source of the enrichment is not the one-element base");
  }
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (const auto& c : f.carriers()) {
    names.push_back(c.name);
    extents.push_back(c.plus);
  }
  VCategory out(f.target(), std::move(names), std::move(extents));
  const Elem top = s.hom(0, 0)->top();
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    for (std::uint32_t j = 0; j < f.size(); ++j) out.set_hom(i, j, f.apply(i, j, top));
  }
  return std::make_shared<const VCategory>(std::move(out));
}

// ---------------------------------------------------------------------------

MonoidCongruence MonoidCongruence::graph(QuantaloidPtr from, QuantaloidPtr to, const std::vector<std::string>& image) {
  const WordIndex* src = from->words();
  const WordIndex* dst = to->words();
  if (src == nullptr || dst == nullptr) fail(ErrorKind::InvalidArgument, "congruences relate language quantales");
  if (image.size() != src->alphabet().size()) fail(ErrorKind::InvalidArgument, "one image word per letter expected");
  std::vector<std::vector<std::uint32_t>> letters;
  for (const auto& w : image) {
    auto parsed = dst->parse(w);
    if (!parsed) fail(ErrorKind::UnknownElement, "image '" + w + "' is not a word over the target alphabet");
    letters.push_back(*parsed);
  }
  MonoidCongruence r{std::move(from), std::move(to), {}};
  for (std::size_t m = 0; m < src->size(); ++m) {
    std::vector<std::uint32_t> out;
    for (auto l : src->letters(m)) out.insert(out.end(), letters[l].begin(), letters[l].end());
    if (auto n = dst->index(out)) r.pairs.emplace_back(m, *n);
  }
  return r;
}

MonoidCongruence MonoidCongruence::inverse() const {
  MonoidCongruence r{to, from, {}};
  for (auto [m, n] : pairs) r.pairs.emplace_back(n, m);
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

bool MonoidCongruence::contains(std::size_t m, std::size_t n) const {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(m, n)) != pairs.end();
}

namespace {

// Join-preserving map of powersets given by the image of every atom.
MonotoneMap atom_map(LatticePtr src, LatticePtr dst, std::vector<Bits> images) {
  auto shared = std::make_shared<const std::vector<Bits>>(std::move(images));
  const std::size_t width = dst->width();
  return MonotoneMap(std::move(src), std::move(dst), [shared, width](const Elem& e) {
    Bits out(width);
    e.bits().for_each([&](std::size_t i) { out |= (*shared)[i]; });
    return Elem::of(std::move(out));
  });
}

std::vector<std::uint32_t> concat(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// C(r) preserves the unit and the tensor of atoms exactly.
bool strong_on_atoms(const TwoSidedEnrichment& f) {
  const Quantaloid& v = *f.source();
  const Quantaloid& w = *f.target();
  const auto n = static_cast<std::uint32_t>(f.size());
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto& c = f.carrier(x);
    if (f.apply(x, x, v.id(c.minus)) != w.id(c.plus)) return false;
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto &cx = f.carrier(x), &cy = f.carrier(y), &cz = f.carrier(z);
        const auto fs = probes(*v.hom(cx.minus, cy.minus), true);
        const auto gs = probes(*v.hom(cy.minus, cz.minus), true);
        for (const auto& a : fs) {
          for (const auto& b : gs) {
            const Elem lhs = w.tensor(cx.plus, cy.plus, cz.plus, f.apply(x, y, a), f.apply(y, z, b));
            if (lhs != f.apply(x, z, v.tensor(cx.minus, cy.minus, cz.minus, a, b))) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

CongruenceTse monoid_congruence_tse(const MonoidCongruence& r) {
  const WordIndex* src = r.from->words();
  const WordIndex* dst = r.to->words();
  if (src == nullptr || dst == nullptr) fail(ErrorKind::InvalidArgument, "congruences relate language quantales");
  const std::set<std::pair<std::size_t, std::size_t>> rel(r.pairs.begin(), r.pairs.end());
  for (auto [m, n] : rel) {
    if (m >= src->size() || n >= dst->size()) fail(ErrorKind::UnknownElement, "word index out of range");
  }
  if (!rel.count({0, 0})) fail(ErrorKind::NotACongruence, "the pair of empty words is missing");
  for (auto [m, n] : rel) {
    for (auto [m2, n2] : rel) {
      const auto nn = dst->index(concat(dst->letters(n), dst->letters(n2)));
      if (!nn) continue;
      const auto mm = src->index(concat(src->letters(m), src->letters(m2)));
      if (!mm || !rel.count({*mm, *nn})) {
        fail(ErrorKind::NotACongruence, "(" + src->name(m) + "," + dst->name(n) + ") and (" + src->name(m2) + "," +
                                            dst->name(n2) + ") do not multiply into the relation");
      }
    }
  }
  std::vector<Bits> images(src->size(), Bits(dst->size()));
  for (auto [m, n] : rel) images[m].set(n);
  TwoSidedEnrichment f(r.from, r.to, {{"*", 0, 0}});
  f.set_component(0, 0, atom_map(r.from->hom(0, 0), r.to->hom(0, 0), std::move(images)));
  CongruenceTse out;
  out.tse = std::make_shared<const TwoSidedEnrichment>(std::move(f));
  out.right = local_right_adjoints(*out.tse);
  out.strong = strong_on_atoms(*out.tse);
  return out;
}

CategoryCongruence CategoryCongruence::exists(const CatFunctor& f) {
  CategoryCongruence r{f.source, f.target, {}, {}};
  const FiniteCategory& c = *f.source;
  const auto n = static_cast<std::uint32_t>(c.object_count());
  for (std::uint32_t x = 0; x < n; ++x) r.carriers.push_back({c.object_name(x), x, f.on_objects[x]});
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      auto& pairs = r.relations.emplace_back();
      for (auto l : c.hom(x, y)) pairs.emplace_back(l, f.on_morphisms[l]);
    }
  }
  return r;
}

CategoryCongruence CategoryCongruence::inverse(const CatFunctor& f) {
  CategoryCongruence r{f.target, f.source, {}, {}};
  const FiniteCategory& c = *f.source;
  const auto n = static_cast<std::uint32_t>(c.object_count());
  for (std::uint32_t x = 0; x < n; ++x) r.carriers.push_back({c.object_name(x), f.on_objects[x], x});
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      auto& pairs = r.relations.emplace_back();
      for (auto l : c.hom(x, y)) pairs.emplace_back(f.on_morphisms[l], l);
    }
  }
  return r;
}

CongruenceTse category_congruence_tse(const CategoryCongruence& r, QuantaloidPtr from, QuantaloidPtr to) {
  if (!from) from = quantaloids::powerset_of(r.from);
  if (!to) to = quantaloids::powerset_of(r.to);
  if (from->category() != r.from || to->category() != r.to) {
    fail(ErrorKind::BaseMismatch, "quantaloids are not built from the congruence's categories");
  }
  const FiniteCategory& c = *r.from;
  const FiniteCategory& d = *r.to;
  const auto n = static_cast<std::uint32_t>(r.carriers.size());
  if (r.relations.size() != std::size_t{n} * n) fail(ErrorKind::InvalidArgument, "one relation per carrier pair expected");
  for (const auto& k : r.carriers) {
    if (k.minus >= c.object_count() || k.plus >= d.object_count()) {
      fail(ErrorKind::UnknownElement, "carrier '" + k.name + "' has a leg outside the categories");
    }
  }
  auto rel = [&](std::uint32_t x, std::uint32_t y) -> const auto& { return r.relations[x * n + y]; };
  auto has = [&](std::uint32_t x, std::uint32_t y, std::uint32_t f, std::uint32_t g) {
    const auto& p = rel(x, y);
    return std::find(p.begin(), p.end(), std::make_pair(f, g)) != p.end();
  };
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (auto [f, g] : rel(x, y)) {
        const auto& cf = c.morphism(f);
        const auto& dg = d.morphism(g);
        if (cf.source != r.carriers[x].minus || cf.target != r.carriers[y].minus || dg.source != r.carriers[x].plus ||
            dg.target != r.carriers[y].plus) {
          fail(ErrorKind::NotACongruence, "pair (" + cf.name + "," + dg.name + ") is not typed by its carriers");
        }
      }
    }
    if (!has(x, x, c.identity(r.carriers[x].minus), d.identity(r.carriers[x].plus))) {
      fail(ErrorKind::NotACongruence, "identity pair missing at carrier " + r.carriers[x].name);
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        for (auto [f, f2] : rel(x, y)) {
          for (auto [g, g2] : rel(y, z)) {
            if (!has(x, z, c.compose(f, g), d.compose(f2, g2))) {
              fail(ErrorKind::NotACongruence, "composite of (" + c.morphism(f).name + "," + d.morphism(f2).name +
                                                  ") and (" + c.morphism(g).name + "," + d.morphism(g2).name +
                                                  ") is missing");
            }
          }
        }
      }
    }
  }
  auto index_in = [](const std::vector<std::uint32_t>& hom, std::uint32_t m) {
    return static_cast<std::size_t>(std::find(hom.begin(), hom.end(), m) - hom.begin());
  };
  TwoSidedEnrichment t(from, to, r.carriers);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const auto& ch = c.hom(r.carriers[x].minus, r.carriers[y].minus);
      const auto& dh = d.hom(r.carriers[x].plus, r.carriers[y].plus);
      std::vector<Bits> images(ch.size(), Bits(dh.size()));
      for (auto [f, g] : rel(x, y)) images[index_in(ch, f)].set(index_in(dh, g));
      t.set_component(x, y, atom_map(from->hom(r.carriers[x].minus, r.carriers[y].minus),
                                     to->hom(r.carriers[x].plus, r.carriers[y].plus), std::move(images)));
    }
  }
  CongruenceTse out;
  out.tse = std::make_shared<const TwoSidedEnrichment>(std::move(t));
  out.right = local_right_adjoints(*out.tse);
  out.strong = strong_on_atoms(*out.tse);
  return out;
}

// ---------------------------------------------------------------------------

SliceChange slice_change(const VFunctor& f) {
  return slice_change(f, slice_quantaloid(f.source), slice_quantaloid(f.target));
}

SliceChange slice_change(const VFunctor& f, Slice source, Slice target) {
  if (auto r = validate_vfunctor(f); !r.ok()) fail(ErrorKind::InvalidArgument, "not a V-functor: " + r.summary());
  if (!(*source.over == *f.source) || !(*target.over == *f.target)) {
    fail(ErrorKind::BaseMismatch, "slices are not over the functor's source and target");
  }
  const VCategory& a = *f.source;
  std::vector<Carrier> carriers;
  for (std::uint32_t i = 0; i < a.size(); ++i) carriers.push_back({a.name(i), i, f.map[i]});
  TwoSidedEnrichment t(source.quantaloid, target.quantaloid, std::move(carriers));
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t j = 0; j < a.size(); ++j) {
      const auto& members = source.members[i * a.size() + j];
      std::vector<Elem> table;
      for (const auto& m : members) table.push_back(target.restrict(f.map[i], f.map[j], m));
      t.set_component(i, j, MonotoneMap::tabulated(source.quantaloid->hom(i, j),
                                                   target.quantaloid->hom(f.map[i], f.map[j]), std::move(table)));
    }
  }
  SliceChange out{std::move(source), std::move(target), nullptr};
  out.tse = std::make_shared<const TwoSidedEnrichment>(std::move(t));
  return out;
}

}  // namespace qbisim
