#include "qbisim/vcat.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "qbisim/limits.hpp"

namespace qbisim {

VCategory::VCategory(QuantaloidPtr base, std::vector<std::string> names, std::vector<std::uint32_t> extents)
    : base_(std::move(base)), names_(std::move(names)), extents_(std::move(extents)) {
  if (names_.size() != extents_.size()) fail(ErrorKind::InvalidArgument, "one extent per object expected");
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    if (extents_[a] >= base_->object_count()) {
      fail(ErrorKind::TypeMismatch, "object " + names_[a] + " has an extent outside the base");
    }
  }
  homs_.reserve(size() * size());
  for (std::uint32_t a = 0; a < size(); ++a) {
    for (std::uint32_t b = 0; b < size(); ++b) homs_.push_back(lattice(a, b).bottom());
  }
}

std::optional<std::uint32_t> VCategory::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

void VCategory::set_hom(std::uint32_t a, std::uint32_t b, Elem value) {
  if (!lattice(a, b).contains(value)) {
    fail(ErrorKind::UnknownElement, "value for (" + names_[a] + "," + names_[b] + ") is outside its hom lattice");
  }
  homs_[a * size() + b] = std::move(value);
}

bool VCategory::operator==(const VCategory& other) const {
  return base_ == other.base_ && names_ == other.names_ && extents_ == other.extents_ && homs_ == other.homs_;
}

Report validate_vcategory(const VCategory& a) {
  Report report;
  const Quantaloid& q = *a.base();
  const auto n = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!a.lattice(x, y).contains(a.hom(x, y))) report.add("typing", "A(" + a.name(x) + "," + a.name(y) + ")");
    }
  }
  if (!report.ok()) return report;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (!a.lattice(x, x).leq(q.id(a.extent(x)), a.hom(x, x))) {
      report.add("unit", "id is not below A(" + a.name(x) + "," + a.name(x) + ")");
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const Elem c = q.tensor(a.extent(x), a.extent(y), a.extent(z), a.hom(x, y), a.hom(y, z));
        if (!a.lattice(x, z).leq(c, a.hom(x, z))) {
          report.add("composition", "A(" + a.name(x) + "," + a.name(y) + ") (x) A(" + a.name(y) + "," + a.name(z) +
                                        ") is not below A(" + a.name(x) + "," + a.name(z) + ")");
        }
      }
    }
  }
  return report;
}

VFunctor VFunctor::identity(VCatPtr a) {
  VFunctor f;
  f.map.resize(a->size());
  for (std::uint32_t i = 0; i < a->size(); ++i) f.map[i] = i;
  f.source = a;
  f.target = std::move(a);
  return f;
}

VFunctor VFunctor::then(const VFunctor& g) const {
  if (!(*target == *g.source)) fail(ErrorKind::NotComposable, "functors do not compose");
  VFunctor h;
  h.source = source;
  h.target = g.target;
  for (auto x : map) h.map.push_back(g.map[x]);
  return h;
}

bool VFunctor::surjective() const {
  std::vector<bool> hit(target->size(), false);
  for (auto x : map) hit[x] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool VFunctor::operator==(const VFunctor& other) const {
  return *source == *other.source && *target == *other.target && map == other.map;
}

Report validate_vfunctor(const VFunctor& f) {
  const VCategory& a = *f.source;
  const VCategory& b = *f.target;
  if (a.base() != b.base()) fail(ErrorKind::BaseMismatch, "source and target have different bases");
  Report report;
  if (f.map.size() != a.size()) {
    report.add("size", "object map has the wrong size");
    return report;
  }
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    if (f.map[x] >= b.size()) {
      report.add("range", "image of " + a.name(x) + " is not an object");
    } else if (b.extent(f.map[x]) != a.extent(x)) {
      report.add("extent", a.name(x) + " and its image " + b.name(f.map[x]) + " have different extents");
    }
  }
  if (!report.ok()) return report;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (!a.lattice(x, y).leq(a.hom(x, y), b.hom(f.map[x], f.map[y]))) {
        report.add("hom", "A(" + a.name(x) + "," + a.name(y) + ") is not below B(" + b.name(f.map[x]) + "," +
                              b.name(f.map[y]) + ")");
      }
    }
  }
  return report;
}

bool exists_vnatural(const VFunctor& f, const VFunctor& g) {
  if (!(*f.source == *g.source) || !(*f.target == *g.target)) fail(ErrorKind::NotParallel, "functors are not parallel");
  const VCategory& b = *f.target;
  const Quantaloid& q = *b.base();
  for (std::uint32_t x = 0; x < f.source->size(); ++x) {
    const auto e = f.source->extent(x);
    if (!q.hom(e, e)->leq(q.id(e), b.hom(f.map[x], g.map[x]))) return false;
  }
  return true;
}

namespace {

void require_same_base(const VCategory& a, const VCategory& b) {
  if (a.base() != b.base()) fail(ErrorKind::BaseMismatch, "categories have different bases");
}

Cone pair_subcategory(const VCatPtr& a, const VCatPtr& b,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (auto [x, y] : pairs) {
    names.push_back("(" + a->name(x) + "," + b->name(y) + ")");
    extents.push_back(a->extent(x));
  }
  VCategory p(a->base(), std::move(names), std::move(extents));
  for (std::uint32_t i = 0; i < pairs.size(); ++i) {
    for (std::uint32_t j = 0; j < pairs.size(); ++j) {
      const auto [x, y] = pairs[i];
      const auto [x2, y2] = pairs[j];
      p.set_hom(i, j, a->lattice(x, x2).meet(a->hom(x, x2), b->hom(y, y2)));
    }
  }
  Cone c;
  c.apex = std::make_shared<const VCategory>(std::move(p));
  c.left.source = c.apex;
  c.left.target = a;
  c.right.source = c.apex;
  c.right.target = b;
  for (auto [x, y] : pairs) {
    c.left.map.push_back(x);
    c.right.map.push_back(y);
  }
  return c;
}

}  // namespace

Cone product(const VCatPtr& a, const VCatPtr& b) {
  require_same_base(*a, *b);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t x = 0; x < a->size(); ++x) {
    for (std::uint32_t y = 0; y < b->size(); ++y) {
      if (a->extent(x) == b->extent(y)) pairs.emplace_back(x, y);
    }
  }
  return pair_subcategory(a, b, pairs);
}

Cone pullback(const VFunctor& f, const VFunctor& g) {
  require_same_base(*f.source, *g.source);
  if (!(*f.target == *g.target)) fail(ErrorKind::NotParallel, "pullback needs a common codomain");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t x = 0; x < f.source->size(); ++x) {
    for (std::uint32_t y = 0; y < g.source->size(); ++y) {
      if (f.map[x] == g.map[y]) pairs.emplace_back(x, y);
    }
  }
  return pair_subcategory(f.source, g.source, pairs);
}

VCatPtr terminal(const QuantaloidPtr& base) {
  const auto n = static_cast<std::uint32_t>(base->object_count());
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (std::uint32_t v = 0; v < n; ++v) {
    names.push_back(n == 1 ? "*" : "*" + base->object_name(v));
    extents.push_back(v);
  }
  VCategory one(base, std::move(names), std::move(extents));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) one.set_hom(u, v, base->hom(u, v)->top());
  }
  return std::make_shared<const VCategory>(std::move(one));
}

VFunctor to_terminal(const VCatPtr& a, const VCatPtr& one) {
  VFunctor f;
  f.source = a;
  f.target = one;
  for (std::uint32_t x = 0; x < a->size(); ++x) f.map.push_back(a->extent(x));
  return f;
}

Coproduct coproduct(const std::vector<VCatPtr>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "coproduct of an empty family needs a base");
  for (const auto& p : parts) require_same_base(*parts.front(), *p);
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  std::vector<std::uint32_t> offset;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset.push_back(static_cast<std::uint32_t>(names.size()));
    for (std::uint32_t x = 0; x < parts[i]->size(); ++x) {
      names.push_back(parts.size() == 1 ? parts[i]->name(x) : std::to_string(i) + ":" + parts[i]->name(x));
      extents.push_back(parts[i]->extent(x));
    }
  }
  VCategory sum(parts.front()->base(), std::move(names), std::move(extents));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::uint32_t x = 0; x < parts[i]->size(); ++x) {
      for (std::uint32_t y = 0; y < parts[i]->size(); ++y) sum.set_hom(offset[i] + x, offset[i] + y, parts[i]->hom(x, y));
    }
  }
  Coproduct c;
  c.sum = std::make_shared<const VCategory>(std::move(sum));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    VFunctor inj;
    inj.source = parts[i];
    inj.target = c.sum;
    for (std::uint32_t x = 0; x < parts[i]->size(); ++x) inj.map.push_back(offset[i] + x);
    c.injections.push_back(std::move(inj));
  }
  return c;
}

VCatPtr free_vcategory(const QuantaloidPtr& base, const Graph& g) {
  const Quantaloid& q = *base;
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (const auto& v : g.vertices) {
    names.push_back(v.name);
    extents.push_back(v.extent);
  }
  VCategory out(base, std::move(names), std::move(extents));
  const auto n = static_cast<std::uint32_t>(out.size());

  // E(a,b): join of the labels of all edges a -> b.
  std::vector<Elem> edge(n * n);
  std::vector<std::vector<std::uint32_t>> preds(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) edge[a * n + b] = out.lattice(a, b).bottom();
  }
  for (const auto& e : g.edges) {
    if (e.source >= n || e.target >= n) fail(ErrorKind::TypeMismatch, "edge endpoint is not a vertex");
    const Lattice& l = out.lattice(e.source, e.target);
    if (!l.contains(e.label)) {
      fail(ErrorKind::TypeMismatch, "edge " + out.name(e.source) + " -> " + out.name(e.target) +
                                        " has a label outside hom(" + q.object_name(out.extent(e.source)) + "," +
                                        q.object_name(out.extent(e.target)) + ")");
    }
    l.join_into(edge[e.source * n + e.target], e.label);
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (!(edge[a * n + b] == out.lattice(a, b).bottom())) preds[b].push_back(a);
    }
  }

  // Worklist over pairs (b,c) whose value grew; `delta` holds what is new
  // (exact difference for powerset homs, the whole value otherwise).
  std::vector<Elem> hom(n * n);
  std::vector<Elem> delta(n * n);
  std::vector<bool> queued(n * n, false);
  std::deque<std::uint32_t> work;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      hom[a * n + b] = out.lattice(a, b).bottom();
      delta[a * n + b] = out.lattice(a, b).bottom();
    }
    hom[a * n + a] = q.id(out.extent(a));
    delta[a * n + a] = hom[a * n + a];
    queued[a * n + a] = true;
    work.push_back(a * n + a);
  }
  while (!work.empty()) {
    const std::uint32_t bc = work.front();
    work.pop_front();
    queued[bc] = false;
    const std::uint32_t b = bc / n, c = bc % n;
    const Elem d = std::move(delta[bc]);
    delta[bc] = out.lattice(b, c).bottom();
    for (auto a : preds[b]) {
      const Lattice& l = out.lattice(a, c);
      const Elem add = q.tensor(out.extent(a), out.extent(b), out.extent(c), edge[a * n + b], d);
      Elem& cur = hom[a * n + c];
      if (l.leq(add, cur)) continue;
      if (l.is_powerset()) {
        Bits fresh = add.bits();
        fresh.and_not(cur.bits());
        delta[a * n + c].bits() |= fresh;
        cur.bits() |= fresh;
      } else {
        cur = l.join(cur, add);
        delta[a * n + c] = cur;
      }
      if (!queued[a * n + c]) {
        queued[a * n + c] = true;
        work.push_back(a * n + c);
      }
    }
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) out.set_hom(a, b, std::move(hom[a * n + b]));
  }
  return std::make_shared<const VCategory>(std::move(out));
}

std::vector<VFunctor> enumerate_vfunctors(const VCatPtr& a, const VCatPtr& b) {
  require_same_base(*a, *b);
  const auto n = static_cast<std::uint32_t>(a->size());
  std::vector<std::vector<std::uint32_t>> candidates(n);
  double space = 1;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < b->size(); ++y) {
      if (b->extent(y) == a->extent(x) && a->lattice(x, x).leq(a->hom(x, x), b->hom(y, y))) candidates[x].push_back(y);
    }
    space *= static_cast<double>(candidates[x].size());
  }
  if (space > static_cast<double>(limits().max_functor_search)) {
    fail(ErrorKind::SizeLimit, "functor enumeration space " + std::to_string(static_cast<std::uint64_t>(space)) +
                                   " exceeds the cap");
  }
  std::vector<VFunctor> out;
  std::vector<std::uint32_t> map(n);
  auto extend = [&](auto&& self, std::uint32_t x) -> void {
    if (x == n) {
      VFunctor f;
      f.source = a;
      f.target = b;
      f.map = map;
      out.push_back(std::move(f));
      return;
    }
    for (auto y : candidates[x]) {
      map[x] = y;
      bool ok = true;
      for (std::uint32_t p = 0; p < x && ok; ++p) {
        ok = a->lattice(p, x).leq(a->hom(p, x), b->hom(map[p], y)) &&
             a->lattice(x, p).leq(a->hom(x, p), b->hom(y, map[p]));
      }
      if (ok) self(self, x + 1);
    }
  };
  extend(extend, 0);
  return out;
}

void LaxRelationalPresentation::normalize() {
  for (auto& r : relations) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
}

bool LaxRelationalPresentation::operator==(const LaxRelationalPresentation& other) const {
  auto x = *this, y = other;
  x.normalize();
  y.normalize();
  return x.fibers == y.fibers && x.relations == y.relations &&
         x.category->spec().objects == y.category->spec().objects &&
         x.category->morphism_count() == y.category->morphism_count();
}

Report validate_laxrel(const LaxRelationalPresentation& p) {
  Report report;
  const FiniteCategory& c = *p.category;
  if (p.fibers.size() != c.object_count() || p.relations.size() != c.morphism_count()) {
    report.add("shape", "one fiber per object and one relation per morphism expected");
    return report;
  }
  std::vector<std::vector<std::vector<bool>>> rel(c.morphism_count());
  for (std::uint32_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mor = c.morphism(m);
    const auto xs = p.fibers[mor.source].size(), ys = p.fibers[mor.target].size();
    rel[m].assign(xs, std::vector<bool>(ys, false));
    for (auto [i, j] : p.relations[m]) {
      if (i >= xs || j >= ys) {
        report.add("range", "relation of " + mor.name + " mentions a non-member");
        continue;
      }
      rel[m][i][j] = true;
    }
  }
  if (!report.ok()) return report;
  for (std::uint32_t o = 0; o < c.object_count(); ++o) {
    for (std::uint32_t i = 0; i < p.fibers[o].size(); ++i) {
      if (!rel[c.identity(o)][i][i]) report.add("unit", "relation of id_" + c.object_name(o) + " misses the diagonal");
    }
  }
  for (std::uint32_t f = 0; f < c.morphism_count(); ++f) {
    for (std::uint32_t g = 0; g < c.morphism_count(); ++g) {
      const auto fg = c.then(f, g);
      if (!fg) continue;
      const auto& mf = c.morphism(f);
      const auto& mg = c.morphism(g);
      for (std::uint32_t i = 0; i < p.fibers[mf.source].size(); ++i) {
        for (std::uint32_t j = 0; j < p.fibers[mf.target].size(); ++j) {
          if (!rel[f][i][j]) continue;
          for (std::uint32_t k = 0; k < p.fibers[mg.target].size(); ++k) {
            if (rel[g][j][k] && !rel[*fg][i][k]) {
              report.add("composition", "composite of " + mf.name + " and " + mg.name + " is not contained in " +
                                            c.morphism(*fg).name);
            }
          }
        }
      }
    }
  }
  return report;
}

VCatPtr laxrel_to_vcat(const LaxRelationalPresentation& p, QuantaloidPtr base) {
  if (auto r = validate_laxrel(p); !r.ok()) fail(ErrorKind::ValidationError, r.summary());
  if (!base) base = quantaloids::powerset_of(p.category);
  const FiniteCategory& c = *p.category;
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> where;  // (object, fiber index)
  for (std::uint32_t o = 0; o < c.object_count(); ++o) {
    for (std::uint32_t i = 0; i < p.fibers[o].size(); ++i) {
      names.push_back(p.fibers[o][i]);
      extents.push_back(o);
      where.emplace_back(o, i);
    }
  }
  std::vector<std::uint32_t> first(c.object_count(), 0);
  for (std::uint32_t o = 1; o < c.object_count(); ++o) first[o] = first[o - 1] + static_cast<std::uint32_t>(p.fibers[o - 1].size());
  VCategory a(base, std::move(names), std::move(extents));
  for (std::uint32_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mor = c.morphism(m);
    const auto& h = c.hom(mor.source, mor.target);
    const auto pos = static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
    for (auto [i, j] : p.relations[m]) {
      const std::uint32_t x = first[mor.source] + i, y = first[mor.target] + j;
      Elem v = a.hom(x, y);
      v.bits().set(pos);
      a.set_hom(x, y, std::move(v));
    }
  }
  return std::make_shared<const VCategory>(std::move(a));
}

LaxRelationalPresentation vcat_to_laxrel(const VCategory& a) {
  const Quantaloid& q = *a.base();
  if (q.kind() != Quantaloid::Kind::powerset || !q.category()) {
    fail(ErrorKind::BaseMismatch, "base " + q.label() + " is not a powerset quantaloid of a category");
  }
  const FiniteCategory& c = *q.category();
  LaxRelationalPresentation p;
  p.category = q.category();
  p.fibers.assign(c.object_count(), {});
  p.relations.assign(c.morphism_count(), {});
  std::vector<std::uint32_t> index(a.size());
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    index[x] = static_cast<std::uint32_t>(p.fibers[a.extent(x)].size());
    p.fibers[a.extent(x)].push_back(a.name(x));
  }
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      const auto& h = c.hom(a.extent(x), a.extent(y));
      a.hom(x, y).bits().for_each([&](std::size_t i) { p.relations[h[i]].emplace_back(index[x], index[y]); });
    }
  }
  p.normalize();
  return p;
}

Elem Slice::lift(std::uint32_t a, std::uint32_t b, const Elem& local) const {
  const auto& m = members[a * over->size() + b];
  if (local.index() >= m.size()) fail(ErrorKind::UnknownElement, "slice element out of range");
  return m[local.index()];
}

Elem Slice::restrict(std::uint32_t a, std::uint32_t b, const Elem& value) const {
  const auto& m = members[a * over->size() + b];
  for (std::uint32_t i = 0; i < m.size(); ++i) {
    if (m[i] == value) return Elem::at(i);
  }
  fail(ErrorKind::UnknownElement, "value is not below A(" + over->name(a) + "," + over->name(b) + ")");
}

namespace {

std::vector<Elem> below(const Lattice& l, const Elem& x) {
  std::vector<Elem> out;
  if (l.is_powerset()) {
    const auto pos = x.bits().positions();
    if (pos.size() > 20 || (std::size_t{1} << pos.size()) > limits().max_lattice_elements) {
      fail(ErrorKind::SizeLimit, "slice hom below " + l.format(x) + " is too large");
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << pos.size()); ++mask) {
      Bits b(l.width());
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if ((mask >> i) & 1U) b.set(pos[i]);
      }
      out.push_back(Elem::of(std::move(b)));
    }
    return out;
  }
  for (const auto& e : l.elements()) {
    if (l.leq(e, x)) out.push_back(e);
  }
  return out;
}

}  // namespace

Slice slice_quantaloid(const VCatPtr& a) {
  const Quantaloid& q = *a->base();
  const auto n = static_cast<std::uint32_t>(a->size());
  Slice s;
  s.over = a;
  s.members.resize(n * n);
  std::vector<std::unordered_map<Elem, std::uint32_t, ElemHash>> index(n * n);
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::explicit_tables;
  d.label = q.label() + "(" + std::to_string(n) + "-object slice)";
  d.objects = a->names();
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const Lattice& l = a->lattice(x, y);
      auto& m = s.members[x * n + y];
      m = below(l, a->hom(x, y));
      OrderSpec spec;
      for (std::uint32_t i = 0; i < m.size(); ++i) {
        spec.names.push_back(l.format(m[i]));
        index[x * n + y].emplace(m[i], i);
      }
      for (std::uint32_t i = 0; i < m.size(); ++i) {
        for (std::uint32_t j = 0; j < m.size(); ++j) {
          if (i != j && l.leq(m[i], m[j])) spec.leq.emplace_back(i, j);
        }
      }
      d.homs.push_back(Lattice::from_order(spec));
    }
  }
  auto t = std::make_shared<DenseTensor>(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto& f = s.members[x * n + y];
        const auto& g = s.members[y * n + z];
        std::vector<std::uint32_t> table(f.size() * g.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          for (std::size_t j = 0; j < g.size(); ++j) {
            const Elem c = q.tensor(a->extent(x), a->extent(y), a->extent(z), f[i], g[j]);
            auto it = index[x * n + z].find(c);
            if (it == index[x * n + z].end()) {
              fail(ErrorKind::ValidationError, "slice base is not a V-category: composite escapes A(" + a->name(x) +
                                                   "," + a->name(z) + ")");
            }
            table[i * g.size() + j] = it->second;
          }
        }
        t->set(x, y, z, std::move(table));
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    auto it = index[x * n + x].find(q.id(a->extent(x)));
    if (it == index[x * n + x].end()) fail(ErrorKind::ValidationError, "slice base is not a V-category: unit fails");
    d.ids.push_back(Elem::at(it->second));
  }
  d.tensor = t;
  s.quantaloid = Quantaloid::make(std::move(d));
  return s;
}

VCatPtr slice_encode(const Slice& s, const VFunctor& f) {
  if (!(*f.target == *s.over)) fail(ErrorKind::BaseMismatch, "functor does not land in the sliced category");
  const VCategory& x = *f.source;
  VCategory out(s.quantaloid, x.names(), f.map);
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    for (std::uint32_t j = 0; j < x.size(); ++j) out.set_hom(i, j, s.restrict(f.map[i], f.map[j], x.hom(i, j)));
  }
  return std::make_shared<const VCategory>(std::move(out));
}

VFunctor slice_decode(const Slice& s, const VCatPtr& x) {
  if (x->base() != s.quantaloid) fail(ErrorKind::BaseMismatch, "category is not over this slice");
  std::vector<std::uint32_t> extents;
  for (std::uint32_t i = 0; i < x->size(); ++i) extents.push_back(s.over->extent(x->extent(i)));
  VCategory src(s.over->base(), x->names(), std::move(extents));
  for (std::uint32_t i = 0; i < x->size(); ++i) {
    for (std::uint32_t j = 0; j < x->size(); ++j) src.set_hom(i, j, s.lift(x->extent(i), x->extent(j), x->hom(i, j)));
  }
  VFunctor f;
  f.source = std::make_shared<const VCategory>(std::move(src));
  f.target = s.over;
  f.map = x->extents();
  return f;
}

std::string format_vcategory(const VCategory& a) {
  std::ostringstream os;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (a.hom(x, y) == a.lattice(x, y).bottom()) continue;
      os << a.name(x) << " -> " << a.name(y) << " : " << a.lattice(x, y).format(a.hom(x, y)) << "\n";
    }
  }
  return os.str();
}

}  // namespace qbisim
