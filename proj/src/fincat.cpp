#include "qbisim/fincat.hpp"

#include <array>

namespace qbisim {

FiniteCategory::FiniteCategory(const Spec& spec)
    : objects_(spec.objects), morphisms_(spec.morphisms), identities_(spec.identities) {
  const std::size_t m = morphisms_.size();
  table_.assign(m * m, -1);
  for (const auto& [f, g, h] : spec.compose) {
    if (f < m && g < m && h < m) table_[f * m + g] = static_cast<std::int32_t>(h);
  }
  for (const auto& [key, pb] : spec.pullbacks) pullbacks_[key] = pb;
  index();
}

void FiniteCategory::index() {
  const std::size_t n = objects_.size();
  homs_.assign(n * n, {});
  for (std::uint32_t f = 0; f < morphisms_.size(); ++f) {
    const auto& mor = morphisms_[f];
    if (mor.source < n && mor.target < n) homs_[mor.source * n + mor.target].push_back(f);
  }
}

FiniteCategory FiniteCategory::poset(std::vector<std::string> names,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& leq) {
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (auto [i, j] : leq) {
    if (i >= n || j >= n) fail(ErrorKind::InvalidArgument, "poset pair out of range");
    le[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (le[i][k] && le[k][j]) le[i][j] = true;
      }
    }
  }

  Spec spec;
  spec.objects = names;
  std::vector<std::vector<std::int64_t>> arrow(n, std::vector<std::int64_t>(n, -1));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!le[i][j]) continue;
      arrow[i][j] = static_cast<std::int64_t>(spec.morphisms.size());
      spec.morphisms.push_back({i == j ? "id_" + names[i] : names[i] + "<=" + names[j], i, j});
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) spec.identities.push_back(static_cast<std::uint32_t>(arrow[i][i]));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      for (std::uint32_t k = 0; k < n; ++k) {
        if (arrow[i][j] >= 0 && arrow[j][k] >= 0) {
          spec.compose.push_back({static_cast<std::uint32_t>(arrow[i][j]), static_cast<std::uint32_t>(arrow[j][k]),
                                  static_cast<std::uint32_t>(arrow[i][k])});
        }
      }
    }
  }
  // Pullback of x -> z <- y is the meet of x and y, when it exists.
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      std::optional<std::uint32_t> meet;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (!le[c][x] || !le[c][y]) continue;
        bool greatest = true;
        for (std::uint32_t d = 0; d < n; ++d) {
          if (le[d][x] && le[d][y] && !le[d][c]) greatest = false;
        }
        if (greatest) meet = c;
      }
      if (!meet) continue;
      for (std::uint32_t z = 0; z < n; ++z) {
        if (!le[x][z] || !le[y][z]) continue;
        spec.pullbacks.push_back({{static_cast<std::uint32_t>(arrow[x][z]), static_cast<std::uint32_t>(arrow[y][z])},
                                  {*meet, static_cast<std::uint32_t>(arrow[*meet][x]),
                                   static_cast<std::uint32_t>(arrow[*meet][y])}});
      }
    }
  }
  return FiniteCategory(spec);
}

FiniteCategory FiniteCategory::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> leq;
  for (std::uint32_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) leq.emplace_back(i - 1, i);
  }
  return poset(std::move(names), leq);
}

std::optional<std::uint32_t> FiniteCategory::find_object(std::string_view name) const {
  for (std::uint32_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteCategory::find_morphism(std::string_view name) const {
  for (std::uint32_t i = 0; i < morphisms_.size(); ++i) {
    if (morphisms_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteCategory::then(std::uint32_t f, std::uint32_t g) const {
  const std::int32_t h = table_[f * morphisms_.size() + g];
  if (h < 0) return std::nullopt;
  return static_cast<std::uint32_t>(h);
}

std::uint32_t FiniteCategory::compose(std::uint32_t f, std::uint32_t g) const {
  auto h = then(f, g);
  if (!h) fail(ErrorKind::NotComposable, morphisms_[f].name + " ; " + morphisms_[g].name);
  return *h;
}

const std::vector<std::uint32_t>& FiniteCategory::hom(std::uint32_t x, std::uint32_t y) const {
  return homs_[x * objects_.size() + y];
}

std::optional<FiniteCategory::Pullback> FiniteCategory::pullback(std::uint32_t f, std::uint32_t g) const {
  if (auto it = pullbacks_.find({f, g}); it != pullbacks_.end()) return it->second;
  return std::nullopt;
}

FiniteCategory::Spec FiniteCategory::spec() const {
  Spec s;
  s.objects = objects_;
  s.morphisms = morphisms_;
  s.identities = identities_;
  const std::size_t m = morphisms_.size();
  for (std::uint32_t f = 0; f < m; ++f) {
    for (std::uint32_t g = 0; g < m; ++g) {
      if (table_[f * m + g] >= 0) s.compose.push_back({f, g, static_cast<std::uint32_t>(table_[f * m + g])});
    }
  }
  for (const auto& [key, pb] : pullbacks_) s.pullbacks.emplace_back(key, pb);
  return s;
}

bool is_pullback(const FiniteCategory& cat, std::uint32_t f, std::uint32_t g,
                 const FiniteCategory::Pullback& cone) {
  const auto x = cat.morphism(f).source;
  const auto y = cat.morphism(g).source;
  const auto z = cat.morphism(f).target;
  if (cat.morphism(g).target != z) return false;
  const auto& l = cat.morphism(cone.left);
  const auto& r = cat.morphism(cone.right);
  if (l.source != cone.apex || r.source != cone.apex || l.target != x || r.target != y) return false;
  if (cat.then(cone.left, f) != cat.then(cone.right, g)) return false;
  for (std::uint32_t q = 0; q < cat.object_count(); ++q) {
    for (auto q1 : cat.hom(q, x)) {
      for (auto q2 : cat.hom(q, y)) {
        if (cat.then(q1, f) != cat.then(q2, g)) continue;
        int mediators = 0;
        for (auto u : cat.hom(q, cone.apex)) {
          if (cat.then(u, cone.left) == q1 && cat.then(u, cone.right) == q2) ++mediators;
        }
        if (mediators != 1) return false;
      }
    }
  }
  return true;
}

Report validate_fincat(const FiniteCategory& cat) {
  Report report;
  const auto n = static_cast<std::uint32_t>(cat.object_count());
  const auto m = static_cast<std::uint32_t>(cat.morphism_count());
  for (std::uint32_t f = 0; f < m; ++f) {
    const auto& mor = cat.morphism(f);
    if (mor.source >= n || mor.target >= n) report.add("typing", "morphism " + mor.name + " has unknown endpoints");
  }
  if (cat.spec().identities.size() != n) {
    report.add("identity", "expected one identity per object");
    return report;
  }
  for (std::uint32_t o = 0; o < n; ++o) {
    const auto id = cat.identity(o);
    if (id >= m || cat.morphism(id).source != o || cat.morphism(id).target != o) {
      report.add("identity", "identity of " + cat.object_name(o) + " is not an endomorphism of it");
    }
  }
  if (!report.ok()) return report;

  for (std::uint32_t f = 0; f < m; ++f) {
    for (std::uint32_t g = 0; g < m; ++g) {
      const bool composable = cat.morphism(f).target == cat.morphism(g).source;
      const auto h = cat.then(f, g);
      if (composable && !h) {
        report.add("composition", cat.morphism(f).name + " ; " + cat.morphism(g).name + " undefined");
      } else if (!composable && h) {
        report.add("composition", cat.morphism(f).name + " ; " + cat.morphism(g).name + " defined but not composable");
      } else if (h && (cat.morphism(*h).source != cat.morphism(f).source ||
                       cat.morphism(*h).target != cat.morphism(g).target)) {
        report.add("composition", cat.morphism(f).name + " ; " + cat.morphism(g).name + " has the wrong type");
      }
    }
  }
  if (!report.ok()) return report;

  for (std::uint32_t f = 0; f < m; ++f) {
    const auto& mor = cat.morphism(f);
    if (cat.then(cat.identity(mor.source), f) != f || cat.then(f, cat.identity(mor.target)) != f) {
      report.add("unit", "identity law fails for " + mor.name);
    }
  }
  for (std::uint32_t f = 0; f < m; ++f) {
    for (std::uint32_t g = 0; g < m; ++g) {
      const auto fg = cat.then(f, g);
      if (!fg) continue;
      for (std::uint32_t h = 0; h < m; ++h) {
        const auto gh = cat.then(g, h);
        if (!gh) continue;
        if (cat.then(*fg, h) != cat.then(f, *gh)) {
          report.add("associativity", "(" + cat.morphism(f).name + " ; " + cat.morphism(g).name + ") ; " +
                                          cat.morphism(h).name);
        }
      }
    }
  }

  if (cat.has_pullbacks()) {
    for (std::uint32_t f = 0; f < m; ++f) {
      for (std::uint32_t g = 0; g < m; ++g) {
        if (cat.morphism(f).target != cat.morphism(g).target) continue;
        const auto pb = cat.pullback(f, g);
        const std::string what = "cospan (" + cat.morphism(f).name + ", " + cat.morphism(g).name + ")";
        if (!pb) {
          report.add("pullback", "no chosen pullback for " + what);
        } else if (pb->apex >= n || pb->left >= m || pb->right >= m || !is_pullback(cat, f, g, *pb)) {
          report.add("pullback", "chosen pullback of " + what + " is not universal");
        }
      }
    }
  }
  return report;
}

CatFunctor CatFunctor::from_objects(FinCatPtr source, FinCatPtr target, std::vector<std::uint32_t> on_objects) {
  CatFunctor f;
  f.on_objects = std::move(on_objects);
  if (f.on_objects.size() != source->object_count()) fail(ErrorKind::InvalidArgument, "object map has the wrong size");
  for (std::uint32_t m = 0; m < source->morphism_count(); ++m) {
    const auto& mor = source->morphism(m);
    const auto& candidates = target->hom(f.on_objects[mor.source], f.on_objects[mor.target]);
    if (candidates.size() != 1) {
      fail(ErrorKind::InvalidArgument, "arrow image of " + mor.name + " is not determined by the object map");
    }
    f.on_morphisms.push_back(candidates.front());
  }
  f.source = std::move(source);
  f.target = std::move(target);
  return f;
}

Report validate_cat_functor(const CatFunctor& f) {
  Report report;
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  if (f.on_objects.size() != src.object_count() || f.on_morphisms.size() != src.morphism_count()) {
    report.add("typing", "functor maps have the wrong size");
    return report;
  }
  for (std::uint32_t m = 0; m < src.morphism_count(); ++m) {
    const auto& mor = src.morphism(m);
    const auto img = f.on_morphisms[m];
    if (img >= tgt.morphism_count() || tgt.morphism(img).source != f.on_objects[mor.source] ||
        tgt.morphism(img).target != f.on_objects[mor.target]) {
      report.add("typing", "image of " + mor.name + " has the wrong endpoints");
    }
  }
  if (!report.ok()) return report;
  for (std::uint32_t o = 0; o < src.object_count(); ++o) {
    if (f.on_morphisms[src.identity(o)] != tgt.identity(f.on_objects[o])) {
      report.add("identity", "identity of " + src.object_name(o) + " not preserved");
    }
  }
  for (std::uint32_t a = 0; a < src.morphism_count(); ++a) {
    for (std::uint32_t b = 0; b < src.morphism_count(); ++b) {
      const auto ab = src.then(a, b);
      if (ab && tgt.then(f.on_morphisms[a], f.on_morphisms[b]) != f.on_morphisms[*ab]) {
        report.add("composition", "composite " + src.morphism(a).name + " ; " + src.morphism(b).name);
      }
    }
  }
  return report;
}

Report check_preserves_pullbacks(const CatFunctor& f) {
  Report report;
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  for (const auto& [key, pb] : src.pullbacks()) {
    const FiniteCategory::Pullback image{f.on_objects[pb.apex], f.on_morphisms[pb.left], f.on_morphisms[pb.right]};
    if (!is_pullback(tgt, f.on_morphisms[key.first], f.on_morphisms[key.second], image)) {
      report.add("exactness", "image of the chosen pullback of (" + src.morphism(key.first).name + ", " +
                                  src.morphism(key.second).name + ") is not a pullback");
    }
  }
  return report;
}

}  // namespace qbisim
