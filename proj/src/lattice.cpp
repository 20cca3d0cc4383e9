#include "qbisim/lattice.hpp"

#include <algorithm>
#include <limits>

#include "qbisim/limits.hpp"

namespace qbisim {

namespace {

std::string pair_text(const std::vector<std::string>& names, std::uint32_t i, std::uint32_t j) {
  return "(" + names[i] + ", " + names[j] + ")";
}

// up[i] = { j : i <= j }, reflexive pairs included.
std::vector<Bits> up_sets(const OrderSpec& spec) {
  const std::size_t n = spec.names.size();
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (auto [i, j] : spec.leq) up[i].set(j);
  return up;
}

std::vector<Bits> transpose(const std::vector<Bits>& rel) {
  const std::size_t n = rel.size();
  std::vector<Bits> out(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) rel[i].for_each([&](std::size_t j) { out[j].set(i); });
  return out;
}

// Least element of `candidates` w.r.t. the order whose up-sets are `up`,
// i.e. the z in candidates with candidates <= up[z].
std::optional<std::uint32_t> least_of(const Bits& candidates, const std::vector<Bits>& up,
                                      const std::vector<std::size_t>& up_count) {
  std::size_t best = Bits::npos;
  candidates.for_each([&](std::size_t z) {
    if (best == Bits::npos || up_count[z] > up_count[best]) best = z;
  });
  if (best == Bits::npos || !candidates.is_subset_of(up[best])) return std::nullopt;
  return static_cast<std::uint32_t>(best);
}

}  // namespace

Report validate_lattice(const OrderSpec& spec) {
  Report report;
  const std::size_t n = spec.names.size();
  if (n == 0) {
    report.add("empty", "a complete lattice needs at least a bottom element");
    return report;
  }
  if (n > limits().max_lattice_elements) {
    report.add("size", std::to_string(n) + " elements exceed the explicit lattice cap");
    return report;
  }
  for (auto [i, j] : spec.leq) {
    if (i >= n || j >= n) {
      report.add("range", "pair [" + std::to_string(i) + ", " + std::to_string(j) + "] out of range");
    }
  }
  if (!report.ok()) return report;

  const auto up = up_sets(spec);
  for (std::uint32_t i = 0; i < n; ++i) {
    up[i].for_each([&](std::size_t j) {
      if (j != i && up[j].test(i)) {
        if (i < j) report.add("antisymmetry", pair_text(spec.names, i, static_cast<std::uint32_t>(j)));
      }
    });
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    up[i].for_each([&](std::size_t j) {
      if (!up[j].is_subset_of(up[i])) {
        Bits missing = up[j];
        missing.and_not(up[i]);
        const auto k = static_cast<std::uint32_t>(missing.find_first());
        report.add("transitivity", pair_text(spec.names, i, static_cast<std::uint32_t>(j)) + " and " +
                                       pair_text(spec.names, static_cast<std::uint32_t>(j), k) +
                                       " but not " + pair_text(spec.names, i, k));
      }
    });
  }
  if (!report.ok()) return report;

  const auto down = transpose(up);
  std::vector<std::size_t> up_count(n), down_count(n);
  for (std::size_t i = 0; i < n; ++i) {
    up_count[i] = up[i].count();
    down_count[i] = down[i].count();
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!least_of(up[i] & up[j], up, up_count)) {
        report.add("join", "no least upper bound for " + pair_text(spec.names, i, j));
      }
      if (!least_of(down[i] & down[j], down, down_count)) {
        report.add("meet", "no greatest lower bound for " + pair_text(spec.names, i, j));
      }
    }
  }
  Bits all(n);
  all.fill();
  if (!least_of(all, up, up_count)) report.add("bottom", "no least element");
  if (!least_of(all, down, down_count)) report.add("top", "no greatest element");
  return report;
}

LatticePtr Lattice::from_order(const OrderSpec& spec) {
  const Report report = validate_lattice(spec);
  if (!report.ok()) fail(ErrorKind::ValidationError, "invalid lattice: " + report.summary());

  const std::size_t n = spec.names.size();
  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->kind_ = Kind::explicit_order;
  lat->names_ = spec.names;
  for (std::uint32_t i = 0; i < n; ++i) lat->name_index_.emplace(spec.names[i], i);
  lat->up_ = up_sets(spec);
  const auto down = transpose(lat->up_);
  std::vector<std::size_t> up_count(n), down_count(n);
  for (std::size_t i = 0; i < n; ++i) {
    up_count[i] = lat->up_[i].count();
    down_count[i] = down[i].count();
  }
  lat->join_.assign(n * n, 0);
  lat->meet_.assign(n * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      const auto jn = *least_of(lat->up_[i] & lat->up_[j], lat->up_, up_count);
      const auto mt = *least_of(down[i] & down[j], down, down_count);
      lat->join_[i * n + j] = lat->join_[j * n + i] = jn;
      lat->meet_[i * n + j] = lat->meet_[j * n + i] = mt;
    }
  }
  Bits all(n);
  all.fill();
  lat->bottom_ = *least_of(all, lat->up_, up_count);
  lat->top_ = *least_of(all, down, down_count);
  return lat;
}

LatticePtr Lattice::chain(std::vector<std::string> names) {
  OrderSpec spec;
  spec.names = std::move(names);
  const auto n = static_cast<std::uint32_t>(spec.names.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) spec.leq.emplace_back(i, j);
  }
  return from_order(spec);
}

LatticePtr Lattice::powerset(std::vector<std::string> atoms) {
  if (atoms.size() > limits().max_atoms) {
    fail(ErrorKind::SizeLimit, std::to_string(atoms.size()) + " atoms exceed the powerset cap");
  }
  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->kind_ = Kind::powerset;
  lat->names_ = std::move(atoms);
  for (std::uint32_t i = 0; i < lat->names_.size(); ++i) lat->name_index_.emplace(lat->names_[i], i);
  return lat;
}

std::size_t Lattice::element_count() const {
  if (kind_ == Kind::explicit_order) return names_.size();
  if (names_.size() >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
  return std::size_t{1} << names_.size();
}

bool Lattice::enumerable() const { return element_count() <= limits().max_enumerate; }

std::vector<Elem> Lattice::elements() const {
  if (!enumerable()) {
    fail(ErrorKind::SizeLimit, "lattice with " + std::to_string(names_.size()) +
                                   (is_powerset() ? " atoms" : " elements") + " is too large to enumerate");
  }
  std::vector<Elem> out;
  const std::size_t n = element_count();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element(i));
  return out;
}

Elem Lattice::element(std::uint64_t ordinal) const {
  if (kind_ == Kind::explicit_order) {
    if (ordinal >= names_.size()) fail(ErrorKind::UnknownElement, "index " + std::to_string(ordinal) + " out of range");
    return Elem::at(static_cast<std::uint32_t>(ordinal));
  }
  if (names_.size() < 64 && (ordinal >> names_.size()) != 0) {
    fail(ErrorKind::UnknownElement, "subset mask " + std::to_string(ordinal) + " out of range");
  }
  return Elem::of(Bits::from_u64(names_.size(), ordinal));
}

std::uint64_t Lattice::ordinal(const Elem& e) const {
  if (kind_ == Kind::explicit_order) return e.index();
  if (names_.size() > 63) fail(ErrorKind::SizeLimit, "powerset too large for ordinals");
  return e.bits().to_u64();
}

void Lattice::guard(const Elem& x, const Elem& y) const {
  const bool ok = kind_ == Kind::powerset
                      ? x.bits().size() == names_.size() && y.bits().size() == names_.size()
                      : x.index() < names_.size() && y.index() < names_.size();
  if (!ok) fail(ErrorKind::UnknownElement, "element is not a member of this lattice");
}

bool Lattice::leq(const Elem& x, const Elem& y) const {
  guard(x, y);
  if (kind_ == Kind::powerset) return x.bits().is_subset_of(y.bits());
  return up_[x.index()].test(y.index());
}

Elem Lattice::join(const Elem& x, const Elem& y) const {
  guard(x, y);
  if (kind_ == Kind::powerset) return Elem::of(x.bits() | y.bits());
  return Elem::at(join_[x.index() * names_.size() + y.index()]);
}

Elem Lattice::meet(const Elem& x, const Elem& y) const {
  guard(x, y);
  if (kind_ == Kind::powerset) return Elem::of(x.bits() & y.bits());
  return Elem::at(meet_[x.index() * names_.size() + y.index()]);
}

void Lattice::join_into(Elem& acc, const Elem& x) const {
  guard(acc, x);
  if (kind_ == Kind::powerset) {
    acc.bits() |= x.bits();
  } else {
    acc = Elem::at(join_[acc.index() * names_.size() + x.index()]);
  }
}

Elem Lattice::join(std::span<const Elem> xs) const {
  Elem acc = bottom();
  for (const auto& x : xs) join_into(acc, x);
  return acc;
}

Elem Lattice::meet(std::span<const Elem> xs) const {
  Elem acc = top();
  for (const auto& x : xs) acc = meet(acc, x);
  return acc;
}

Elem Lattice::bottom() const {
  if (kind_ == Kind::powerset) return Elem::of(Bits(names_.size()));
  return Elem::at(bottom_);
}

Elem Lattice::top() const {
  if (kind_ == Kind::powerset) {
    Bits b(names_.size());
    b.fill();
    return Elem::of(std::move(b));
  }
  return Elem::at(top_);
}

bool Lattice::contains(const Elem& e) const {
  if (kind_ == Kind::powerset) return e.index() == 0 && e.bits().size() == names_.size();
  return e.bits().size() == 0 && e.index() < names_.size();
}

void Lattice::check(const Elem& e) const {
  if (!contains(e)) fail(ErrorKind::UnknownElement, "element is not a member of this lattice");
}

Elem Lattice::atom(std::size_t i) const {
  if (kind_ != Kind::powerset || i >= names_.size()) fail(ErrorKind::UnknownElement, "no atom " + std::to_string(i));
  Bits b(names_.size());
  b.set(i);
  return Elem::of(std::move(b));
}

Elem Lattice::subset(const std::vector<std::size_t>& atoms) const {
  if (kind_ != Kind::powerset) fail(ErrorKind::UnknownElement, "not a powerset lattice");
  Bits b(names_.size());
  for (auto a : atoms) {
    if (a >= names_.size()) fail(ErrorKind::UnknownElement, "no atom " + std::to_string(a));
    b.set(a);
  }
  return Elem::of(std::move(b));
}

std::optional<std::uint32_t> Lattice::find(std::string_view name) const {
  if (auto it = name_index_.find(std::string(name)); it != name_index_.end()) return it->second;
  if (name == "ε") {
    if (auto it = name_index_.find(""); it != name_index_.end()) return it->second;
  }
  return std::nullopt;
}

std::string Lattice::format(const Elem& e) const {
  if (kind_ == Kind::explicit_order) {
    return e.index() < names_.size() ? names_[e.index()] : "?" + std::to_string(e.index());
  }
  std::string out = "{";
  bool first = true;
  e.bits().for_each([&](std::size_t i) {
    if (!first) out += ",";
    first = false;
    out += names_[i].empty() ? "ε" : names_[i];
  });
  return out + "}";
}

bool Lattice::is_distributive() const {
  if (kind_ == Kind::powerset) return true;
  const std::size_t n = names_.size();
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = y + 1; z < n; ++z) {
        const auto lhs = meet_[x * n + join_[y * n + z]];
        const auto rhs = join_[meet_[x * n + y] * n + meet_[x * n + z]];
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

OrderSpec Lattice::order_spec() const {
  if (kind_ != Kind::explicit_order) fail(ErrorKind::InvalidArgument, "order_spec of a powerset lattice");
  OrderSpec spec;
  spec.names = names_;
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    up_[i].for_each([&](std::size_t j) {
      if (j != i) spec.leq.emplace_back(i, static_cast<std::uint32_t>(j));
    });
  }
  return spec;
}

LatticePtr Lattice::dual() const {
  OrderSpec spec = order_spec();
  for (auto& [i, j] : spec.leq) std::swap(i, j);
  return from_order(spec);
}

// ---------------------------------------------------------------------------

MonotoneMap::MonotoneMap(LatticePtr source, LatticePtr target, Fn fn)
    : source_(std::move(source)), target_(std::move(target)), fn_(std::move(fn)) {}

MonotoneMap MonotoneMap::tabulated(LatticePtr source, LatticePtr target, std::vector<Elem> table) {
  if (table.size() != source->element_count()) {
    fail(ErrorKind::InvalidArgument, "table has " + std::to_string(table.size()) + " entries, source has " +
                                         std::to_string(source->element_count()) + " elements");
  }
  for (const auto& e : table) target->check(e);
  MonotoneMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.table_ = std::make_shared<const std::vector<Elem>>(std::move(table));
  return m;
}

MonotoneMap MonotoneMap::identity(LatticePtr lattice) {
  return MonotoneMap(lattice, lattice, [](const Elem& x) { return x; });
}

Elem MonotoneMap::operator()(const Elem& x) const {
  if (table_) return (*table_)[source_->ordinal(x)];
  return fn_(x);
}

std::vector<Elem> MonotoneMap::table() const {
  if (table_) return *table_;
  std::vector<Elem> out;
  for (const auto& x : source_->elements()) out.push_back(fn_(x));
  return out;
}

MonotoneMap MonotoneMap::tabulate() const {
  if (table_) return *this;
  return tabulated(source_, target_, table());
}

Report MonotoneMap::validate() const {
  Report report;
  const auto xs = source_->elements();
  std::vector<Elem> image;
  image.reserve(xs.size());
  for (const auto& x : xs) {
    image.push_back((*this)(x));
    if (!target_->contains(image.back())) {
      report.add("typing", "image of " + source_->format(x) + " is not in the target lattice");
      return report;
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i != j && source_->leq(xs[i], xs[j]) && !target_->leq(image[i], image[j])) {
        report.add("monotonicity", source_->format(xs[i]) + " <= " + source_->format(xs[j]) + " but " +
                                       target_->format(image[i]) + " !<= " + target_->format(image[j]));
        return report;
      }
    }
  }
  return report;
}

bool MonotoneMap::preserves_joins() const {
  if ((*this)(source_->bottom()) != target_->bottom()) return false;
  const auto xs = source_->elements();
  std::vector<Elem> image;
  image.reserve(xs.size());
  for (const auto& x : xs) image.push_back((*this)(x));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const Elem lhs = (*this)(source_->join(xs[i], xs[j]));
      if (lhs != target_->join(image[i], image[j])) return false;
    }
  }
  return true;
}

MonotoneMap MonotoneMap::then(const MonotoneMap& g) const {
  if (target_->element_count() != g.source_->element_count() ||
      target_->names() != g.source_->names()) {
    fail(ErrorKind::NotComposable, "target of the first map differs from the source of the second");
  }
  auto f = *this;
  return MonotoneMap(source_, g.target_, [f, g](const Elem& x) { return g(f(x)); });
}

bool MonotoneMap::equals(const MonotoneMap& other) const {
  for (const auto& x : source_->elements()) {
    if ((*this)(x) != other(x)) return false;
  }
  return true;
}

bool MonotoneMap::pointwise_leq(const MonotoneMap& other) const {
  for (const auto& x : source_->elements()) {
    if (!target_->leq((*this)(x), other(x))) return false;
  }
  return true;
}

MonotoneMap right_adjoint_of_monotone(const MonotoneMap& f) {
  const auto& src = *f.source();
  const auto& tgt = *f.target();
  const auto vs = src.elements();
  const auto ws = tgt.elements();
  std::vector<Elem> fv;
  fv.reserve(vs.size());
  for (const auto& v : vs) fv.push_back(f(v));

  std::vector<Elem> table;
  table.reserve(ws.size());
  for (const auto& w : ws) {
    Elem g = src.bottom();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (tgt.leq(fv[i], w)) src.join_into(g, vs[i]);
    }
    table.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (tgt.leq(fv[i], ws[j]) != src.leq(vs[i], table[j])) {
        fail(ErrorKind::NoAdjoint, "Galois property fails at v=" + src.format(vs[i]) + ", w=" + tgt.format(ws[j]) +
                                       " (the map does not preserve all joins)");
      }
    }
  }
  return MonotoneMap::tabulated(f.target(), f.source(), std::move(table));
}

}  // namespace qbisim
