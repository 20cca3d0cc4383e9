#include "qbisim/quantaloid.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "qbisim/limits.hpp"

namespace qbisim {

Elem DenseTensor::apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
                        const Elem& g) const {
  const auto& t = table(u, v, w);
  const std::size_t cols = q.hom(v, w)->width();
  const std::size_t idx = static_cast<std::size_t>(f.index()) * cols + g.index();
  if (idx >= t.size()) fail(ErrorKind::UnknownElement, "tensor operand outside its hom");
  return Elem::at(t[idx]);
}

Elem AtomTensor::apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
                       const Elem& g) const {
  const auto& t = tables_[(u * n_ + v) * n_ + w];
  const std::size_t cols = q.hom(v, w)->width();
  Bits out(q.hom(u, w)->width());
  f.bits().for_each([&](std::size_t i) { g.bits().for_each([&](std::size_t j) { out |= t[i * cols + j]; }); });
  return Elem::of(std::move(out));
}

WordIndex::WordIndex(std::vector<std::string> alphabet, std::size_t k) : alphabet_(std::move(alphabet)), k_(k) {
  for (const auto& a : alphabet_) {
    if (a.empty()) fail(ErrorKind::InvalidArgument, "empty letter in alphabet");
    if (a.size() != 1) single_char_ = false;
  }
  const std::size_t cap = limits().max_atoms;
  const std::size_t s = alphabet_.size();
  offset_.push_back(0);
  std::size_t p = 1;
  for (std::size_t len = 0; len <= k_; ++len) {
    pow_.push_back(p);
    if (offset_.back() + p > cap) {
      fail(ErrorKind::SizeLimit, "words of length <= " + std::to_string(k_) + " over " + std::to_string(s) +
                                     " letters exceed " + std::to_string(cap) + " atoms");
    }
    offset_.push_back(offset_.back() + p);
    p = (p > cap) ? p : p * s;
  }
}

std::size_t WordIndex::length_of(std::size_t index) const {
  std::size_t len = 0;
  while (len < k_ && index >= offset_[len + 1]) ++len;
  return len;
}

std::optional<std::size_t> WordIndex::index(const std::vector<std::uint32_t>& letters) const {
  if (letters.size() > k_) return std::nullopt;
  std::size_t rank = 0;
  for (auto l : letters) rank = rank * alphabet_.size() + l;
  return offset_[letters.size()] + rank;
}

std::vector<std::uint32_t> WordIndex::letters(std::size_t index) const {
  const std::size_t len = length_of(index);
  std::size_t rank = index - offset_[len];
  std::vector<std::uint32_t> out(len);
  for (std::size_t i = len; i-- > 0;) {
    out[i] = static_cast<std::uint32_t>(rank % alphabet_.size());
    rank /= alphabet_.size();
  }
  return out;
}

std::string WordIndex::name(std::size_t index) const {
  std::string out;
  for (auto l : letters(index)) {
    if (!single_char_ && !out.empty()) out += '.';
    out += alphabet_[l];
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> WordIndex::parse(std::string_view word) const {
  std::vector<std::uint32_t> out;
  if (word.empty() || word == "ε") return out;
  auto letter = [&](std::string_view piece) -> std::optional<std::uint32_t> {
    for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
      if (alphabet_[i] == piece) return i;
    }
    return std::nullopt;
  };
  if (single_char_) {
    for (char c : word) {
      auto l = letter(std::string_view(&c, 1));
      if (!l) return std::nullopt;
      out.push_back(*l);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= word.size()) {
    const std::size_t dot = word.find('.', start);
    const auto piece = word.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    auto l = letter(piece);
    if (!l) return std::nullopt;
    out.push_back(*l);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

Elem LanguageTensor::apply(const Quantaloid&, std::uint32_t, std::uint32_t, std::uint32_t, const Elem& f,
                           const Elem& g) const {
  const WordIndex& w = *words_;
  const std::size_t k = w.max_length();
  Bits out(w.size());
  if (g.bits().none()) return Elem::of(std::move(out));
  // Every u in f shifts each length slab of g to the block of words with prefix u.
  std::vector<bool> slab(k + 1, false);
  for (std::size_t len = 0; len <= k; ++len) {
    const std::size_t first = g.bits().find_next(w.offset(len));
    slab[len] = first != Bits::npos && first < w.offset(len + 1);
  }
  f.bits().for_each([&](std::size_t i) {
    const std::size_t len = w.length_of(i);
    const std::size_t rank = i - w.offset(len);
    for (std::size_t l2 = 0; len + l2 <= k; ++l2) {
      if (!slab[l2]) continue;
      const std::size_t cnt = w.count(l2);
      out.or_range(w.offset(len + l2) + rank * cnt, g.bits(), w.offset(l2), cnt);
    }
  });
  return Elem::of(std::move(out));
}

QuantaloidPtr Quantaloid::make(Data data) {
  const std::size_t n = data.objects.size();
  if (data.homs.size() != n * n) fail(ErrorKind::InvalidArgument, "expected one hom lattice per object pair");
  if (data.ids.size() != n) fail(ErrorKind::InvalidArgument, "expected one identity per object");
  if (!data.tensor) fail(ErrorKind::InvalidArgument, "missing tensor rule");
  for (std::size_t u = 0; u < n; ++u) {
    if (!data.homs[u * n + u]->contains(data.ids[u])) {
      fail(ErrorKind::UnknownElement, "identity of " + data.objects[u] + " is not in its hom");
    }
  }
  return QuantaloidPtr(new Quantaloid(std::move(data)));
}

std::optional<std::uint32_t> Quantaloid::find_object(std::string_view name) const {
  for (std::uint32_t i = 0; i < d_.objects.size(); ++i) {
    if (d_.objects[i] == name) return i;
  }
  return std::nullopt;
}

Arrow Quantaloid::tensor(const Arrow& f, const Arrow& g) const {
  if (f.target != g.source) {
    fail(ErrorKind::NotComposable, "target " + object_name(f.target) + " differs from source " + object_name(g.source));
  }
  hom(f.source, f.target)->check(f.value);
  hom(g.source, g.target)->check(g.value);
  return {f.source, g.target, tensor(f.source, f.target, g.target, f.value, g.value)};
}

bool Quantaloid::locally_distributive() const {
  for (const auto& h : d_.homs) {
    if (!h->is_distributive()) return false;
  }
  return true;
}

namespace {

// Elements that exercise the axioms: everything, or just bottom and the atoms
// when the rule is atomwise on a powerset hom.
std::vector<Elem> probe_elements(const Quantaloid& q, const Lattice& hom) {
  if (q.rule().atomwise() && hom.is_powerset()) {
    std::vector<Elem> out{hom.bottom()};
    for (std::size_t i = 0; i < hom.width(); ++i) out.push_back(hom.atom(i));
    return out;
  }
  return hom.elements();
}

class ViolationSink {
 public:
  explicit ViolationSink(Report& r) : r_(r) {}
  void add(const std::string& kind, const std::string& detail) {
    if (++counts_[kind] <= 16) r_.add(kind, detail);
  }

 private:
  Report& r_;
  std::map<std::string, std::size_t> counts_;
};

}  // namespace

Report validate_quantaloid(const Quantaloid& q) {
  Report report;
  const auto n = static_cast<std::uint32_t>(q.object_count());
  auto H = [&](std::uint32_t u, std::uint32_t v) -> const Lattice& { return *q.hom(u, v); };
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!H(u, u).contains(q.id(u))) report.add("identity", "identity of " + q.object_name(u) + " outside its hom");
  }
  if (!report.ok()) return report;

  std::vector<std::vector<Elem>> probes(n * n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) probes[u * n + v] = probe_elements(q, H(u, v));
  }
  auto P = [&](std::uint32_t u, std::uint32_t v) -> const std::vector<Elem>& { return probes[u * n + v]; };
  ViolationSink sink(report);
  auto where = [&](std::initializer_list<std::uint32_t> objs) {
    std::string s;
    for (auto o : objs) s += (s.empty() ? "" : ",") + q.object_name(o);
    return "(" + s + ")";
  };

  // Units and typing.
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      for (const auto& f : P(u, v)) {
        const Elem l = q.tensor(u, u, v, q.id(u), f);
        const Elem r = q.tensor(u, v, v, f, q.id(v));
        if (!H(u, v).contains(l) || !H(u, v).contains(r)) {
          sink.add("typing", "unit composite leaves hom" + where({u, v}));
        } else if (!(l == f) || !(r == f)) {
          sink.add("unit", "id (x) f = f or f (x) id = f fails for f = " + H(u, v).format(f) + " in " + where({u, v}));
        }
      }
    }
  }

  const double budget = static_cast<double>(limits().max_validation_work);
  std::mt19937_64 rng(0x5eed);

  // Join preservation in each variable: empty joins and binary joins.
  if (!q.rule().atomwise()) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        for (std::uint32_t w = 0; w < n; ++w) {
          const auto& F = P(u, v);
          const auto& G = P(v, w);
          const Lattice& out = H(u, w);
          for (const auto& f : F) {
            if (!(q.tensor(u, v, w, f, H(v, w).bottom()) == out.bottom())) {
              sink.add("join", "f (x) bottom != bottom for f = " + H(u, v).format(f) + " in " + where({u, v, w}));
            }
          }
          for (const auto& g : G) {
            if (!(q.tensor(u, v, w, H(u, v).bottom(), g) == out.bottom())) {
              sink.add("join", "bottom (x) g != bottom for g = " + H(v, w).format(g) + " in " + where({u, v, w}));
            }
          }
          for (const auto& f : F) {
            for (std::size_t i = 0; i < G.size(); ++i) {
              for (std::size_t j = i + 1; j < G.size(); ++j) {
                const Elem lhs = q.tensor(u, v, w, f, H(v, w).join(G[i], G[j]));
                const Elem rhs = out.join(q.tensor(u, v, w, f, G[i]), q.tensor(u, v, w, f, G[j]));
                if (!(lhs == rhs)) {
                  sink.add("join", "f (x) (g v g') != f (x) g v f (x) g' for f = " + H(u, v).format(f) + " in " +
                                       where({u, v, w}));
                }
              }
            }
          }
          for (const auto& g : G) {
            for (std::size_t i = 0; i < F.size(); ++i) {
              for (std::size_t j = i + 1; j < F.size(); ++j) {
                const Elem lhs = q.tensor(u, v, w, H(u, v).join(F[i], F[j]), g);
                const Elem rhs = out.join(q.tensor(u, v, w, F[i], g), q.tensor(u, v, w, F[j], g));
                if (!(lhs == rhs)) {
                  sink.add("join", "(f v f') (x) g != f (x) g v f' (x) g for g = " + H(v, w).format(g) + " in " +
                                       where({u, v, w}));
                }
              }
            }
          }
        }
      }
    }
  } else {
    report.note("tensor is defined on atoms and extended by unions; join preservation holds by construction");
  }

  // Associativity.
  double triples = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t w = 0; w < n; ++w) {
        for (std::uint32_t x = 0; x < n; ++x) {
          triples += static_cast<double>(P(u, v).size()) * P(v, w).size() * P(w, x).size();
        }
      }
    }
  }
  const bool sampled = triples > budget;
  if (sampled) {
    report.note("associativity checked on " + std::to_string(limits().max_validation_work) + " sampled triples out of " +
                std::to_string(static_cast<std::uint64_t>(triples)));
  }
  auto check_triple = [&](std::uint32_t u, std::uint32_t v, std::uint32_t w, std::uint32_t x, const Elem& f,
                          const Elem& g, const Elem& h) {
    const Elem fg = q.tensor(u, v, w, f, g);
    const Elem gh = q.tensor(v, w, x, g, h);
    if (!H(u, w).contains(fg) || !H(v, x).contains(gh)) {
      sink.add("typing", "tensor leaves its hom in " + where({u, v, w, x}));
      return;
    }
    if (!(q.tensor(u, w, x, fg, h) == q.tensor(u, v, x, f, gh))) {
      sink.add("associativity", "(f (x) g) (x) h != f (x) (g (x) h) for f = " + H(u, v).format(f) + ", g = " +
                                    H(v, w).format(g) + ", h = " + H(w, x).format(h) + " in " + where({u, v, w, x}));
    }
  };
  if (!sampled) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        for (std::uint32_t w = 0; w < n; ++w) {
          for (std::uint32_t x = 0; x < n; ++x) {
            for (const auto& f : P(u, v)) {
              for (const auto& g : P(v, w)) {
                for (const auto& h : P(w, x)) check_triple(u, v, w, x, f, g, h);
              }
            }
          }
        }
      }
    }
  } else {
    std::uniform_int_distribution<std::uint32_t> obj(0, n - 1);
    for (std::size_t s = 0; s < limits().max_validation_work; ++s) {
      const auto u = obj(rng), v = obj(rng), w = obj(rng), x = obj(rng);
      auto pick = [&](const std::vector<Elem>& xs) -> const Elem& {
        return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
      };
      check_triple(u, v, w, x, pick(P(u, v)), pick(P(v, w)), pick(P(w, x)));
    }
  }

  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!H(u, v).is_distributive()) report.note("hom" + where({u, v}) + " is not distributive");
    }
  }
  report.note(q.locally_distributive() ? "locally distributive" : "not locally distributive");
  return report;
}

Arrow residual(const Quantaloid& q, Side side, const Arrow& f, const Arrow& h) {
  std::uint32_t u = 0, v = 0, w = 0;
  if (side == Side::right) {
    if (f.source != h.source) fail(ErrorKind::NotComposable, "right residual needs f and h with a common source");
    u = f.source;
    v = f.target;
    w = h.target;
  } else {
    if (f.target != h.target) fail(ErrorKind::NotComposable, "left residual needs f and h with a common target");
    u = h.source;
    v = f.source;
    w = f.target;
  }
  q.hom(f.source, f.target)->check(f.value);
  q.hom(h.source, h.target)->check(h.value);
  const std::uint32_t gs = side == Side::right ? v : u;
  const std::uint32_t gt = side == Side::right ? w : v;
  const Lattice& G = *q.hom(gs, gt);
  const Lattice& out = *q.hom(u, w);
  auto fits = [&](const Elem& g) {
    const Elem c = side == Side::right ? q.tensor(u, v, w, f.value, g) : q.tensor(u, v, w, g, f.value);
    return out.leq(c, h.value);
  };
  Elem acc = G.bottom();
  if (q.rule().atomwise() && G.is_powerset()) {
    for (std::size_t i = 0; i < G.width(); ++i) {
      const Elem a = G.atom(i);
      if (fits(a)) G.join_into(acc, a);
    }
  } else {
    for (const auto& g : G.elements()) {
      if (fits(g)) G.join_into(acc, g);
    }
  }
  return {gs, gt, acc};
}

namespace quantaloids {

namespace {

std::string format_number(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

QuantaloidPtr boolean() {
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::boolean;
  d.label = "Q2";
  d.objects = {"*"};
  d.homs = {Lattice::chain({"0", "1"})};
  d.ids = {Elem::at(1)};
  auto t = std::make_shared<DenseTensor>(1);
  t->set(0, 0, 0, {0, 0, 0, 1});
  d.tensor = t;
  return Quantaloid::make(std::move(d));
}

QuantaloidPtr language(std::vector<std::string> alphabet, std::size_t k) {
  auto words = std::make_shared<const WordIndex>(alphabet, k);
  std::vector<std::string> atoms;
  atoms.reserve(words->size());
  for (std::size_t i = 0; i < words->size(); ++i) atoms.push_back(words->name(i));
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::language;
  std::string sigma;
  for (const auto& a : alphabet) sigma += (sigma.empty() ? "" : ",") + a;
  d.label = "QL({" + sigma + "}," + std::to_string(k) + ")";
  d.objects = {"*"};
  d.homs = {Lattice::powerset(std::move(atoms))};
  d.ids = {d.homs[0]->atom(0)};
  d.tensor = std::make_shared<LanguageTensor>(words);
  d.words = words;
  return Quantaloid::make(std::move(d));
}

QuantaloidPtr metric(std::vector<double> grid) {
  if (grid.empty() || grid.front() != 0.0) fail(ErrorKind::BadGrid, "grid must start at 0");
  if (!std::isinf(grid.back())) fail(ErrorKind::BadGrid, "grid must end at infinity");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) fail(ErrorKind::BadGrid, "grid must be strictly ascending");
  }
  constexpr double kTol = 1e-9;
  const std::size_t n = grid.size();
  OrderSpec spec;
  for (double x : grid) spec.names.push_back(format_number(x));
  // Reversed numeric order: larger distances are lower.
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i != j && grid[i] >= grid[j]) spec.leq.emplace_back(i, j);
    }
  }
  auto t = std::make_shared<DenseTensor>(1);
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sum = grid[i] + grid[j];
      std::size_t r = n - 1;
      if (!std::isinf(sum)) {
        for (std::size_t c = 0; c < n; ++c) {
          if (grid[c] >= sum - kTol) {
            r = c;
            break;
          }
        }
      }
      table[i * n + j] = static_cast<std::uint32_t>(r);
    }
  }
  t->set(0, 0, 0, std::move(table));
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::metric;
  std::string label;
  for (double x : grid) label += (label.empty() ? "" : ",") + format_number(x);
  d.label = "M{" + label + "}";
  d.objects = {"*"};
  d.homs = {Lattice::from_order(spec)};
  d.ids = {Elem::at(0)};
  d.tensor = t;
  d.grid = std::move(grid);
  return Quantaloid::make(std::move(d));
}

QuantaloidPtr rel(std::vector<std::vector<std::string>> sets, std::vector<std::string> names) {
  if (sets.empty()) fail(ErrorKind::InvalidArgument, "rel needs at least one set");
  const auto n = static_cast<std::uint32_t>(sets.size());
  if (names.empty()) {
    for (std::uint32_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i));
  }
  if (names.size() != n) fail(ErrorKind::InvalidArgument, "one name per set expected");
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::rel;
  d.label = "Rel";
  d.objects = names;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (sets[u].size() * sets[v].size() > limits().max_atoms) {
        fail(ErrorKind::SizeLimit, "Rel(" + names[u] + "," + names[v] + ") has too many pairs");
      }
      std::vector<std::string> atoms;
      for (const auto& x : sets[u]) {
        for (const auto& y : sets[v]) atoms.push_back("(" + x + "," + y + ")");
      }
      d.homs.push_back(Lattice::powerset(std::move(atoms)));
    }
  }
  auto t = std::make_shared<AtomTensor>(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t w = 0; w < n; ++w) {
        const std::size_t X = sets[u].size(), Y = sets[v].size(), Z = sets[w].size();
        if (X * Y * Y * Z > limits().max_functor_search) {
          fail(ErrorKind::SizeLimit, "composition table for Rel is too large");
        }
        std::vector<Bits> products(X * Y * Y * Z, Bits(X * Z));
        for (std::size_t x = 0; x < X; ++x) {
          for (std::size_t y = 0; y < Y; ++y) {
            for (std::size_t z = 0; z < Z; ++z) products[(x * Y + y) * (Y * Z) + (y * Z + z)].set(x * Z + z);
          }
        }
        t->set(u, v, w, std::move(products));
      }
    }
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    Bits diag(sets[u].size() * sets[u].size());
    for (std::size_t x = 0; x < sets[u].size(); ++x) diag.set(x * sets[u].size() + x);
    d.ids.push_back(Elem::of(std::move(diag)));
  }
  d.tensor = t;
  return Quantaloid::make(std::move(d));
}

QuantaloidPtr powerset_of(FinCatPtr category) {
  const FiniteCategory& c = *category;
  if (auto r = validate_fincat(c); !r.ok()) fail(ErrorKind::ValidationError, "base category: " + r.summary());
  const auto n = static_cast<std::uint32_t>(c.object_count());
  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::powerset;
  d.label = "B(C)";
  d.objects = c.object_names();
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      std::vector<std::string> atoms;
      for (auto m : c.hom(x, y)) atoms.push_back(c.morphism(m).name);
      d.homs.push_back(Lattice::powerset(std::move(atoms)));
    }
  }
  auto position = [&](std::uint32_t x, std::uint32_t y, std::uint32_t m) {
    const auto& h = c.hom(x, y);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] == m) return i;
    }
    fail(ErrorKind::InternalAssertion, "morphism missing from its hom");
  };
  auto t = std::make_shared<AtomTensor>(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto& f = c.hom(x, y);
        const auto& g = c.hom(y, z);
        std::vector<Bits> products(f.size() * g.size(), Bits(c.hom(x, z).size()));
        for (std::size_t i = 0; i < f.size(); ++i) {
          for (std::size_t j = 0; j < g.size(); ++j) {
            products[i * g.size() + j].set(position(x, z, c.compose(f[i], g[j])));
          }
        }
        t->set(x, y, z, std::move(products));
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) d.ids.push_back(d.homs[x * n + x]->atom(position(x, x, c.identity(x))));
  d.tensor = t;
  d.category = std::move(category);
  return Quantaloid::make(std::move(d));
}

QuantaloidPtr unit_base() {
  static const QuantaloidPtr one = [] {
    Quantaloid::Data d;
    d.kind = Quantaloid::Kind::unit;
    d.label = "1";
    d.objects = {"*"};
    d.homs = {Lattice::chain({"top"})};
    d.ids = {Elem::at(0)};
    auto t = std::make_shared<DenseTensor>(1);
    t->set(0, 0, 0, {0});
    d.tensor = t;
    return Quantaloid::make(std::move(d));
  }();
  return one;
}

Elem words(const Quantaloid& q, const std::vector<std::string>& list) {
  const WordIndex* w = q.words();
  if (w == nullptr) fail(ErrorKind::InvalidArgument, q.label() + " is not a language quantale");
  Bits out(w->size());
  for (const auto& word : list) {
    auto letters = w->parse(word);
    if (!letters) fail(ErrorKind::UnknownElement, "word '" + word + "' is not over the alphabet");
    auto idx = w->index(*letters);
    if (!idx) fail(ErrorKind::UnknownElement, "word '" + word + "' is longer than the truncation");
    out.set(*idx);
  }
  return Elem::of(std::move(out));
}

std::optional<std::uint32_t> grid_index(const Quantaloid& q, double value) {
  const auto& g = q.grid();
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if ((std::isinf(value) && std::isinf(g[i])) || std::abs(g[i] - value) <= 1e-9) return i;
  }
  return std::nullopt;
}

}  // namespace quantaloids

std::string format_arrow(const Quantaloid& q, const Arrow& a) {
  return q.hom(a.source, a.target)->format(a.value) + " : " + q.object_name(a.source) + " -> " +
         q.object_name(a.target);
}

}  // namespace qbisim
