#include "qbisim/bisim.hpp"

#include <algorithm>
#include <numeric>

namespace qbisim {

SimRelation::SimRelation(VCatPtr left, VCatPtr right)
    : left_(std::move(left)), right_(std::move(right)), bits_(left_->size() * right_->size()) {}

SimRelation SimRelation::full(VCatPtr left, VCatPtr right) {
  SimRelation r(std::move(left), std::move(right));
  for (std::uint32_t a = 0; a < r.left_->size(); ++a) {
    for (std::uint32_t b = 0; b < r.right_->size(); ++b) {
      if (r.left_->extent(a) == r.right_->extent(b)) r.bits_.set(a * r.right_->size() + b);
    }
  }
  return r;
}

SimRelation SimRelation::diagonal(VCatPtr a) {
  SimRelation r(a, a);
  for (std::uint32_t x = 0; x < a->size(); ++x) r.bits_.set(x * a->size() + x);
  return r;
}

SimRelation SimRelation::from_pairs(VCatPtr left, VCatPtr right,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  SimRelation r(std::move(left), std::move(right));
  for (auto [a, b] : pairs) r.insert(a, b);
  return r;
}

void SimRelation::insert(std::uint32_t a, std::uint32_t b) {
  if (a >= left_->size() || b >= right_->size()) fail(ErrorKind::InvalidArgument, "pair outside the object sets");
  if (left_->extent(a) != right_->extent(b)) {
    fail(ErrorKind::TypeMismatch, "pair (" + left_->name(a) + "," + right_->name(b) + ") has different extents");
  }
  bits_.set(a * right_->size() + b);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SimRelation::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const std::size_t nb = right_->size();
  bits_.for_each([&](std::size_t i) {
    out.emplace_back(static_cast<std::uint32_t>(i / nb), static_cast<std::uint32_t>(i % nb));
  });
  return out;
}

bool SimRelation::total_left() const {
  for (std::uint32_t a = 0; a < left_->size(); ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < right_->size() && !found; ++b) found = contains(a, b);
    if (!found) return false;
  }
  return true;
}

bool SimRelation::total_right() const { return inverse().total_left(); }

SimRelation SimRelation::inverse() const {
  SimRelation r(right_, left_);
  for (auto [a, b] : pairs()) r.bits_.set(b * left_->size() + a);
  return r;
}

SimRelation SimRelation::compose(const SimRelation& other) const {
  if (!(*right_ == *other.left_)) fail(ErrorKind::EndpointMismatch, "relations do not compose");
  SimRelation r(left_, other.right_);
  for (auto [a, b] : pairs()) {
    for (std::uint32_t c = 0; c < other.right_->size(); ++c) {
      if (other.contains(b, c)) r.bits_.set(a * other.right_->size() + c);
    }
  }
  return r;
}

SimRelation SimRelation::unite(const SimRelation& other) const {
  if (!(*left_ == *other.left_) || !(*right_ == *other.right_)) {
    fail(ErrorKind::EndpointMismatch, "relations have different endpoints");
  }
  SimRelation r = *this;
  r.bits_ |= other.bits_;
  return r;
}

bool SimRelation::operator==(const SimRelation& other) const {
  return *left_ == *other.left_ && *right_ == *other.right_ && bits_ == other.bits_;
}

bool SimRelation::is_subset_of(const SimRelation& other) const { return bits_.is_subset_of(other.bits_); }

namespace {

// J(b, a') = join{B(b,b') : (a',b') in R}, rows indexed by a'.
class PartnerJoins {
 public:
  PartnerJoins(const VCategory& a, const VCategory& b) : a_(a), b_(b), table_(a.size() * b.size()) {}

  void refresh(const SimRelation& r, std::uint32_t a2) {
    const std::size_t nb = b_.size();
    for (std::uint32_t b = 0; b < nb; ++b) {
      Elem acc;
      bool started = false;
      for (std::uint32_t b2 = 0; b2 < nb; ++b2) {
        if (!r.contains(a2, b2)) continue;
        if (!started) {
          acc = b_.hom(b, b2);
          started = true;
        } else {
          b_.lattice(b, b2).join_into(acc, b_.hom(b, b2));
        }
      }
      if (!started) acc = b_.base()->hom(b_.extent(b), a_.extent(a2))->bottom();
      table_[a2 * nb + b] = std::move(acc);
    }
  }
  void refresh_all(const SimRelation& r) {
    for (std::uint32_t a2 = 0; a2 < a_.size(); ++a2) refresh(r, a2);
  }
  const Elem& at(std::uint32_t b, std::uint32_t a2) const { return table_[a2 * b_.size() + b]; }

 private:
  const VCategory& a_;
  const VCategory& b_;
  std::vector<Elem> table_;
};

// First a' violating the simulation clause at (a,b), if any.
std::optional<std::uint32_t> failing_successor(const VCategory& a, const PartnerJoins& j, std::uint32_t x,
                                               std::uint32_t y) {
  for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) {
    if (!a.lattice(x, x2).leq(a.hom(x, x2), j.at(y, x2))) return x2;
  }
  return std::nullopt;
}

void require_same_base(const VCategory& a, const VCategory& b) {
  if (a.base() != b.base()) fail(ErrorKind::BaseMismatch, "categories have different bases");
}

SimCheck check_one_way(const SimRelation& r, bool converse) {
  const VCategory& a = *r.left();
  const VCategory& b = *r.right();
  require_same_base(a, b);
  PartnerJoins j(a, b);
  j.refresh_all(r);
  SimCheck out;
  for (auto [x, y] : r.pairs()) {
    if (auto x2 = failing_successor(a, j, x, y)) {
      SimCounterexample c;
      c.a = x;
      c.b = y;
      c.a2 = *x2;
      c.converse = converse;
      c.detail = "(" + a.name(x) + "," + b.name(y) + "): hom to " + a.name(*x2) + " = " +
                 a.lattice(x, *x2).format(a.hom(x, *x2)) + " is not below " + a.lattice(x, *x2).format(j.at(y, *x2));
      out.holds = false;
      out.counterexample = std::move(c);
      return out;
    }
  }
  return out;
}

Refinement refine(const SimRelation& start, bool both_ways) {
  const VCategory& a = *start.left();
  const VCategory& b = *start.right();
  require_same_base(a, b);
  Refinement out;
  SimRelation r = start;
  SimRelation rinv = r.inverse();
  PartnerJoins fwd(a, b);
  PartnerJoins bwd(b, a);
  fwd.refresh_all(r);
  if (both_ways) bwd.refresh_all(rinv);
  while (true) {
    ++out.rounds;
    // Decide every pair against the relation of the previous round.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> removed;
    for (auto [x, y] : r.pairs()) {
      bool ok = !failing_successor(a, fwd, x, y).has_value();
      if (ok && both_ways) ok = !failing_successor(b, bwd, y, x).has_value();
      if (!ok) removed.emplace_back(x, y);
    }
    if (removed.empty()) break;
    std::vector<bool> dirty_a(a.size(), false), dirty_b(b.size(), false);
    for (auto [x, y] : removed) {
      r.erase(x, y);
      rinv.erase(y, x);
      dirty_a[x] = true;
      dirty_b[y] = true;
      out.trace.push_back({x, y, out.rounds});
    }
    for (std::uint32_t x = 0; x < a.size(); ++x) {
      if (dirty_a[x]) fwd.refresh(r, x);
    }
    if (both_ways) {
      for (std::uint32_t y = 0; y < b.size(); ++y) {
        if (dirty_b[y]) bwd.refresh(rinv, y);
      }
    }
  }
  out.relation = std::move(r);
  return out;
}

}  // namespace

SimCheck check_simulation(const SimRelation& r) { return check_one_way(r, false); }

SimCheck check_bisimulation(const SimRelation& r) {
  SimCheck s = check_one_way(r, false);
  if (!s.holds) return s;
  SimCheck t = check_one_way(r.inverse(), true);
  if (!t.holds) {
    // Report the pair in the orientation of R.
    std::swap(t.counterexample->a, t.counterexample->b);
  }
  return t;
}

Refinement largest_simulation(const VCatPtr& a, const VCatPtr& b) {
  require_same_base(*a, *b);
  return refine(SimRelation::full(a, b), false);
}

Refinement largest_bisimulation(const VCatPtr& a, const VCatPtr& b) {
  require_same_base(*a, *b);
  return refine(SimRelation::full(a, b), true);
}

Refinement largest_simulation_within(const SimRelation& start) { return refine(start, false); }
Refinement largest_bisimulation_within(const SimRelation& start) { return refine(start, true); }

bool simulates(const VCatPtr& a, const VCatPtr& b) { return largest_simulation(a, b).relation.total_left(); }

bool bisimilar(const VCatPtr& a, const VCatPtr& b) {
  const SimRelation r = largest_bisimulation(a, b).relation;
  return r.total_left() && r.total_right();
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> functional_bisimulation_failure(const VFunctor& f) {
  const VCategory& a = *f.source;
  const VCategory& b = *f.target;
  require_same_base(a, b);
  const Quantaloid& q = *a.base();
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < b.size(); ++y) {
      const Lattice& l = *q.hom(a.extent(x), b.extent(y));
      Elem acc = l.bottom();
      for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) {
        if (f.map[x2] == y) l.join_into(acc, a.hom(x, x2));
      }
      if (!(acc == b.hom(f.map[x], y))) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

bool is_functional_bisimulation(const VFunctor& f) { return !functional_bisimulation_failure(f).has_value(); }

bool is_od(const VFunctor& f) { return f.surjective() && is_functional_bisimulation(f); }

BisimEquivalence BisimEquivalence::discrete(VCatPtr a) {
  std::vector<std::uint32_t> labels(a->size());
  std::iota(labels.begin(), labels.end(), 0U);
  return from_labels(std::move(a), labels);
}

BisimEquivalence BisimEquivalence::from_labels(VCatPtr a, const std::vector<std::uint32_t>& labels) {
  BisimEquivalence e;
  e.carrier = std::move(a);
  e.block_of.assign(labels.size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> label_block;
  for (std::uint32_t x = 0; x < labels.size(); ++x) {
    auto it = std::find_if(label_block.begin(), label_block.end(), [&](auto& p) { return p.first == labels[x]; });
    if (it == label_block.end()) {
      label_block.emplace_back(labels[x], static_cast<std::uint32_t>(e.blocks.size()));
      e.blocks.push_back({});
      it = label_block.end() - 1;
    }
    e.block_of[x] = it->second;
    e.blocks[it->second].push_back(x);
  }
  return e;
}

SimRelation BisimEquivalence::relation() const {
  SimRelation r(carrier, carrier);
  for (const auto& block : blocks) {
    for (auto x : block) {
      for (auto y : block) r.insert(x, y);
    }
  }
  return r;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

std::string block_name(const VCategory& a, const std::vector<std::uint32_t>& block) {
  std::string s;
  for (auto x : block) s += (s.empty() ? "" : ",") + a.name(x);
  return "[" + s + "]";
}

}  // namespace

BisimEquivalence equivalence_closure(const SimRelation& r) {
  if (!(*r.left() == *r.right())) fail(ErrorKind::EndpointMismatch, "closure needs a relation on one category");
  if (auto c = check_bisimulation(r); !c.holds) fail(ErrorKind::NotABisimulation, c.counterexample->detail);
  UnionFind uf(r.left()->size());
  for (auto [x, y] : r.pairs()) uf.unite(x, y);
  std::vector<std::uint32_t> labels;
  for (std::uint32_t x = 0; x < r.left()->size(); ++x) labels.push_back(uf.find(x));
  BisimEquivalence e = BisimEquivalence::from_labels(r.left(), labels);
  if (!is_bisimulation(e.relation())) {
    fail(ErrorKind::InternalAssertion, "equivalence closure of a bisimulation is not a bisimulation");
  }
  return e;
}

Quotient quotient(const BisimEquivalence& e) {
  const VCategory& a = *e.carrier;
  if (auto c = check_bisimulation(e.relation()); !c.holds) fail(ErrorKind::NotABisimulation, c.counterexample->detail);
  const auto k = static_cast<std::uint32_t>(e.blocks.size());
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (const auto& block : e.blocks) {
    names.push_back(block_name(a, block));
    extents.push_back(a.extent(block.front()));
  }
  VCategory out(a.base(), std::move(names), std::move(extents));
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      const Lattice& l = out.lattice(i, j);
      std::optional<Elem> value;
      // Every representative of block i must give the same join.
      for (auto rep : e.blocks[i]) {
        Elem acc = l.bottom();
        for (auto y : e.blocks[j]) l.join_into(acc, a.hom(rep, y));
        if (!value) {
          value = std::move(acc);
        } else if (!(*value == acc)) {
          fail(ErrorKind::InternalAssertion, "quotient hom depends on the representative of " + out.name(i));
        }
      }
      out.set_hom(i, j, std::move(*value));
    }
  }
  Quotient qt;
  qt.category = std::make_shared<const VCategory>(std::move(out));
  qt.map.source = e.carrier;
  qt.map.target = qt.category;
  qt.map.map = e.block_of;
  return qt;
}

VCospan cospan_witness(const SimRelation& r) {
  const VCategory& a = *r.left();
  const VCategory& b = *r.right();
  require_same_base(a, b);
  if (auto c = check_bisimulation(r); !c.holds) fail(ErrorKind::NotABisimulation, c.counterexample->detail);
  if (!r.total_left() || !r.total_right()) fail(ErrorKind::NotBisimilar, "relation is not total on both sides");
  const auto na = static_cast<std::uint32_t>(a.size());
  const auto nb = static_cast<std::uint32_t>(b.size());
  UnionFind uf(na + nb);
  for (auto [x, y] : r.pairs()) uf.unite(x, na + y);

  // Classes numbered by their least member of A.
  std::vector<std::uint32_t> class_of_root(na + nb, UINT32_MAX);
  std::vector<std::vector<std::uint32_t>> a_members, b_members;
  for (std::uint32_t x = 0; x < na; ++x) {
    const auto root = uf.find(x);
    if (class_of_root[root] == UINT32_MAX) {
      class_of_root[root] = static_cast<std::uint32_t>(a_members.size());
      a_members.push_back({});
      b_members.push_back({});
    }
    a_members[class_of_root[root]].push_back(x);
  }
  for (std::uint32_t y = 0; y < nb; ++y) {
    const auto cls = class_of_root[uf.find(na + y)];
    if (cls == UINT32_MAX) fail(ErrorKind::InternalAssertion, "class without a member of A");
    b_members[cls].push_back(y);
  }
  const auto k = static_cast<std::uint32_t>(a_members.size());
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (std::uint32_t i = 0; i < k; ++i) {
    names.push_back(block_name(a, a_members[i]));
    extents.push_back(a.extent(a_members[i].front()));
  }
  VCategory apex(a.base(), std::move(names), std::move(extents));
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      const Lattice& l = apex.lattice(i, j);
      Elem from_a = l.bottom();
      for (auto y : a_members[j]) l.join_into(from_a, a.hom(a_members[i].front(), y));
      Elem from_b = l.bottom();
      for (auto y : b_members[j]) l.join_into(from_b, b.hom(b_members[i].front(), y));
      if (!(from_a == from_b)) {
        fail(ErrorKind::InternalAssertion, "class homs of A and B differ at (" + apex.name(i) + "," + apex.name(j) + ")");
      }
      apex.set_hom(i, j, std::move(from_a));
    }
  }
  VCospan c;
  c.apex = std::make_shared<const VCategory>(std::move(apex));
  c.left.source = r.left();
  c.left.target = c.apex;
  c.right.source = r.right();
  c.right.target = c.apex;
  for (std::uint32_t x = 0; x < na; ++x) c.left.map.push_back(class_of_root[uf.find(x)]);
  for (std::uint32_t y = 0; y < nb; ++y) c.right.map.push_back(class_of_root[uf.find(na + y)]);
  if (!is_od(c.left) || !is_od(c.right)) fail(ErrorKind::InternalAssertion, "cospan leg is not in Od");
  return c;
}

VSpan span_witness(const SimRelation& r) {
  if (!r.left()->base()->locally_distributive()) {
    fail(ErrorKind::NotLocallyDistributive, "base " + r.left()->base()->label() + " has a non-distributive hom");
  }
  const VCospan c = cospan_witness(r);
  Cone p = pullback(c.left, c.right);
  if (!is_od(p.left) || !is_od(p.right)) fail(ErrorKind::InternalAssertion, "span leg is not in Od");
  return {p.apex, std::move(p.left), std::move(p.right)};
}

std::string format_pairs(const SimRelation& r) {
  std::string s;
  for (auto [x, y] : r.pairs()) s += (s.empty() ? "" : " ") + ("(" + r.left()->name(x) + "," + r.right()->name(y) + ")");
  return "{" + s + "}";
}

}  // namespace qbisim
