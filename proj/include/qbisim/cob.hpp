#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qbisim/fincat.hpp"
#include "qbisim/lattice.hpp"
#include "qbisim/quantaloid.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim {

/// One element of the span Obj(V) <- carriers -> Obj(W).
struct Carrier {
  std::string name;
  std::uint32_t minus = 0;
  std::uint32_t plus = 0;
};

/// Arrow V -> W of Caten: a span of object sets and a monotone map
/// V(x-, y-) -> W(x+, y+) for every pair of carriers.
class TwoSidedEnrichment {
 public:
  // Components start as constant-bottom maps. Throws UnknownElement when a
  // leg points outside the quantaloids.
  TwoSidedEnrichment(QuantaloidPtr source, QuantaloidPtr target, std::vector<Carrier> carriers);

  const QuantaloidPtr& source() const { return source_; }
  const QuantaloidPtr& target() const { return target_; }
  std::size_t size() const { return carriers_.size(); }
  const Carrier& carrier(std::uint32_t x) const { return carriers_[x]; }
  const std::vector<Carrier>& carriers() const { return carriers_; }
  std::optional<std::uint32_t> find(std::string_view name) const;

  const MonotoneMap& component(std::uint32_t x, std::uint32_t y) const { return components_[x * size() + y]; }
  // Throws TypeMismatch when the map's lattices are not V(x-,y-) and W(x+,y+).
  void set_component(std::uint32_t x, std::uint32_t y, MonotoneMap map);
  Elem apply(std::uint32_t x, std::uint32_t y, const Elem& e) const { return component(x, y)(e); }

  // The left leg is a bijection onto Obj(V): F is a 2-functor candidate.
  bool left_leg_bijective() const;
  // Carrier over a source object, when the left leg is bijective.
  std::uint32_t carrier_over(std::uint32_t v) const;

 private:
  QuantaloidPtr source_;
  QuantaloidPtr target_;
  std::vector<Carrier> carriers_;
  std::vector<MonotoneMap> components_;
};

using TsePtr = std::shared_ptr<const TwoSidedEnrichment>;

/// Typing, monotonicity, lax composition and lax unit, exhaustively where
/// the budget allows. Join-preserving components over powerset homs are
/// checked on atoms.
Report validate_tse(const TwoSidedEnrichment& f);

// Identity arrow on V: carriers are the objects, components identities.
TsePtr identity_tse(const QuantaloidPtr& v);

// Span composite: carriers (x,y) with x+ = y-, components G after F.
// Throws NotComposable unless target(F) = source(G).
TsePtr compose_tse(const TwoSidedEnrichment& f, const TwoSidedEnrichment& g);

/// F_@A: objects (a,x) with a+ = x-, homs F_{x,y}(A(a,b)). Throws BaseMismatch.
VCatPtr apply_cob(const TwoSidedEnrichment& f, const VCatPtr& a);
/// F_@(h): (a,x) |-> (h a, x).
VFunctor apply_cob(const TwoSidedEnrichment& f, const VFunctor& h);

/// Local right adjoints G_{x,y} and the two coherence conditions
///   G(f) (x) G(g) <= G(f (x) g)   and   id_{x-} <= G_{x,x}(id_{x+}).
struct LocalAdjoints {
  std::vector<MonotoneMap> maps;  // row major over carrier pairs
  bool unit_coherent = true;
  bool composition_coherent = true;
  bool bijective = true;
  Report report;

  const MonotoneMap& at(std::size_t n, std::uint32_t x, std::uint32_t y) const { return maps[x * n + y]; }
  bool coherent() const { return unit_coherent && composition_coherent; }
  // Left adjoint in Caten.
  bool left_adjoint() const { return bijective && coherent(); }
};

// Throws NoAdjoint when a component does not preserve joins.
LocalAdjoints local_right_adjoints(const TwoSidedEnrichment& f);

/// F^@B: objects (b,x) with b+ = x+, extent x-, homs G_{x,y}(B(b,b')).
/// Throws BaseMismatch, or NoAdjoint when the adjoints are missing or not
/// coherent.
VCatPtr right_adjoint_cob(const TwoSidedEnrichment& f, const VCatPtr& b);
VCatPtr right_adjoint_cob(const TwoSidedEnrichment& f, const LocalAdjoints& g, const VCatPtr& b);
VFunctor right_adjoint_cob(const TwoSidedEnrichment& f, const LocalAdjoints& g, const VFunctor& h);

/// Transposition along F_@ -| F^@ for a 2-functor F (bijective left leg).
/// h : F_@A -> B gives A -> F^@B, landing in `gb` = right_adjoint_cob(F, B);
/// k : A -> F^@B gives F_@A -> B, starting at `fa` = apply_cob(F, A).
/// Throws InvalidArgument when the left leg is not bijective.
VFunctor transpose_to_right(const TwoSidedEnrichment& f, const VCatPtr& a, const VFunctor& h, const VCatPtr& gb);
VFunctor transpose_to_left(const TwoSidedEnrichment& f, const VCatPtr& b, const VFunctor& k, const VCatPtr& fa);

/// Span morphism between parallel enrichments.
struct CatenTwoCell {
  TsePtr from;
  TsePtr to;
  std::vector<std::uint32_t> map;
};

// Throws NotParallel.
Report check_caten_2cell(const CatenTwoCell& c);
// c <= d: id_{a+} <= B_{ca,da}(id_{a-}) for all carriers a.
bool caten_2cell_leq(const CatenTwoCell& c, const CatenTwoCell& d);

/// A V-category as an arrow 1 -> V, and back.
TsePtr vcat_as_tse(const VCatPtr& a);
// Throws BaseMismatch unless the source is a one-object one-element base.
VCatPtr tse_as_vcat(const TwoSidedEnrichment& f);

/// Relation between words of two truncated language quantales.
struct MonoidCongruence {
  QuantaloidPtr from;
  QuantaloidPtr to;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // word indices

  // (w, h(w)) for the letter substitution h; words whose image is too long
  // are left out.
  static MonoidCongruence graph(QuantaloidPtr from, QuantaloidPtr to, const std::vector<std::string>& image);
  MonoidCongruence inverse() const;
  bool contains(std::size_t m, std::size_t n) const;
};

struct CongruenceTse {
  TsePtr tse;
  LocalAdjoints right;  // R(r)
  bool strong = false;  // C(r) preserves tensor and unit on the nose
};

/// C(r): L |-> {n : (m,n) in r, m in L}. r must contain (e,e) and, whenever
/// |n n'| <= k, also |m m'| <= k and (m m', n n'). Throws NotACongruence.
CongruenceTse monoid_congruence_tse(const MonoidCongruence& r);

/// r_0 with legs into Obj(C), Obj(D), and r_{x,y} as morphism pairs.
struct CategoryCongruence {
  FinCatPtr from;
  FinCatPtr to;
  std::vector<Carrier> carriers;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> relations;  // row major

  static CategoryCongruence exists(const CatFunctor& f);   // (l, f l)
  static CategoryCongruence inverse(const CatFunctor& f);  // (f l, l)
};

/// B(r) between B(C) and B(D). Throws NotACongruence.
CongruenceTse category_congruence_tse(const CategoryCongruence& r, QuantaloidPtr from = nullptr,
                                      QuantaloidPtr to = nullptr);

/// V(f) : V(A) -> V(B) for a V-functor f, with carriers Obj(A).
struct SliceChange {
  Slice source;
  Slice target;
  TsePtr tse;
};

SliceChange slice_change(const VFunctor& f);
SliceChange slice_change(const VFunctor& f, Slice source, Slice target);

}  // namespace qbisim
