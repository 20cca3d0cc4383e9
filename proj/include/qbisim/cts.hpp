#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qbisim/cob.hpp"
#include "qbisim/fincat.hpp"
#include "qbisim/quantaloid.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim {

/// X <-left- apex -right-> Y in a finite category.
struct Span {
  std::uint32_t apex = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;

  bool operator==(const Span&) const = default;
  auto operator<=>(const Span&) const = default;
};

std::uint32_t span_source(const FiniteCategory& t, const Span& s);
std::uint32_t span_target(const FiniteCategory& t, const Span& s);
// Throws UnknownElement when the legs do not share the apex.
void check_span(const FiniteCategory& t, const Span& s);

/// All spans X <- a -> Y.
std::vector<Span> enumerate_spans(const FiniteCategory& t, std::uint32_t x, std::uint32_t y);

/// Composite through the chosen pullback of s.right against t.left.
/// Throws NotComposable when the middle objects differ or no pullback is chosen.
Span span_compose(const FiniteCategory& t, const Span& s, const Span& u);

/// Some morphism apex(s) -> apex(u) commutes with both legs. Throws AmbientMismatch.
bool span_leq(const FiniteCategory& t, const Span& s, const Span& u);

std::string format_span(const FiniteCategory& t, const Span& s);

/// S(T): homs are the cribles of spans, ordered by inclusion, with
/// (M down) (x) (N down) = (M o N) down.
class CribleQuantaloid {
 public:
  // Throws ValidationError unless T is valid with chosen pullbacks, and
  // SizeLimit when a hom has too many cribles.
  static std::shared_ptr<const CribleQuantaloid> build(FinCatPtr t);

  const QuantaloidPtr& quantaloid() const { return q_; }
  const FinCatPtr& category() const { return t_; }

  const std::vector<Span>& spans(std::uint32_t x, std::uint32_t y) const { return homs_[x * n_ + y].spans; }
  // Membership of a crible over spans(x, y).
  const Bits& members(std::uint32_t x, std::uint32_t y, const Elem& crible) const;
  // Crible generated by the given spans of (x, y).
  Elem generated(std::uint32_t x, std::uint32_t y, const std::vector<Span>& spans) const;
  Elem principal(std::uint32_t x, std::uint32_t y, const Span& s) const { return generated(x, y, {s}); }
  // Crible with exactly these members; throws UnknownElement if not down-closed.
  Elem from_members(std::uint32_t x, std::uint32_t y, const Bits& members) const;

 private:
  struct Hom {
    std::vector<Span> spans;
    std::vector<Bits> below;    // below[i]: spans <= spans[i]
    std::vector<Bits> cribles;  // by element index
    std::map<Bits, std::uint32_t> lookup;
  };
  std::size_t index_of(const Hom& h, const Span& s) const;
  Bits close(const Hom& h, const Bits& gens) const;

  FinCatPtr t_;
  std::size_t n_ = 0;
  std::vector<Hom> homs_;
  QuantaloidPtr q_;
};

using CriblePtr = std::shared_ptr<const CribleQuantaloid>;

CriblePtr build_S_quantaloid(FinCatPtr t);

/// States typed by objects of T and transitions labelled by spans.
struct CtsSpec {
  struct State {
    std::string name;
    std::uint32_t type = 0;
  };
  struct Transition {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    Span label;
  };
  std::vector<State> states;
  std::vector<Transition> transitions;
};

/// A_p over S(T): free closure of the principal cribles of the labels.
/// Throws TypeMismatch when a label does not span the states' types.
VCatPtr cts_to_vcat(const CribleQuantaloid& s, const CtsSpec& spec);

/// F -| G with counit components eps_b : F G b -> b.
struct CatAdjunction {
  CatFunctor left;
  CatFunctor right;
  std::vector<std::uint32_t> counit;
};

// Transposition hom(a, G b) -> hom(F a, b), t |-> F t ; eps_b, is a bijection
// for all a, b, and the counit is natural.
Report validate_cat_adjunction(const CatAdjunction& adj);

/// S(F) : S(T) -> S(T') for a functor preserving the chosen pullbacks, with
/// its local right adjoints U and, given F -| G, the local left adjoints R
/// of S(G).
struct SRefinement {
  TsePtr tse;
  LocalAdjoints adjoints;
  TsePtr right_tse;                  // S(G), when an adjunction is given
  std::vector<MonotoneMap> left_of_right;  // R_{x,y}, row major over Obj(T')
};

// Throws NotExact when F does not preserve the chosen pullbacks, NoAdjoint
// when a local adjunction fails, BaseMismatch on foreign quantaloids.
SRefinement s_functor(const CatFunctor& f, const CribleQuantaloid& from, const CribleQuantaloid& to,
                      const CatAdjunction* adjunction = nullptr);

/// apply_cob(S(F), A).
VCatPtr refine(const SRefinement& r, const VCatPtr& a);
VFunctor refine(const SRefinement& r, const VFunctor& f);

}  // namespace qbisim
