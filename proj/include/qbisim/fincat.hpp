#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbisim/error.hpp"

namespace qbisim {

/// A finite category given by its multiplication table, optionally with a
/// chosen pullback for every cospan. Composition is written in diagrammatic
/// order: then(f, g) is "f followed by g".
class FiniteCategory {
 public:
  struct Morphism {
    std::string name;
    std::uint32_t source = 0;
    std::uint32_t target = 0;
  };
  // Chosen pullback of the cospan X --f--> Z <--g-- Y: legs apex -> X (left)
  // and apex -> Y (right).
  struct Pullback {
    std::uint32_t apex = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };

  /// Raw data; `compose` lists (f, g, h) meaning then(f, g) = h.
  struct Spec {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<std::uint32_t> identities;
    std::vector<std::array<std::uint32_t, 3>> compose;
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Pullback>> pullbacks;
  };

  FiniteCategory() = default;
  // Stores the data as given; validate_fincat reports problems.
  explicit FiniteCategory(const Spec& spec);

  // The category of a finite poset (i <= j gives one arrow i -> j), with
  // meets as chosen pullbacks wherever they exist. The order is closed
  // reflexively and transitively.
  static FiniteCategory poset(std::vector<std::string> names,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& leq);
  // Poset 0 <= 1 <= ... <= n-1.
  static FiniteCategory chain(std::size_t n);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::string& object_name(std::uint32_t o) const { return objects_[o]; }
  const std::vector<std::string>& object_names() const { return objects_; }
  std::optional<std::uint32_t> find_object(std::string_view name) const;
  std::optional<std::uint32_t> find_morphism(std::string_view name) const;
  const Morphism& morphism(std::uint32_t f) const { return morphisms_[f]; }
  std::uint32_t identity(std::uint32_t o) const { return identities_[o]; }
  std::optional<std::uint32_t> then(std::uint32_t f, std::uint32_t g) const;
  // then() for arrows known to be composable; throws NotComposable otherwise.
  std::uint32_t compose(std::uint32_t f, std::uint32_t g) const;
  const std::vector<std::uint32_t>& hom(std::uint32_t x, std::uint32_t y) const;

  bool has_pullbacks() const { return !pullbacks_.empty(); }
  std::optional<Pullback> pullback(std::uint32_t f, std::uint32_t g) const;
  const std::map<std::pair<std::uint32_t, std::uint32_t>, Pullback>& pullbacks() const { return pullbacks_; }

  Spec spec() const;

 private:
  void index();

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::uint32_t> identities_;
  std::vector<std::int32_t> table_;  // morphisms^2, -1 when undefined
  std::vector<std::vector<std::uint32_t>> homs_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Pullback> pullbacks_;
};

using FinCatPtr = std::shared_ptr<const FiniteCategory>;

/// Category axioms, and when pullbacks are present: one per cospan, each
/// commuting and universal (every cone factors uniquely).
Report validate_fincat(const FiniteCategory& cat);

/// Functor between finite categories.
struct CatFunctor {
  FinCatPtr source;
  FinCatPtr target;
  std::vector<std::uint32_t> on_objects;
  std::vector<std::uint32_t> on_morphisms;

  // For posets the arrow map is forced by the object map.
  static CatFunctor from_objects(FinCatPtr source, FinCatPtr target, std::vector<std::uint32_t> on_objects);
};

Report validate_cat_functor(const CatFunctor& f);

/// Whether F maps every chosen pullback square of its source to a pullback
/// square of its target (the canonical comparison map is an isomorphism).
Report check_preserves_pullbacks(const CatFunctor& f);

/// Whether the cone (apex, left, right) over the cospan (f, g) is universal.
bool is_pullback(const FiniteCategory& cat, std::uint32_t f, std::uint32_t g,
                 const FiniteCategory::Pullback& cone);

}  // namespace qbisim
