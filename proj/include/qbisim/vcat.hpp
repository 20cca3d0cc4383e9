#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbisim/error.hpp"
#include "qbisim/fincat.hpp"
#include "qbisim/quantaloid.hpp"

namespace qbisim {

/// A category enriched in a quantaloid: objects with extents in the base and
/// a hom element A(a,b) in base.hom(a+, b+) for every pair.
class VCategory {
 public:
  VCategory() = default;
  // Homs start at bottom.
  VCategory(QuantaloidPtr base, std::vector<std::string> names, std::vector<std::uint32_t> extents);

  const QuantaloidPtr& base() const { return base_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::uint32_t extent(std::uint32_t a) const { return extents_[a]; }
  const std::vector<std::uint32_t>& extents() const { return extents_; }
  std::optional<std::uint32_t> find(std::string_view name) const;

  const Elem& hom(std::uint32_t a, std::uint32_t b) const { return homs_[a * size() + b]; }
  // Throws UnknownElement when the value is outside base.hom(a+, b+).
  void set_hom(std::uint32_t a, std::uint32_t b, Elem value);
  const Lattice& lattice(std::uint32_t a, std::uint32_t b) const { return *base_->hom(extents_[a], extents_[b]); }

  bool operator==(const VCategory& other) const;

 private:
  QuantaloidPtr base_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> extents_;
  std::vector<Elem> homs_;
};

using VCatPtr = std::shared_ptr<const VCategory>;

Report validate_vcategory(const VCategory& a);

/// Object map between V-categories over one base.
struct VFunctor {
  VCatPtr source;
  VCatPtr target;
  std::vector<std::uint32_t> map;

  static VFunctor identity(VCatPtr a);
  // this then g
  VFunctor then(const VFunctor& g) const;
  bool surjective() const;
  bool operator==(const VFunctor& other) const;
};

// Throws BaseMismatch if source and target have different bases.
Report validate_vfunctor(const VFunctor& f);

// Throws NotParallel unless F and G share source and target.
bool exists_vnatural(const VFunctor& f, const VFunctor& g);

struct Cone {
  VCatPtr apex;
  VFunctor left;
  VFunctor right;
};

/// Extent-matching pairs with homs A(a,a') meet B(b,b').
Cone product(const VCatPtr& a, const VCatPtr& b);
/// Full subcategory of the product on pairs with F(a) = G(b).
Cone pullback(const VFunctor& f, const VFunctor& g);
/// One point per base object, homs at top.
VCatPtr terminal(const QuantaloidPtr& base);
/// The unique functor into the terminal category.
VFunctor to_terminal(const VCatPtr& a, const VCatPtr& one);

struct Coproduct {
  VCatPtr sum;
  std::vector<VFunctor> injections;
};
Coproduct coproduct(const std::vector<VCatPtr>& parts);

/// Graph whose vertices carry extents and whose edges carry hom elements.
struct Graph {
  struct Vertex {
    std::string name;
    std::uint32_t extent = 0;
  };
  struct Edge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    Elem label;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

/// Least V-category containing the edge labels: H = I v E (x) H by a
/// worklist iteration. Throws TypeMismatch on an edge label outside its hom.
VCatPtr free_vcategory(const QuantaloidPtr& base, const Graph& g);

/// All V-functors A -> B. Throws SizeLimit past limits().max_functor_search.
std::vector<VFunctor> enumerate_vfunctors(const VCatPtr& a, const VCatPtr& b);

/// A lax functor C -> Rel: a fiber per object and a relation per morphism.
struct LaxRelationalPresentation {
  FinCatPtr category;
  std::vector<std::vector<std::string>> fibers;
  // relations[m]: pairs (i, j) of fiber indices from source to target fiber.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> relations;

  void normalize();
  bool operator==(const LaxRelationalPresentation& other) const;
};

Report validate_laxrel(const LaxRelationalPresentation& p);
// The base is B(C); pass one built from the same category to share it.
VCatPtr laxrel_to_vcat(const LaxRelationalPresentation& p, QuantaloidPtr base = nullptr);
// Throws BaseMismatch unless the base is a powerset quantaloid B(C).
LaxRelationalPresentation vcat_to_laxrel(const VCategory& a);

/// V(A): objects of A, hom(a,b) the interval below A(a,b).
struct Slice {
  VCatPtr over;
  QuantaloidPtr quantaloid;
  // members[a * n + b]: base elements below A(a,b); local index = position.
  std::vector<std::vector<Elem>> members;

  Elem lift(std::uint32_t a, std::uint32_t b, const Elem& local) const;
  Elem restrict(std::uint32_t a, std::uint32_t b, const Elem& value) const;
};

Slice slice_quantaloid(const VCatPtr& a);
// A V-functor X -> A read as a V(A)-category.
VCatPtr slice_encode(const Slice& s, const VFunctor& f);
// The inverse reading.
VFunctor slice_decode(const Slice& s, const VCatPtr& x);

std::string format_vcategory(const VCategory& a);

}  // namespace qbisim
