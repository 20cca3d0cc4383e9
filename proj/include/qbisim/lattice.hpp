#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbisim/error.hpp"
#include "qbisim/kernels.hpp"

namespace qbisim {

/// An element of a finite complete lattice. Its meaning is given by the
/// owning Lattice: an index for explicitly ordered lattices, a subset of the
/// atoms for powerset lattices.
class Elem {
 public:
  Elem() = default;

  static Elem at(std::uint32_t index) {
    Elem e;
    e.index_ = index;
    return e;
  }
  static Elem of(Bits bits) {
    Elem e;
    e.bits_ = std::move(bits);
    return e;
  }

  std::uint32_t index() const { return index_; }
  const Bits& bits() const { return bits_; }
  Bits& bits() { return bits_; }

  bool operator==(const Elem& other) const { return index_ == other.index_ && bits_ == other.bits_; }
  bool operator<(const Elem& other) const {
    if (index_ != other.index_) return index_ < other.index_;
    return bits_ < other.bits_;
  }
  std::size_t hash() const { return bits_.hash() * 31 + index_; }

 private:
  std::uint32_t index_ = 0;
  Bits bits_;
};

struct ElemHash {
  std::size_t operator()(const Elem& e) const { return e.hash(); }
};

/// Raw, untrusted description of a finite order: element names plus the
/// pairs (i, j) meaning i <= j. Reflexive pairs are implied.
struct OrderSpec {
  std::vector<std::string> names;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> leq;
};

Report validate_lattice(const OrderSpec& spec);

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Finite complete lattice. Immutable once built.
///
/// Two representations share one interface:
///  - explicit: elements are indices, the order is a table, and binary
///    joins/meets are precomputed;
///  - powerset: elements are subsets of a finite atom set, ordered by
///    inclusion, with union/intersection as join/meet.
class Lattice {
 public:
  enum class Kind { explicit_order, powerset };

  // Throws ValidationError listing the violations of validate_lattice.
  static LatticePtr from_order(const OrderSpec& spec);
  static LatticePtr chain(std::vector<std::string> names);
  static LatticePtr powerset(std::vector<std::string> atoms);

  Kind kind() const { return kind_; }
  bool is_powerset() const { return kind_ == Kind::powerset; }

  // Explicit: number of elements. Powerset: number of atoms.
  std::size_t width() const { return names_.size(); }
  // Number of elements, saturating at SIZE_MAX.
  std::size_t element_count() const;
  bool enumerable() const;
  // All elements in ordinal order. Throws SizeLimit past limits().max_enumerate.
  std::vector<Elem> elements() const;
  // Dense numbering of elements; powerset ordinals are the subset bitmask.
  Elem element(std::uint64_t ordinal) const;
  std::uint64_t ordinal(const Elem& e) const;

  bool leq(const Elem& x, const Elem& y) const;
  Elem join(const Elem& x, const Elem& y) const;
  Elem meet(const Elem& x, const Elem& y) const;
  void join_into(Elem& acc, const Elem& x) const;
  Elem join(std::span<const Elem> xs) const;
  Elem meet(std::span<const Elem> xs) const;
  Elem bottom() const;
  Elem top() const;

  bool contains(const Elem& e) const;
  // Throws UnknownElement when e is not an element of this lattice.
  void check(const Elem& e) const;

  // Powerset helpers.
  Elem atom(std::size_t i) const;
  Elem subset(const std::vector<std::size_t>& atoms) const;

  // Element names (explicit) or atom names (powerset).
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> find(std::string_view name) const;
  std::string format(const Elem& e) const;

  bool is_distributive() const;

  // Explicit lattices only.
  OrderSpec order_spec() const;
  LatticePtr dual() const;
  const Bits& up_set(std::uint32_t i) const { return up_[i]; }

 private:
  Lattice() = default;
  // Throws UnknownElement unless both operands belong to this lattice.
  void guard(const Elem& x, const Elem& y) const;

  Kind kind_ = Kind::explicit_order;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;
  // Explicit representation.
  std::vector<Bits> up_;
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  std::uint32_t bottom_ = 0;
  std::uint32_t top_ = 0;
};

/// Monotone map between finite lattices, evaluated either from a table
/// indexed by source ordinals or from a function.
class MonotoneMap {
 public:
  using Fn = std::function<Elem(const Elem&)>;

  MonotoneMap() = default;
  MonotoneMap(LatticePtr source, LatticePtr target, Fn fn);
  static MonotoneMap tabulated(LatticePtr source, LatticePtr target, std::vector<Elem> table);
  static MonotoneMap identity(LatticePtr lattice);

  Elem operator()(const Elem& x) const;

  const LatticePtr& source() const { return source_; }
  const LatticePtr& target() const { return target_; }

  // Materialises the table; throws SizeLimit if the source is too large.
  std::vector<Elem> table() const;
  MonotoneMap tabulate() const;

  // Checks typing and monotonicity exhaustively.
  Report validate() const;
  bool preserves_joins() const;
  // this then g, i.e. g after this.
  MonotoneMap then(const MonotoneMap& g) const;
  bool equals(const MonotoneMap& other) const;
  bool pointwise_leq(const MonotoneMap& other) const;

 private:
  LatticePtr source_;
  LatticePtr target_;
  Fn fn_;
  std::shared_ptr<const std::vector<Elem>> table_;
};

/// G(w) = join{v : F(v) <= w}, returned only after the Galois property
/// F(v) <= w <=> v <= G(w) has been verified for every pair.
/// Throws NoAdjoint when F does not preserve all joins.
MonotoneMap right_adjoint_of_monotone(const MonotoneMap& f);

}  // namespace qbisim
