#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbisim/kernels.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim {

/// R ⊆ Obj(A) x Obj(B), stored as a bitset indexed a * |B| + b. Only pairs
/// with equal extents can be inserted.
class SimRelation {
 public:
  SimRelation() = default;
  SimRelation(VCatPtr left, VCatPtr right);

  // All extent-matching pairs.
  static SimRelation full(VCatPtr left, VCatPtr right);
  static SimRelation diagonal(VCatPtr a);
  static SimRelation from_pairs(VCatPtr left, VCatPtr right,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

  const VCatPtr& left() const { return left_; }
  const VCatPtr& right() const { return right_; }
  const Bits& bits() const { return bits_; }

  bool contains(std::uint32_t a, std::uint32_t b) const { return bits_.test(a * right_->size() + b); }
  // Throws TypeMismatch when the extents differ.
  void insert(std::uint32_t a, std::uint32_t b);
  void erase(std::uint32_t a, std::uint32_t b) { bits_.reset(a * right_->size() + b); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

  bool total_left() const;
  bool total_right() const;

  SimRelation inverse() const;
  // this ; other : A -> C. Throws EndpointMismatch unless this.right == other.left.
  SimRelation compose(const SimRelation& other) const;
  // Throws EndpointMismatch unless the endpoints agree.
  SimRelation unite(const SimRelation& other) const;

  bool operator==(const SimRelation& other) const;
  bool is_subset_of(const SimRelation& other) const;

 private:
  VCatPtr left_;
  VCatPtr right_;
  Bits bits_;
};

/// A pair (a,b) of R and a state a' with A(a,a') not below the join of
/// B(b,b') over the partners b' of a'. `converse` marks a failure of R⁻¹.
struct SimCounterexample {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t a2 = 0;
  bool converse = false;
  std::string detail;
};

struct SimCheck {
  bool holds = true;
  std::optional<SimCounterexample> counterexample;
};

SimCheck check_simulation(const SimRelation& r);
SimCheck check_bisimulation(const SimRelation& r);
inline bool is_simulation(const SimRelation& r) { return check_simulation(r).holds; }
inline bool is_bisimulation(const SimRelation& r) { return check_bisimulation(r).holds; }

struct Removal {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::size_t round = 0;
};

struct Refinement {
  SimRelation relation;
  std::vector<Removal> trace;
  std::size_t rounds = 0;
};

// Greatest fixpoint of the refinement operator starting from all
// extent-matching pairs (or from `start`). Throws BaseMismatch.
Refinement largest_simulation(const VCatPtr& a, const VCatPtr& b);
Refinement largest_bisimulation(const VCatPtr& a, const VCatPtr& b);
Refinement largest_simulation_within(const SimRelation& start);
Refinement largest_bisimulation_within(const SimRelation& start);

// B simulates A.
bool simulates(const VCatPtr& a, const VCatPtr& b);
bool bisimilar(const VCatPtr& a, const VCatPtr& b);

/// Condition (1'): B(f x, y) = join{A(x, x') : f x' = y} for all x, y.
/// Returns the first failing pair, if any.
std::optional<std::pair<std::uint32_t, std::uint32_t>> functional_bisimulation_failure(const VFunctor& f);
bool is_functional_bisimulation(const VFunctor& f);
bool is_od(const VFunctor& f);

/// Partition of Obj(A) whose relation is a bisimulation.
struct BisimEquivalence {
  VCatPtr carrier;
  std::vector<std::uint32_t> block_of;
  // Blocks in order of their least member; each block sorted.
  std::vector<std::vector<std::uint32_t>> blocks;

  static BisimEquivalence discrete(VCatPtr a);
  // Builds the blocks from a labelling; does not check the bisimulation property.
  static BisimEquivalence from_labels(VCatPtr a, const std::vector<std::uint32_t>& labels);
  SimRelation relation() const;
  std::uint32_t representative(std::uint32_t block) const { return blocks[block].front(); }
};

// Throws NotABisimulation when R is not a bisimulation on A.
BisimEquivalence equivalence_closure(const SimRelation& r);

struct Quotient {
  VCatPtr category;
  VFunctor map;
};

// Throws NotABisimulation when E's relation is not a bisimulation.
Quotient quotient(const BisimEquivalence& e);

struct VCospan {
  VCatPtr apex;
  VFunctor left;   // A -> apex
  VFunctor right;  // B -> apex
};

struct VSpan {
  VCatPtr apex;
  VFunctor left;   // apex -> A
  VFunctor right;  // apex -> B
};

// Throws NotABisimulation or NotBisimilar when R is not a total bisimulation.
VCospan cospan_witness(const SimRelation& r);
// Also throws NotLocallyDistributive.
VSpan span_witness(const SimRelation& r);

std::string format_pairs(const SimRelation& r);

}  // namespace qbisim
