#pragma once

#include <cstdint>
#include <random>

#include "qbisim/bisim.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim::gen {

using Rng = std::mt19937_64;

// Uniform for explicit lattices; each atom with probability `density` for
// powerset lattices.
Elem element(const Lattice& l, Rng& rng, double density = 0.35);
// A random element below x.
Elem below(const Lattice& l, const Elem& x, Rng& rng, double density = 0.5);

/// Free closure of a random graph on n vertices with random extents.
VCatPtr vcategory(const QuantaloidPtr& base, std::size_t n, Rng& rng, double edge_probability = 0.5);

/// A random V-functor into c from a free closure of labels below c's homs.
VFunctor functor_into(const VCatPtr& c, std::size_t n, Rng& rng);

/// Each object of c is copied 1..max_copies times, homs split at random and
/// closed; the projection onto c is in Od.
VFunctor inflate(const VCatPtr& c, std::size_t max_copies, Rng& rng);

/// Relabelling of objects by a random permutation.
VFunctor isomorphism(const VCatPtr& c, Rng& rng);

/// Equivalence closure of the largest bisimulation inside Δ ∪ (random symmetric pairs).
BisimEquivalence bisim_equivalence(const VCatPtr& a, Rng& rng);

/// Od map of one of several shapes: inflation, inflation then iso, quotient
/// map of a random bisimulation equivalence.
VFunctor od_map(const QuantaloidPtr& base, std::size_t n, Rng& rng);

}  // namespace qbisim::gen
