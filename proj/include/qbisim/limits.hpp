#pragma once

#include <cstddef>

namespace qbisim {

// Size caps for exponential constructions. Exceeding a cap raises
// ErrorKind::SizeLimit instead of stalling.
struct Limits {
  // Elements of an explicitly tabulated lattice (join/meet tables are n*n).
  std::size_t max_lattice_elements = 2048;
  // Atoms of a powerset lattice (bits per element).
  std::size_t max_atoms = std::size_t{1} << 16;
  // Elements enumerated by exhaustive checks and tabulations.
  std::size_t max_enumerate = std::size_t{1} << 16;
  // Candidate maps visited while enumerating V-functors.
  std::size_t max_functor_search = std::size_t{1} << 22;
  // Work budget (tensor evaluations) for exhaustive quantaloid validation;
  // atomic tensors fall back to atom-level checks beyond it.
  std::size_t max_validation_work = std::size_t{1} << 22;
};

Limits& limits();

}  // namespace qbisim
