#pragma once

#include "qbisim/kernels.hpp"

namespace qbisim::kernels::detail {

extern const Table kScalarTable;

#if defined(__x86_64__) || defined(_M_X64)
#define QBISIM_HAVE_AVX2_KERNELS 1
extern const Table kAvx2Table;
bool cpu_supports_avx2();
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define QBISIM_HAVE_NEON_KERNELS 1
extern const Table kNeonTable;
#endif

}  // namespace qbisim::kernels::detail
