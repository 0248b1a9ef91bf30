#pragma once

#include "linksched/kernels.hpp"

namespace linksched::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(LINKSCHED_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace linksched::kernels::detail
