#pragma once

#include "nisqtopo/kernels.hpp"

namespace nisqtopo::kernels {

#if defined(NISQTOPO_HAVE_AVX2)
/// Defined in the translation unit built with -mavx2 -mfma.
const KernelTable& avx2_table();
#endif

} // namespace nisqtopo::kernels
