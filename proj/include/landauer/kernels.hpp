#pragma once
#include <cstddef>
#include <string_view>

namespace landauer::kernels {

// Batched elementwise transcendentals used by the oscillatory quadrature
// inner loops.  Two implementations: a scalar libm reference and an AVX2
// variant (Cody-Waite reduction + the usual fdlibm/Cephes minimax kernels).
// They agree to a few ulp; the pinned bounds live in tests/test_kernels.cpp.

enum class Backend { scalar, avx2 };

Backend active();
bool available(Backend b);
// Force a backend.  Returns false (and leaves the selection alone) if the
// host cannot run it.
bool select(Backend b);
std::string_view name(Backend b);

// s[i] = sin(x[i]), c[i] = cos(x[i])
void sincos(const double* x, double* s, double* c, std::size_t n);
// y[i] = exp(x[i])
void exp(const double* x, double* y, std::size_t n);

}  // namespace landauer::kernels
