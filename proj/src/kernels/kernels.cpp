#include "landauer/kernels.hpp"

#include <cmath>

namespace landauer::kernels {

namespace {

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void exp_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

struct Table {
  void (*sincos)(const double*, double*, double*, std::size_t);
  void (*exp)(const double*, double*, std::size_t);
};

constexpr Table kScalar{&sincos_scalar, &exp_scalar};

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
// Defined in kernels_avx2.cpp, compiled with -mavx2 -mfma.
void sincos_avx2(const double* x, double* s, double* c, std::size_t n);
void exp_avx2(const double* x, double* y, std::size_t n);
#endif

namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Table table_for(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::avx2) return Table{&sincos_avx2, &exp_avx2};
#else
  (void)b;
#endif
  return kScalar;
}

struct State {
  Backend backend;
  Table table;
};

State& state() {
  static State s = [] {
    Backend b = host_has_avx2() ? Backend::avx2 : Backend::scalar;
    return State{b, table_for(b)};
  }();
  return s;
}

}  // namespace

Backend active() { return state().backend; }

bool available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && host_has_avx2());
}

bool select(Backend b) {
  if (!available(b)) return false;
  state() = State{b, table_for(b)};
  return true;
}

std::string_view name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void sincos(const double* x, double* s, double* c, std::size_t n) {
  state().table.sincos(x, s, c, n);
}

void exp(const double* x, double* y, std::size_t n) {
  state().table.exp(x, y, n);
}

}  // namespace landauer::kernels
