#pragma once

// Row kernels for F_p elimination.  A scalar reference path and an AVX2 path
// are compiled side by side; the active one is picked once from cpuid and can
// be pinned with MRES_SIMD=scalar|avx2.

#include <cstddef>
#include <cstdint>
#include <string>

namespace mres::kernels {

// y[i] = (y[i] + c * x[i]) mod p, all inputs already reduced, p < 2^31
using AxpyFn = void (*)(uint32_t* y, const uint32_t* x, uint32_t c, size_t len, uint32_t p);
// y[i] = (c * y[i]) mod p
using ScaleFn = void (*)(uint32_t* y, uint32_t c, size_t len, uint32_t p);

struct KernelSet {
  const char* name;
  AxpyFn axpy;
  ScaleFn scale;
};

namespace scalar {
void axpy(uint32_t* y, const uint32_t* x, uint32_t c, size_t len, uint32_t p);
void scale(uint32_t* y, uint32_t c, size_t len, uint32_t p);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void axpy(uint32_t* y, const uint32_t* x, uint32_t c, size_t len, uint32_t p);
void scale(uint32_t* y, uint32_t c, size_t len, uint32_t p);
}  // namespace avx2
#endif

bool avx2_available();
const KernelSet& scalar_set();
// nullptr when the CPU or build lacks the variant
const KernelSet* avx2_set();

const KernelSet& active();
void select(const std::string& name);  // "scalar", "avx2", "auto"

}  // namespace mres::kernels
