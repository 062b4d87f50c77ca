#include "mres/fp_kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define MRES_HAVE_X86 1
#endif

namespace mres::kernels {

namespace scalar {

// Shoup multiplication: cs = floor(c * 2^32 / p) gives the quotient estimate
// q = hi32(cs * x) with c*x - q*p in [0, 2p).
static inline uint32_t mul_shoup(uint32_t x, uint32_t c, uint32_t cs, uint32_t p) {
  uint32_t q = static_cast<uint32_t>((uint64_t(cs) * x) >> 32);
  uint32_t r = c * x - q * p;
  return r >= p ? r - p : r;
}

void axpy(uint32_t* y, const uint32_t* x, uint32_t c, size_t len, uint32_t p) {
  if (c == 0) return;
  uint32_t cs = static_cast<uint32_t>((uint64_t(c) << 32) / p);
  for (size_t i = 0; i < len; ++i) {
    uint32_t s = y[i] + mul_shoup(x[i], c, cs, p);
    y[i] = s >= p ? s - p : s;
  }
}

void scale(uint32_t* y, uint32_t c, size_t len, uint32_t p) {
  uint32_t cs = static_cast<uint32_t>((uint64_t(c) << 32) / p);
  for (size_t i = 0; i < len; ++i) y[i] = mul_shoup(y[i], c, cs, p);
}

}  // namespace scalar

#ifdef MRES_HAVE_X86
namespace avx2 {

__attribute__((target("avx2"))) static inline __m256i mul_shoup8(__m256i x, __m256i c, __m256i cs,
                                                                  __m256i p) {
  __m256i even = _mm256_mul_epu32(x, cs);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), cs);
  __m256i q = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
  __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(c, x), _mm256_mullo_epi32(q, p));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, p));
}

__attribute__((target("avx2"))) void axpy(uint32_t* y, const uint32_t* x, uint32_t c, size_t len,
                                          uint32_t p) {
  if (c == 0) return;
  uint32_t csv = static_cast<uint32_t>((uint64_t(c) << 32) / p);
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vcs = _mm256_set1_epi32(static_cast<int>(csv));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i s = _mm256_add_epi32(yv, mul_shoup8(xv, vc, vcs, vp));
    s = _mm256_min_epu32(s, _mm256_sub_epi32(s, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), s);
  }
  if (i < len) scalar::axpy(y + i, x + i, c, len - i, p);
}

__attribute__((target("avx2"))) void scale(uint32_t* y, uint32_t c, size_t len, uint32_t p) {
  uint32_t csv = static_cast<uint32_t>((uint64_t(c) << 32) / p);
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vcs = _mm256_set1_epi32(static_cast<int>(csv));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), mul_shoup8(yv, vc, vcs, vp));
  }
  if (i < len) scalar::scale(y + i, c, len - i, p);
}

}  // namespace avx2
#endif

bool avx2_available() {
#ifdef MRES_HAVE_X86
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet& scalar_set() {
  static const KernelSet s{"scalar", &scalar::axpy, &scalar::scale};
  return s;
}

const KernelSet* avx2_set() {
#ifdef MRES_HAVE_X86
  static const KernelSet s{"avx2", &avx2::axpy, &avx2::scale};
  return avx2_available() ? &s : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelSet* pick(const std::string& name) {
  if (name == "scalar") return &scalar_set();
  if (name == "avx2") {
    if (const KernelSet* k = avx2_set()) return k;
    throw std::runtime_error("avx2 kernels unavailable on this CPU");
  }
  if (const KernelSet* k = avx2_set()) return k;
  return &scalar_set();
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> cur{[] {
    const char* env = std::getenv("MRES_SIMD");
    return pick(env ? env : "auto");
  }()};
  return cur;
}

}  // namespace

const KernelSet& active() { return *current().load(std::memory_order_relaxed); }

void select(const std::string& name) { current().store(pick(name)); }

}  // namespace mres::kernels
