#include "symaut/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace symaut::kernels {

#if defined(__AVX2__)

namespace {

// acc in [0, 2^31): r = acc - floor(acc / m) * m, with a +-1 correction for
// rounding in the double-precision quotient.
inline __m256i reduce_lanes(__m256i acc, __m256d inv_m, __m256i vm) {
  const __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(acc));
  const __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(acc, 1));
  const __m128i q_lo = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(lo, inv_m)));
  const __m128i q_hi = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(hi, inv_m)));
  const __m256i q = _mm256_set_m128i(q_hi, q_lo);
  __m256i r = _mm256_sub_epi32(acc, _mm256_mullo_epi32(q, vm));
  const __m256i negative = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(negative, vm));
  const __m256i too_big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vm, _mm256_set1_epi32(1)));
  r = _mm256_sub_epi32(r, _mm256_and_si256(too_big, vm));
  return r;
}

}  // namespace

bool avx2_compiled() { return true; }

void mod_matvec_avx2(const ModMatVecJob& job) {
  if (!avx2_eligible(job.cols, job.modulus)) {
    mod_matvec_scalar(job);
    return;
  }
  const __m256d inv_m = _mm256_set1_pd(1.0 / static_cast<double>(job.modulus));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(job.modulus));
  const std::size_t full = job.count - job.count % 8;
  for (std::size_t r = 0; r < job.rows; ++r) {
    const std::uint32_t* row = job.matrix.data() + r * job.cols;
    std::uint32_t* out = job.output.data() + r * job.count;
    for (std::size_t v = 0; v < full; v += 8) {
      __m256i acc = _mm256_setzero_si256();
      for (std::size_t c = 0; c < job.cols; ++c) {
        if (row[c] == 0) continue;
        const __m256i coef = _mm256_set1_epi32(static_cast<int>(row[c]));
        const __m256i x =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(job.input.data() + c * job.count + v));
        acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(coef, x));
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + v), reduce_lanes(acc, inv_m, vm));
    }
    for (std::size_t v = full; v < job.count; ++v) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < job.cols; ++c)
        acc += static_cast<std::uint64_t>(row[c]) * job.input[c * job.count + v];
      out[v] = static_cast<std::uint32_t>(acc % job.modulus);
    }
  }
}

#else

bool avx2_compiled() { return false; }

void mod_matvec_avx2(const ModMatVecJob& job) { mod_matvec_scalar(job); }

#endif

}  // namespace symaut::kernels
