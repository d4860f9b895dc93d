#include <immintrin.h>

#include "phull/simd/kernels.hpp"

namespace phull::simd::detail {

namespace {

inline __m256d fix_pivot(__m256d q, __m256d pivmin, __m256d neg_pivmin, __m256d abs_mask) {
  const __m256d tiny = _mm256_cmp_pd(_mm256_and_pd(q, abs_mask), pivmin, _CMP_LE_OQ);
  return _mm256_blendv_pd(q, neg_pivmin, tiny);
}

// Comparison masks are all-ones (−1 as int64), so subtracting them counts.
inline __m256i count_negative(__m256i c, __m256d q) {
  return _mm256_sub_epi64(c, _mm256_castpd_si256(_mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LT_OQ)));
}

inline void store_counts(__m256i c, std::uint32_t* dst) {
  alignas(32) std::int64_t tmp[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), c);
  for (int j = 0; j < 4; ++j) dst[j] = static_cast<std::uint32_t>(tmp[j]);
}

}  // namespace

void sturm_count_avx2(const double* diag, const double* off_sq, std::size_t n, double pivmin,
                      const double* shifts, std::uint32_t* counts, std::size_t m) {
  const __m256d vpiv = _mm256_set1_pd(pivmin);
  const __m256d vneg = _mm256_set1_pd(-pivmin);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t i = 0;
  // Two independent vectors per pass hide the divide latency.
  for (; i + 8 <= m; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(shifts + i);
    const __m256d x1 = _mm256_loadu_pd(shifts + i + 4);
    const __m256d d0 = _mm256_set1_pd(diag[0]);
    __m256d q0 = fix_pivot(_mm256_sub_pd(d0, x0), vpiv, vneg, abs_mask);
    __m256d q1 = fix_pivot(_mm256_sub_pd(d0, x1), vpiv, vneg, abs_mask);
    __m256i c0 = count_negative(_mm256_setzero_si256(), q0);
    __m256i c1 = count_negative(_mm256_setzero_si256(), q1);
    for (std::size_t k = 1; k < n; ++k) {
      const __m256d dk = _mm256_set1_pd(diag[k]);
      const __m256d e2 = _mm256_set1_pd(off_sq[k - 1]);
      q0 = fix_pivot(_mm256_sub_pd(_mm256_sub_pd(dk, x0), _mm256_div_pd(e2, q0)), vpiv, vneg, abs_mask);
      q1 = fix_pivot(_mm256_sub_pd(_mm256_sub_pd(dk, x1), _mm256_div_pd(e2, q1)), vpiv, vneg, abs_mask);
      c0 = count_negative(c0, q0);
      c1 = count_negative(c1, q1);
    }
    store_counts(c0, counts + i);
    store_counts(c1, counts + i + 4);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(shifts + i);
    __m256d q0 = fix_pivot(_mm256_sub_pd(_mm256_set1_pd(diag[0]), x0), vpiv, vneg, abs_mask);
    __m256i c0 = count_negative(_mm256_setzero_si256(), q0);
    for (std::size_t k = 1; k < n; ++k) {
      const __m256d dk = _mm256_set1_pd(diag[k]);
      const __m256d e2 = _mm256_set1_pd(off_sq[k - 1]);
      q0 = fix_pivot(_mm256_sub_pd(_mm256_sub_pd(dk, x0), _mm256_div_pd(e2, q0)), vpiv, vneg, abs_mask);
      c0 = count_negative(c0, q0);
    }
    store_counts(c0, counts + i);
  }
  if (i < m) sturm_count_scalar(diag, off_sq, n, pivmin, shifts + i, counts + i, m - i);
}

void discriminant_avx2(const double* v, std::size_t p, const double* energies, double* out, std::size_t m) {
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d e = _mm256_loadu_pd(energies + i);
    __m256d a1 = _mm256_set1_pd(1.0), a0 = _mm256_setzero_pd();
    __m256d b1 = _mm256_setzero_pd(), b0 = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < p; ++k) {
      const __m256d s = _mm256_sub_pd(_mm256_set1_pd(v[k]), e);
      const __m256d an = _mm256_sub_pd(_mm256_mul_pd(s, a1), a0);
      const __m256d bn = _mm256_sub_pd(_mm256_mul_pd(s, b1), b0);
      a0 = a1;
      a1 = an;
      b0 = b1;
      b1 = bn;
    }
    _mm256_storeu_pd(out + i, _mm256_add_pd(a1, b0));
  }
  if (i < m) discriminant_scalar(v, p, energies + i, out + i, m - i);
}

}  // namespace phull::simd::detail
