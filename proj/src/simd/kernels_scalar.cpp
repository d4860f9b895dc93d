#include <cmath>

#include "phull/simd/kernels.hpp"

namespace phull::simd::detail {

void sturm_count_scalar(const double* diag, const double* off_sq, std::size_t n, double pivmin,
                        const double* shifts, std::uint32_t* counts, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    const double x = shifts[i];
    std::uint32_t c = 0;
    double q = diag[0] - x;
    if (std::fabs(q) <= pivmin) q = -pivmin;
    c += q < 0;
    for (std::size_t k = 1; k < n; ++k) {
      q = (diag[k] - x) - off_sq[k - 1] / q;
      if (std::fabs(q) <= pivmin) q = -pivmin;
      c += q < 0;
    }
    counts[i] = c;
  }
}

void discriminant_scalar(const double* v, std::size_t p, const double* energies, double* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    const double e = energies[i];
    // (a1, a0) starts at ψ(0)=1, ψ(−1)=0; (b1, b0) at ψ(0)=0, ψ(−1)=1.
    double a1 = 1, a0 = 0, b1 = 0, b0 = 1;
    for (std::size_t k = 0; k < p; ++k) {
      const double s = v[k] - e;
      const double an = s * a1 - a0;
      const double bn = s * b1 - b0;
      a0 = a1;
      a1 = an;
      b0 = b1;
      b1 = bn;
    }
    out[i] = a1 + b0;
  }
}

}  // namespace phull::simd::detail
