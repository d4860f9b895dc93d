#pragma once

// Inner loops of the spectral solver. Each kernel has a scalar reference and an
// AVX2 variant that evaluates the same operations in the same order, so results
// are bit-identical; the active variant is chosen at runtime.

#include <cstdint>
#include <span>
#include <vector>

namespace phull::simd {

enum class Isa { scalar, avx2 };

const char* name(Isa isa);
/// Compiled in and supported by this CPU.
bool supported(Isa isa);
std::vector<Isa> available();

/// Best supported variant, unless overridden by set_active() or by the PHULL_SIMD
/// environment variable ("scalar" or "avx2") read on first use.
Isa active();
/// Throws InvalidArgument for an unsupported variant.
void set_active(Isa isa);

/// counts[i] = number of eigenvalues strictly below shifts[i] of the symmetric tridiagonal
/// matrix with the given diagonal and squared off-diagonal (size n−1). Pivots with
/// |q| ≤ pivmin are replaced by −pivmin.
void sturm_count(std::span<const double> diag, std::span<const double> off_sq, double pivmin,
                 std::span<const double> shifts, std::span<std::uint32_t> counts);
void sturm_count(Isa isa, std::span<const double> diag, std::span<const double> off_sq, double pivmin,
                 std::span<const double> shifts, std::span<std::uint32_t> counts);

/// out[i] = trace of the one-period transfer matrix of −ψ(n+1) − ψ(n−1) + V(n)ψ(n) = Eψ(n)
/// at energies[i].
void discriminant(std::span<const double> potential, std::span<const double> energies, std::span<double> out);
void discriminant(Isa isa, std::span<const double> potential, std::span<const double> energies,
                  std::span<double> out);

namespace detail {
void sturm_count_scalar(const double* diag, const double* off_sq, std::size_t n, double pivmin,
                        const double* shifts, std::uint32_t* counts, std::size_t m);
void discriminant_scalar(const double* v, std::size_t p, const double* energies, double* out, std::size_t m);
#ifdef PHULL_HAVE_AVX2
void sturm_count_avx2(const double* diag, const double* off_sq, std::size_t n, double pivmin,
                      const double* shifts, std::uint32_t* counts, std::size_t m);
void discriminant_avx2(const double* v, std::size_t p, const double* energies, double* out, std::size_t m);
#endif
}  // namespace detail

}  // namespace phull::simd
