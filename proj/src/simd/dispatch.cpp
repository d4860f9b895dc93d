#include <atomic>
#include <cstdlib>
#include <string_view>

#include "phull/errors.hpp"
#include "phull/simd/kernels.hpp"

namespace phull::simd {

namespace {

bool cpu_has_avx2() {
#if defined(PHULL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("PHULL_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && supported(Isa::avx2)) return Isa::avx2;
  }
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t diag, std::size_t off_sq, std::size_t shifts, std::size_t counts) {
  if (diag == 0) throw InvalidArgument("Sturm count needs a non-empty matrix");
  if (off_sq + 1 != diag) throw InvalidArgument("off-diagonal must have one entry fewer than the diagonal");
  if (shifts != counts) throw InvalidArgument("one count per shift");
}

}  // namespace

const char* name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  if (supported(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

Isa active() { return current().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!supported(isa)) throw InvalidArgument(std::string("SIMD variant not available: ") + name(isa));
  current().store(isa, std::memory_order_relaxed);
}

void sturm_count(Isa isa, std::span<const double> diag, std::span<const double> off_sq, double pivmin,
                 std::span<const double> shifts, std::span<std::uint32_t> counts) {
  check_sizes(diag.size(), off_sq.size(), shifts.size(), counts.size());
#ifdef PHULL_HAVE_AVX2
  if (isa == Isa::avx2) {
    if (!supported(isa)) throw InvalidArgument("AVX2 not supported on this CPU");
    detail::sturm_count_avx2(diag.data(), off_sq.data(), diag.size(), pivmin, shifts.data(), counts.data(),
                             shifts.size());
    return;
  }
#endif
  if (isa != Isa::scalar) throw InvalidArgument("SIMD variant not compiled in");
  detail::sturm_count_scalar(diag.data(), off_sq.data(), diag.size(), pivmin, shifts.data(), counts.data(),
                             shifts.size());
}

void sturm_count(std::span<const double> diag, std::span<const double> off_sq, double pivmin,
                 std::span<const double> shifts, std::span<std::uint32_t> counts) {
  sturm_count(active(), diag, off_sq, pivmin, shifts, counts);
}

void discriminant(Isa isa, std::span<const double> potential, std::span<const double> energies,
                  std::span<double> out) {
  if (potential.empty()) throw InvalidArgument("discriminant needs a non-empty period");
  if (energies.size() != out.size()) throw InvalidArgument("one output per energy");
#ifdef PHULL_HAVE_AVX2
  if (isa == Isa::avx2) {
    if (!supported(isa)) throw InvalidArgument("AVX2 not supported on this CPU");
    detail::discriminant_avx2(potential.data(), potential.size(), energies.data(), out.data(), energies.size());
    return;
  }
#endif
  if (isa != Isa::scalar) throw InvalidArgument("SIMD variant not compiled in");
  detail::discriminant_scalar(potential.data(), potential.size(), energies.data(), out.data(), energies.size());
}

void discriminant(std::span<const double> potential, std::span<const double> energies, std::span<double> out) {
  discriminant(active(), potential, energies, out);
}

}  // namespace phull::simd
