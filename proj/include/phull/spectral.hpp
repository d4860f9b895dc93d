#pragma once

// Band spectra of periodic Schrödinger operators (Hψ)(n) = −ψ(n+1) − ψ(n−1) + V(n)ψ(n)
// driven by the letters of a periodic word, and their convergence along S^n(seed).
// Band edges come from the periodic (θ = 0) and antiperiodic (θ = π) Floquet matrices.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phull/rate_fit.hpp"
#include "phull/substitution.hpp"
#include "phull/words.hpp"

namespace phull {

/// Letter → coupling, total over the alphabet.
class PotentialMap {
 public:
  explicit PotentialMap(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator()(Letter l) const { return values_.at(l); }
  const std::vector<double>& values() const noexcept { return values_; }
  /// V(0), …, V(p−1) along one period.
  std::vector<double> along(const Word& period) const;

  bool operator==(const PotentialMap&) const = default;

 private:
  std::vector<double> values_;
};

struct Interval {
  double lo = 0;
  double hi = 0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

struct SpectralBands {
  std::vector<Interval> intervals;  // sorted, merged when touching
  std::size_t period = 0;
  std::vector<double> periodic;      // eigenvalues at θ = 0, ascending
  std::vector<double> antiperiodic;  // eigenvalues at θ = π, ascending

  double total_bandwidth() const;
};

inline constexpr double kDefaultSpectralTolerance = 1e-12;

enum class FloquetPhase { periodic, antiperiodic };

/// All eigenvalues of the p×p Floquet matrix, ascending, to absolute accuracy ≈ tol.
std::vector<double> floquet_eigenvalues(std::span<const double> potential, FloquetPhase phase,
                                        double tol = kDefaultSpectralTolerance);

/// All eigenvalues of a symmetric tridiagonal matrix by batched Sturm bisection.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> off,
                                            double tol = kDefaultSpectralTolerance);

/// Throws NumericError (with the eigenvalues) if the two phases fail to interlace.
SpectralBands bands(std::span<const double> potential, double tol = kDefaultSpectralTolerance);
SpectralBands bands(const CyclicWord& word, const PotentialMap& potential, double tol = kDefaultSpectralTolerance);

/// Sorts and merges intervals whose gap is at most `gap_tol`.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals, double gap_tol = 0);

/// Exact Hausdorff distance between two finite unions of closed intervals.
double hausdorff_distance(std::span<const Interval> a, std::span<const Interval> b);
double spectral_distance(const SpectralBands& a, const SpectralBands& b);

/// Trace of the one-period transfer matrix at each energy; the spectrum is {|trace| ≤ 2}.
std::vector<double> discriminant(std::span<const double> potential, std::span<const double> energies);

struct SpectralOptions {
  unsigned max_steps = 10;
  double tol = kDefaultSpectralTolerance;
  std::size_t period_cap = 20'000;
};

struct SpectralStep {
  unsigned n = 0;
  SpectralBands bands;
  std::optional<double> increment_to_next;  // d_H(σ_n, σ_{n+1})
};

struct SpectralRun {
  Substitution substitution;
  CyclicWord seed;
  PotentialMap potential;
  SpectralOptions options;
  std::vector<SpectralStep> steps;
  /// log(increment) against n over the positive increments, present for at least 3 of them.
  std::optional<RateFit> rate_fit;
  bool truncated = false;  // the period cap stopped the run early
};

SpectralRun spectral_run(const Substitution& s, const CyclicWord& seed, const PotentialMap& potential,
                         const SpectralOptions& options = {});

}  // namespace phull
