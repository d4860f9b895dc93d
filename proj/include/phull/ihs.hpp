#pragma once

// Iterative hull sequences: hulls of S^n(u^∞) compared against the substitution
// subshift through dictionary agreement, the fitted decay rate of the distance
// bound, and the length thresholds N₁(r), N₂(r) of the inclusion bounds.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phull/defect_graph.hpp"
#include "phull/dictionary.hpp"
#include "phull/rate_fit.hpp"
#include "phull/substitution.hpp"

namespace phull {

struct IhsStep {
  unsigned n = 0;
  std::size_t period_length = 0;
  DistanceReport distance;
  std::size_t illegal_two_words = 0;
};

struct IhsOptions {
  unsigned max_steps = 10;
  std::size_t max_length = 41;  // odd
  std::size_t period_budget = 10'000'000;
};

struct IhsRun {
  Substitution substitution;
  CyclicWord seed;
  IhsOptions options;
  std::vector<IhsStep> steps;  // n = 0, 1, …
  std::optional<RateFit> rate_fit;
  /// A resource budget stopped the run (steps holds the completed prefix) or cut a scan short.
  bool truncated = false;

  /// Steps whose agreement strictly increased over the previous step and is below the scan cap.
  std::vector<std::size_t> informative_steps() const;
};

/// Runs steps n = 0 … max_steps. The rate fit is log(upper_bound) against n over the
/// informative steps, present when there are at least 3 of them.
IhsRun run(Language& language, const CyclicWord& seed, const IhsOptions& options = {});

/// Hull of S^n(seed) for the given step, rebuilt from the seed.
CyclicWord step_word(const Substitution& s, const CyclicWord& seed, unsigned n);

struct RateBounds {
  PerronData perron;
  RepetitivityEstimate repetitivity;
  std::size_t alphabet_size = 0;

  /// log r/log θ + (log C_S − log Č)/log θ; +∞ without a repetitivity constant.
  double n1(double r) const;
  /// log r/log θ − log(2Č)/log θ + |A|²
  double n2(double r) const;
};

RateBounds bounds(const Substitution& s, const PerronData& perron, const RepetitivityEstimate& repetitivity);

struct InclusionCheck {
  std::size_t r = 0;
  unsigned n = 0;
  bool superset_applies = false;  // n ≥ ⌈N₁(r)⌉
  bool superset_holds = false;    // W(Ω_n)_r ⊇ W(S)_r
  bool subset_applies = false;    // good seed and n > ⌈N₂(r)⌉
  bool subset_holds = false;      // W(Ω_n)_r ⊆ W(S)_r

  bool violated() const { return (superset_applies && !superset_holds) || (subset_applies && !subset_holds); }
};

struct BoundsReport {
  Verdict seed_verdict = Verdict::good;
  std::vector<InclusionCheck> checks;

  std::size_t violations() const;
};

/// The subset half only applies to good seeds; for bad seeds it is reported as not applicable.
BoundsReport check_bounds(const IhsRun& run, Language& language, const RateBounds& bounds,
                          std::span<const std::size_t> r_list, Verdict seed_verdict);

struct ComplexityCapRow {
  unsigned n = 0;
  std::size_t r = 0;
  std::size_t complexity = 0;
  std::size_t period_length = 0;
  double perron_cap = 0;  // Ĉ θ^n |u|

  bool within_period() const { return complexity <= period_length; }
  /// Relative slack 1e-9 absorbs rounding in Ĉ θ^n when the cap is attained exactly.
  bool within_perron() const { return static_cast<double>(complexity) <= perron_cap * (1.0 + 1e-9); }
};

/// Hull complexity at every odd r ≤ max_length for every step of the run.
std::vector<ComplexityCapRow> complexity_cap(const IhsRun& run, const PerronData& perron);

}  // namespace phull
