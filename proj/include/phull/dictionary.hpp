#pragma once

// Legal-word dictionaries W(S)_ℓ, hull dictionaries of periodic words, the
// complexity function and the dictionary characterization of the Hausdorff
// distance between subshifts: d ≤ 1/(ρ+1) iff the dictionaries agree at 2ρ−1.

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "phull/substitution.hpp"
#include "phull/words.hpp"

namespace phull {

inline constexpr std::size_t kDefaultWordBudget = 2'000'000;

/// Memoized legal dictionaries of one primitive substitution.
///
/// Short lengths use the monotone closure U ← U ∪ subwords(S(u), ℓ) seeded with the
/// ℓ-factors of S^{n₀}(a); long lengths are lifted from a shorter level through a power
/// S^q whose images have length ≥ 2 (every long legal word lies in S^q(v) for a legal v).
class Language {
 public:
  explicit Language(Substitution s, std::size_t word_budget = kDefaultWordBudget);

  const Substitution& substitution() const noexcept { return s_; }
  const Alphabet& alphabet() const noexcept { return s_.alphabet(); }
  std::size_t word_budget() const noexcept { return budget_; }

  /// W(S)_ℓ. Throws ResourceError when the dictionary would exceed the word budget.
  const WordSet& words(std::size_t length);
  bool is_legal(const Word& w);

  /// Closure algorithm regardless of length (no memo); used to cross-check the lift.
  WordSet closure(std::size_t length) const;

  static constexpr std::size_t kClosureMaxLength = 48;

 private:
  WordSet lift(std::size_t length);

  Substitution s_;
  std::size_t budget_;
  Substitution lift_rule_;
  std::map<std::size_t, WordSet> memo_;
};

enum class DictionaryKind { substitution_legal, cyclic_hull };

struct Dictionary {
  std::size_t length = 0;
  WordSet words;
  DictionaryKind kind = DictionaryKind::substitution_legal;
};

/// Where a family of dictionaries (one per length) comes from.
class WordSource {
 public:
  /// Non-owning: `language` must outlive the source.
  static WordSource legal(Language& language);
  static WordSource hull(CyclicWord word, std::size_t word_budget = kDefaultWordBudget);

  Dictionary dictionary(std::size_t length) const;
  const Alphabet* alphabet() const;
  DictionaryKind kind() const;

 private:
  struct Hull {
    CyclicWord word;
    std::size_t budget;
  };
  explicit WordSource(std::variant<Language*, Hull> src) : src_(std::move(src)) {}
  std::variant<Language*, Hull> src_;
};

Dictionary legal_words(const Substitution& s, std::size_t length,
                       std::size_t word_budget = kDefaultWordBudget);

/// A^ℓ \ W(S)_ℓ. Throws ResourceError if |A|^ℓ exceeds the budget.
WordSet illegal_words(const Substitution& s, std::size_t length,
                      std::size_t word_budget = kDefaultWordBudget);
WordSet illegal_words(Language& language, std::size_t length);

std::size_t complexity(Language& language, std::size_t r);
std::size_t complexity(const CyclicWord& word, std::size_t r);
std::size_t complexity(const WordSource& source, std::size_t r);

struct DistanceReport {
  enum class Side { first, second };

  std::size_t agree_length = 0;  // largest odd L ≤ max_length with equal dictionaries, 0 if none
  std::size_t rho = 0;           // (agree_length + 1) / 2
  double upper_bound = 1.0;      // 1 / (rho + 1)
  std::optional<Word> witness;   // smallest word of the symmetric difference at the first disagreeing length
  Side witness_side = Side::first;
  std::size_t max_length = 0;    // odd scan limit L_max
  bool truncated = false;        // a word budget stopped the scan early

  static double bound_for(std::size_t rho) { return 1.0 / (static_cast<double>(rho) + 1.0); }
};

/// Scans odd L = 1, 3, …, max_length and stops at the first disagreement.
DistanceReport distance(const WordSource& first, const WordSource& second, std::size_t max_length);

/// Linear repetitivity constant estimated on the grid {1.0, 1.5, …, c_max}: the smallest C
/// such that every legal ℓ-word occurs in every legal ⌈Cℓ⌉-word, for 1 ≤ ℓ ≤ max_word_length.
struct RepetitivityEstimate {
  std::optional<double> constant;
  std::size_t max_word_length = 0;
  double grid_step = 0.5;
  double grid_max = 0;
  /// minimal_window[ℓ-1] = least m such that every legal m-word contains all legal ℓ-words
  /// (0 when it exceeds ⌈c_max ℓ⌉).
  std::vector<std::size_t> minimal_window;
};

inline constexpr std::size_t kDefaultRepetitivityLength = 8;
inline constexpr double kDefaultRepetitivityMax = 512.0;

RepetitivityEstimate estimate_repetitivity(Language& language,
                                           std::size_t max_word_length = kDefaultRepetitivityLength,
                                           double c_max = kDefaultRepetitivityMax);

}  // namespace phull
