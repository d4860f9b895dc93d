#pragma once

// Substitution rules, their substitution matrices, primitivity and
// Perron–Frobenius growth data.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "phull/words.hpp"

namespace phull {

using BigInt = boost::multiprecision::cpp_int;

class Substitution {
 public:
  /// images[a] is the image of letter a; every image must be non-empty and over `alphabet`.
  Substitution(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return alphabet_.size(); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const noexcept { return images_; }

  Word apply(const Word& word) const;
  Word apply(const Word& word, unsigned times) const;
  /// S(u^∞) = S(u)^∞
  CyclicWord apply(const CyclicWord& word) const { return CyclicWord(apply(word.period())); }

  /// The substitution S^n as a rule in its own right.
  Substitution power(unsigned n) const;

  std::size_t min_image_length() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  void check_word(const Word& w) const;

  Alphabet alphabet_;
  std::vector<Word> images_;
};

/// Square matrix of non-negative integers, row-major.
class SubstitutionMatrix {
 public:
  explicit SubstitutionMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::uint64_t& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::uint64_t column_sum(std::size_t j) const;
  bool positive() const;

  static SubstitutionMatrix identity(std::size_t n);
  friend SubstitutionMatrix operator*(const SubstitutionMatrix& a, const SubstitutionMatrix& b);
  friend bool operator==(const SubstitutionMatrix&, const SubstitutionMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> entries_;
};

/// entry (i, j) = number of occurrences of letter i in S(j).
SubstitutionMatrix matrix(const Substitution& s);

/// Least p ≤ (s−1)²+1 with M(S)^p entrywise positive; nullopt when S is not primitive.
std::optional<unsigned> primitivity_exponent(const Substitution& s);

inline bool is_primitive(const Substitution& s) { return primitivity_exponent(s).has_value(); }

/// |S^n(a)| for every letter a, exact (column sums of M^n).
std::vector<BigInt> image_lengths(const Substitution& s, unsigned n);

struct PerronData {
  double theta = 0;
  unsigned primitivity_exponent = 0;
  double c_hat = 0;    // max |S^n(a)| / θ^n over letters and 0 ≤ n ≤ horizon
  double c_check = 0;  // min of the same ratios
  unsigned horizon = 0;
  double tolerance = 0;
  unsigned iterations = 0;
};

inline constexpr unsigned kDefaultPerronHorizon = 40;
inline constexpr double kDefaultPerronTolerance = 1e-12;

/// PF eigenvalue by power iteration (stopped when the Collatz–Wielandt bracket is narrower
/// than `tol`) and empirical constants of |S^n(a)| ≍ θ^n. Throws InvalidArgument if S is not
/// primitive, NumericError if the iteration does not converge.
PerronData perron(const Substitution& s, unsigned horizon = kDefaultPerronHorizon,
                  double tol = kDefaultPerronTolerance);

}  // namespace phull
