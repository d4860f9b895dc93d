#pragma once

// Alphabets, finite words and periodic (cyclic) words.
//
// Letters are stored as indices into an Alphabet, so symbols may be arbitrary
// printable tokens ("0", "a", "Cu", ...). The alphabet order fixes the row and
// column order of substitution matrices and the lexicographic order of words.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phull {

using Letter = std::uint8_t;

class Word;

class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 255;

  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(Letter letter) const { return symbols_.at(letter); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  std::optional<Letter> find(std::string_view symbol) const;
  /// Throws InvalidArgument for unknown symbols.
  Letter index(std::string_view symbol) const;

  /// True when every symbol is one character, so words can be written without separators.
  bool single_char() const noexcept { return single_char_; }

  /// Whitespace-separated tokens; a token that is not a symbol is split into characters
  /// when the alphabet is single-character.
  Word parse(std::string_view text) const;
  std::string render(const Word& word) const;

  /// All |A|^length words in lexicographic order.
  std::vector<Word> all_words(std::size_t length) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

/// Non-empty finite word; immutable value with structural equality and lexicographic order.
class Word {
 public:
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  Word substr(std::size_t pos, std::size_t length) const;
  bool contains(const Word& factor) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

using WordSet = std::set<Word>;

/// Distinct contiguous factors of `word` with the given length (empty if longer than the word).
WordSet subwords(const Word& word, std::size_t length);

/// The periodic configuration u^∞ represented by its period u.
class CyclicWord {
 public:
  explicit CyclicWord(Word period) : period_(std::move(period)) {}

  const Word& period() const noexcept { return period_; }
  std::size_t length() const noexcept { return period_.size(); }

  /// Period rotated left by `shift` letters; generates the same hull.
  CyclicWord rotated(std::size_t shift) const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  Word period_;
};

/// Length-`length` dictionary of the hull of u^∞: factors starting at the |u| positions of
/// the bi-infinite repetition.
WordSet cyclic_subwords(const CyclicWord& word, std::size_t length);

}  // namespace phull
