#include "phull/words.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "phull/errors.hpp"

namespace phull {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("alphabet must not be empty");
  if (symbols_.size() > kMaxSize) throw InvalidArgument("alphabet has more than 255 symbols");
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw InvalidArgument("alphabet symbols must not be empty");
    for (unsigned char c : s) {
      if (!std::isgraph(c) || c == ',' || c == '#')
        throw InvalidArgument("alphabet symbol '" + s + "' contains a reserved or non-printable character");
    }
    if (!seen.insert(s).second) throw InvalidArgument("duplicate alphabet symbol '" + s + "'");
    single_char_ = single_char_ && s.size() == 1;
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Letter>(it - symbols_.begin());
}

Letter Alphabet::index(std::string_view symbol) const {
  if (auto l = find(symbol)) return *l;
  throw InvalidArgument("symbol '" + std::string(symbol) + "' is not in the alphabet");
}

Word Alphabet::parse(std::string_view text) const {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    auto token = text.substr(i, j - i);
    if (auto l = find(token)) {
      letters.push_back(*l);
    } else if (single_char_) {
      for (char c : token) letters.push_back(index(std::string_view(&c, 1)));
    } else {
      throw InvalidArgument("symbol '" + std::string(token) + "' is not in the alphabet");
    }
    i = j;
  }
  if (letters.empty()) throw InvalidArgument("empty word");
  return Word(std::move(letters));
}

std::string Alphabet::render(const Word& word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += symbol(word[i]);
  }
  return out;
}

std::vector<Word> Alphabet::all_words(std::size_t length) const {
  std::vector<Word> out;
  if (length == 0) return out;
  std::vector<Letter> cur(length, 0);
  const auto s = static_cast<Letter>(size());
  while (true) {
    out.emplace_back(cur);
    std::size_t k = length;
    while (k > 0) {
      --k;
      if (++cur[k] < s) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
  }
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw InvalidArgument("words must be non-empty");
}

Word Word::substr(std::size_t pos, std::size_t length) const {
  if (pos + length > letters_.size()) throw InvalidArgument("substr out of range");
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(pos + length)));
}

bool Word::contains(const Word& factor) const {
  return std::search(letters_.begin(), letters_.end(), factor.letters_.begin(), factor.letters_.end()) !=
         letters_.end();
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= l;
    h *= 1099511628211ull;
  }
  return h;
}

WordSet subwords(const Word& word, std::size_t length) {
  if (length == 0) throw InvalidArgument("subword length must be positive");
  WordSet out;
  if (length > word.size()) return out;
  auto letters = word.letters();
  for (std::size_t i = 0; i + length <= letters.size(); ++i)
    out.emplace(std::vector<Letter>(letters.begin() + i, letters.begin() + i + length));
  return out;
}

CyclicWord CyclicWord::rotated(std::size_t shift) const {
  const auto n = period_.size();
  std::vector<Letter> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = period_[(i + shift) % n];
  return CyclicWord(Word(std::move(r)));
}

WordSet cyclic_subwords(const CyclicWord& word, std::size_t length) {
  if (length == 0) throw InvalidArgument("subword length must be positive");
  const auto& u = word.period();
  const auto n = u.size();
  WordSet out;
  std::vector<Letter> buf(length);
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t k = 0; k < length; ++k) buf[k] = u[(start + k) % n];
    out.emplace(buf);
  }
  return out;
}

}  // namespace phull
