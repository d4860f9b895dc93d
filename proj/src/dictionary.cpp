#include "phull/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "phull/errors.hpp"

namespace phull {

namespace {

Substitution make_lift_rule(const Substitution& s) {
  // Primitive images grow without bound, so some power has all images of length ≥ 2.
  Substitution p = s;
  for (unsigned q = 1; q <= 64; ++q) {
    if (p.min_image_length() >= 2) return p;
    p = s.power(q + 1);
  }
  throw InvalidArgument("substitution images do not grow");
}

void insert_windows(const Word& host, std::size_t length, WordSet& into, std::vector<Word>* fresh,
                    std::size_t budget) {
  if (host.size() < length) return;
  auto letters = host.letters();
  for (std::size_t i = 0; i + length <= letters.size(); ++i) {
    auto [it, inserted] =
        into.emplace(std::vector<Letter>(letters.begin() + i, letters.begin() + i + length));
    if (!inserted) continue;
    if (into.size() > budget)
      throw ResourceError("dictionary of length " + std::to_string(length) + " exceeds the budget of " +
                          std::to_string(budget) + " words");
    if (fresh) fresh->push_back(*it);
  }
}

}  // namespace

Language::Language(Substitution s, std::size_t word_budget)
    : s_(std::move(s)), budget_(word_budget), lift_rule_(s_) {
  if (!is_primitive(s_)) throw InvalidArgument("substitution is not primitive");
  lift_rule_ = make_lift_rule(s_);
}

WordSet Language::closure(std::size_t length) const {
  if (length == 0) throw InvalidArgument("dictionary length must be positive");
  const auto n = s_.size();
  std::vector<Word> iterates;
  for (std::size_t a = 0; a < n; ++a) iterates.push_back(Word{static_cast<Letter>(a)});
  auto shortest = [&] {
    std::size_t m = iterates.front().size();
    for (const auto& w : iterates) m = std::min(m, w.size());
    return m;
  };
  while (shortest() < length)
    for (auto& w : iterates) w = s_.apply(w);

  WordSet dict;
  std::vector<Word> pending;
  for (const auto& w : iterates) insert_windows(w, length, dict, &pending, budget_);
  while (!pending.empty()) {
    Word u = std::move(pending.back());
    pending.pop_back();
    insert_windows(s_.apply(u), length, dict, &pending, budget_);
  }
  return dict;
}

WordSet Language::lift(std::size_t length) {
  const std::size_t shortest = lift_rule_.min_image_length();
  const std::size_t preimage = (length - 2) / shortest + 2;
  const WordSet& base = words(preimage);
  WordSet dict;
  for (const auto& v : base) insert_windows(lift_rule_.apply(v), length, dict, nullptr, budget_);
  return dict;
}

const WordSet& Language::words(std::size_t length) {
  if (length == 0) throw InvalidArgument("dictionary length must be positive");
  if (auto it = memo_.find(length); it != memo_.end()) return it->second;
  WordSet dict = length <= kClosureMaxLength ? closure(length) : lift(length);
  return memo_.emplace(length, std::move(dict)).first->second;
}

bool Language::is_legal(const Word& w) { return words(w.size()).contains(w); }

WordSource WordSource::legal(Language& language) { return WordSource(&language); }

WordSource WordSource::hull(CyclicWord word, std::size_t word_budget) {
  return WordSource(Hull{std::move(word), word_budget});
}

Dictionary WordSource::dictionary(std::size_t length) const {
  if (auto lang = std::get_if<Language*>(&src_))
    return Dictionary{length, (*lang)->words(length), DictionaryKind::substitution_legal};
  const auto& h = std::get<Hull>(src_);
  auto words = cyclic_subwords(h.word, length);
  if (words.size() > h.budget)
    throw ResourceError("hull dictionary of length " + std::to_string(length) + " exceeds the word budget");
  return Dictionary{length, std::move(words), DictionaryKind::cyclic_hull};
}

const Alphabet* WordSource::alphabet() const {
  if (auto lang = std::get_if<Language*>(&src_)) return &(*lang)->alphabet();
  return nullptr;
}

DictionaryKind WordSource::kind() const {
  return std::holds_alternative<Hull>(src_) ? DictionaryKind::cyclic_hull : DictionaryKind::substitution_legal;
}

Dictionary legal_words(const Substitution& s, std::size_t length, std::size_t word_budget) {
  Language lang(s, word_budget);
  return Dictionary{length, lang.words(length), DictionaryKind::substitution_legal};
}

WordSet illegal_words(Language& language, std::size_t length) {
  if (length == 0) throw InvalidArgument("dictionary length must be positive");
  const double total = std::pow(static_cast<double>(language.alphabet().size()), static_cast<double>(length));
  if (total > static_cast<double>(language.word_budget()))
    throw ResourceError("|A|^" + std::to_string(length) + " exceeds the word budget");
  const auto& legal = language.words(length);
  WordSet out;
  for (auto& w : language.alphabet().all_words(length))
    if (!legal.contains(w)) out.insert(std::move(w));
  return out;
}

WordSet illegal_words(const Substitution& s, std::size_t length, std::size_t word_budget) {
  Language lang(s, word_budget);
  return illegal_words(lang, length);
}

std::size_t complexity(Language& language, std::size_t r) { return language.words(r).size(); }

std::size_t complexity(const CyclicWord& word, std::size_t r) { return cyclic_subwords(word, r).size(); }

std::size_t complexity(const WordSource& source, std::size_t r) { return source.dictionary(r).words.size(); }

DistanceReport distance(const WordSource& first, const WordSource& second, std::size_t max_length) {
  if (max_length == 0 || max_length % 2 == 0)
    throw InvalidArgument("distance scan limit must be a positive odd length");
  DistanceReport rep;
  rep.max_length = max_length;
  for (std::size_t len = 1; len <= max_length; len += 2) {
    Dictionary a, b;
    try {
      a = first.dictionary(len);
      b = second.dictionary(len);
    } catch (const ResourceError&) {
      rep.truncated = true;
      break;
    }
    if (a.words == b.words) {
      rep.agree_length = len;
      continue;
    }
    std::vector<Word> diff;
    std::set_symmetric_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                                  std::back_inserter(diff));
    rep.witness = diff.front();
    rep.witness_side = a.words.contains(diff.front()) ? DistanceReport::Side::first : DistanceReport::Side::second;
    break;
  }
  rep.rho = (rep.agree_length + 1) / 2;
  rep.upper_bound = DistanceReport::bound_for(rep.rho);
  return rep;
}

namespace {

// Does every word of `long_words` contain every word of `short_words` (all of length ℓ)?
bool all_contain(const WordSet& long_words, const WordSet& short_words, std::size_t alphabet_size) {
  const std::size_t ell = short_words.begin()->size();
  std::vector<std::uint64_t> codes;
  codes.reserve(short_words.size());
  auto encode = [&](std::span<const Letter> w, std::size_t pos) {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < ell; ++k) c = c * alphabet_size + w[pos + k];
    return c;
  };
  for (const auto& u : short_words) codes.push_back(encode(u.letters(), 0));
  std::sort(codes.begin(), codes.end());

  std::vector<std::size_t> stamp(codes.size(), 0);
  std::size_t round = 0;
  for (const auto& w : long_words) {
    ++round;
    std::size_t found = 0;
    auto letters = w.letters();
    for (std::size_t i = 0; i + ell <= letters.size() && found < codes.size(); ++i) {
      auto it = std::lower_bound(codes.begin(), codes.end(), encode(letters, i));
      if (it == codes.end()) continue;  // cannot happen for legal factors
      auto idx = static_cast<std::size_t>(it - codes.begin());
      if (stamp[idx] != round) {
        stamp[idx] = round;
        ++found;
      }
    }
    if (found < codes.size()) return false;
  }
  return true;
}

}  // namespace

RepetitivityEstimate estimate_repetitivity(Language& language, std::size_t max_word_length, double c_max) {
  if (max_word_length == 0) throw InvalidArgument("repetitivity range must be positive");
  if (!(c_max >= 1.0)) throw InvalidArgument("repetitivity grid maximum must be at least 1");
  if (std::pow(static_cast<double>(language.alphabet().size()), static_cast<double>(max_word_length)) > 1.8e19)
    throw InvalidArgument("repetitivity word length too large for this alphabet");

  RepetitivityEstimate est;
  est.max_word_length = max_word_length;
  est.grid_max = c_max;
  const auto alpha = language.alphabet().size();

  bool all_found = true;
  for (std::size_t ell = 1; ell <= max_word_length; ++ell) {
    const WordSet& short_words = language.words(ell);
    auto holds = [&](std::size_t m) { return all_contain(language.words(m), short_words, alpha); };
    const auto limit = static_cast<std::size_t>(std::ceil(c_max * static_cast<double>(ell)));
    // The property is monotone in m (legal words are closed under factors).
    std::size_t lo = ell, hi = ell;
    while (hi < limit && !holds(hi)) {
      lo = hi + 1;
      hi = std::min(limit, hi * 2);
    }
    if (!holds(hi)) {
      est.minimal_window.push_back(0);
      all_found = false;
      continue;
    }
    while (lo < hi) {
      const auto mid = lo + (hi - lo) / 2;
      if (holds(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    est.minimal_window.push_back(hi);
  }
  if (!all_found) return est;

  for (double c = 1.0; c <= c_max + 1e-12; c += est.grid_step) {
    bool ok = true;
    for (std::size_t ell = 1; ell <= max_word_length && ok; ++ell)
      ok = static_cast<std::size_t>(std::ceil(c * static_cast<double>(ell))) >= est.minimal_window[ell - 1];
    if (ok) {
      est.constant = c;
      break;
    }
  }
  return est;
}

}  // namespace phull
