#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "phull/dictionary.hpp"
#include "phull/errors.hpp"

using namespace phull;

namespace {

WordSet parse_set(const Substitution& s, std::initializer_list<const char*> words) {
  WordSet out;
  for (const char* w : words) out.insert(s.alphabet().parse(w));
  return out;
}

}  // namespace

TEST_CASE("legal and illegal 2-words of the bundled examples") {
  const auto fib = fixture::fibonacci();
  CHECK(legal_words(fib, 2).words == parse_set(fib, {"00", "01", "10"}));
  CHECK(illegal_words(fib, 2) == parse_set(fib, {"11"}));
  const auto ce = fixture::counterexample();
  CHECK(legal_words(ce, 2).words == parse_set(ce, {"00", "01", "02", "10", "11", "12", "20"}));
  CHECK(illegal_words(ce, 2) == parse_set(ce, {"21", "22"}));
  CHECK(illegal_words(fixture::thue_morse(), 2).empty());
  CHECK(legal_words(fixture::thue_morse(), 3).words.size() == 6);  // 000 and 111 never occur
}

TEST_CASE("closure agrees with stabilized factors of long iterates") {
  for (const auto& [name, s] : fixture::bundled()) {
    Language lang(s);
    for (std::size_t len = 1; len <= 6; ++len) {
      CAPTURE(name);
      CAPTURE(len);
      CHECK(oracle::to_int_set(lang.words(len)) == oracle::stabilized_factors(s, len));
    }
  }
}

TEST_CASE("closure agrees with stabilized factors on random primitive rules") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto s = oracle::random_primitive(rng, 2 + i % 2, 3);
    Language lang(s);
    for (std::size_t len : {2u, 4u, 5u}) CHECK(oracle::to_int_set(lang.words(len)) == oracle::stabilized_factors(s, len));
  }
}

TEST_CASE("lifted long dictionaries equal the closure") {
  for (const auto& [name, s] : fixture::bundled()) {
    Language lang(s);
    for (std::size_t len : {49u, 50u, 57u, 64u}) {
      CAPTURE(name);
      CAPTURE(len);
      CHECK(lang.words(len) == lang.closure(len));
    }
  }
}

TEST_CASE("dictionaries are factor-closed and extendable") {
  for (const auto& [name, s] : fixture::bundled()) {
    Language lang(s);
    for (std::size_t len = 2; len <= 12; ++len) {
      for (const auto& w : lang.words(len)) {
        CHECK(lang.is_legal(w.substr(0, len - 1)));
        CHECK(lang.is_legal(w.substr(1, len - 1)));
      }
      // Primitive languages are two-sided extendable: every word has a legal right extension.
      for (const auto& w : lang.words(len - 1)) {
        bool extends = false;
        for (Letter a = 0; a < s.size() && !extends; ++a) {
          std::vector<Letter> v(w.letters().begin(), w.letters().end());
          v.push_back(a);
          extends = lang.is_legal(Word(v));
        }
        CHECK(extends);
      }
    }
  }
}

TEST_CASE("complexity: Sturmian Fibonacci and Coven-Hedlund lower bound") {
  Language fib(fixture::fibonacci());
  for (std::size_t r = 1; r <= 40; ++r) CHECK(complexity(fib, r) == r + 1);
  for (const auto& [name, s] : fixture::bundled()) {
    Language lang(s);
    for (std::size_t r = 1; r <= 16; ++r) CHECK(complexity(lang, r) >= r + 1);
  }
  Language ce(fixture::counterexample());
  const std::size_t expected[] = {3, 7, 12, 18, 25, 31, 36, 42};
  for (std::size_t r = 1; r <= 8; ++r) CHECK(complexity(ce, r) == expected[r - 1]);
}

TEST_CASE("word budget") {
  Language tm(fixture::thue_morse(), 50);
  CHECK_THROWS_AS(tm.words(40), ResourceError);
  CHECK_THROWS_AS(illegal_words(fixture::thue_morse(), 8, 100), ResourceError);
  CHECK_THROWS_AS(Language(fixture::make({"0", "1"}, {"0", "1"})), InvalidArgument);
}

TEST_CASE("dictionary distance") {
  const auto fib = fixture::fibonacci();
  Language lang(fib);
  const auto legal = WordSource::legal(lang);

  const auto self = distance(legal, legal, 21);
  CHECK(self.agree_length == 21);
  CHECK(self.rho == 11);
  CHECK(self.upper_bound == doctest::Approx(1.0 / 12));
  CHECK_FALSE(self.witness);

  const auto zero = distance(WordSource::hull(fixture::cyclic(fib, "0")), WordSource::hull(fixture::cyclic(fib, "1")), 9);
  CHECK(zero.agree_length == 0);
  CHECK(zero.rho == 0);
  CHECK(zero.upper_bound == 1.0);
  REQUIRE(zero.witness);
  CHECK(*zero.witness == Word{0});
  CHECK(zero.witness_side == DistanceReport::Side::first);

  // S^3(0) = 01001: hull agrees with the language up to length 3, not 5.
  const auto step3 = distance(WordSource::hull(fixture::cyclic(fib, "01001")), legal, 41);
  CHECK(step3.agree_length == 3);
  CHECK(step3.upper_bound == doctest::Approx(1.0 / 3));
  REQUIRE(step3.witness);
  CHECK(step3.witness->size() == 5);

  CHECK_THROWS_AS(distance(legal, legal, 4), InvalidArgument);
  const auto truncated = distance(WordSource::hull(fixture::cyclic(fib, "0100101001001"), 3), legal, 41);
  CHECK(truncated.truncated);
}

TEST_CASE("distance is symmetric in its bound") {
  const auto ce = fixture::counterexample();
  Language lang(ce);
  const auto a = WordSource::hull(fixture::cyclic(ce, "001200"));
  const auto b = WordSource::legal(lang);
  const auto ab = distance(a, b, 21), ba = distance(b, a, 21);
  CHECK(ab.agree_length == ba.agree_length);
  CHECK(ab.witness == ba.witness);
  CHECK(ab.witness_side != ba.witness_side);
}

TEST_CASE("linear repetitivity estimates") {
  struct Case {
    Substitution s;
    double constant;
  };
  for (const auto& [s, constant] : {Case{fixture::fibonacci(), 3.5}, Case{fixture::thue_morse(), 7.0},
                                    Case{fixture::period_doubling(), 6.5}}) {
    Language lang(s);
    const auto est = estimate_repetitivity(lang);
    REQUIRE(est.constant);
    CHECK(*est.constant == constant);
    // Independent check of the windows: every legal m-word contains all legal ℓ-words, some (m−1)-word does not.
    for (std::size_t ell = 1; ell <= 5; ++ell) {
      const auto m = est.minimal_window[ell - 1];
      const auto& shorts = lang.words(ell);
      const auto contains_all = [&](const Word& w) {
        for (const auto& u : shorts)
          if (!w.contains(u)) return false;
        return true;
      };
      for (const auto& w : lang.words(m)) CHECK(contains_all(w));
      bool some_miss = false;
      for (const auto& w : lang.words(m - 1)) some_miss = some_miss || !contains_all(w);
      CHECK(some_miss);
      CHECK(static_cast<double>(m) <= std::ceil(*est.constant * static_cast<double>(ell)));
    }
  }
}

TEST_CASE("repetitivity of the counterexample needs a wide grid") {
  Language lang(fixture::counterexample());
  const auto est = estimate_repetitivity(lang, 4);
  REQUIRE(est.constant);
  CHECK(est.minimal_window == std::vector<std::size_t>{13, 118, 353, 354});
  CHECK(*est.constant == 117.5);  // ⌈117.5·3⌉ = 353
  CHECK_FALSE(estimate_repetitivity(lang, 4, 8.0).constant);
}

TEST_CASE("legal dictionaries are invariant under the substitution") {
  for (const auto& [name, s] : fixture::bundled()) {
    CAPTURE(name);
    Language lang(s);
    for (std::size_t len = 1; len <= 8; ++len)
      for (const auto& w : lang.words(len)) {
        const auto image = s.apply(w);
        for (std::size_t l = 1; l <= std::min<std::size_t>(image.size(), 16); ++l)
          for (const auto& f : subwords(image, l)) CHECK(lang.is_legal(f));
      }
  }
}

TEST_CASE("dictionary agreement is monotone in the length") {
  std::mt19937 rng(23);
  for (const auto& [name, s] : fixture::bundled()) {
    CAPTURE(name);
    Language lang(s);
    const auto legal = WordSource::legal(lang);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(s.size()) - 1);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Letter> v(1 + trial % 3);
      for (auto& l : v) l = static_cast<Letter>(letter(rng));
      CyclicWord cur{Word(v)};
      for (unsigned n = 0; n <= 6; ++n, cur = s.apply(cur)) {
        const auto hull = WordSource::hull(cur);
        bool agreeing = true;
        for (std::size_t len = 1; len <= 25; ++len) {
          const bool equal = hull.dictionary(len).words == legal.dictionary(len).words;
          if (!agreeing) CHECK_FALSE(equal);
          agreeing = agreeing && equal;
        }
      }
    }
  }
}
