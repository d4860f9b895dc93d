#pragma once

#include <string>
#include <vector>

#include "phull/substitution.hpp"

namespace fixture {

inline phull::Substitution make(const std::vector<std::string>& symbols, const std::vector<std::string>& images) {
  phull::Alphabet alpha(symbols);
  std::vector<phull::Word> words;
  for (const auto& i : images) words.push_back(alpha.parse(i));
  return phull::Substitution(alpha, std::move(words));
}

inline phull::Substitution fibonacci() { return make({"0", "1"}, {"01", "0"}); }
inline phull::Substitution counterexample() { return make({"0", "1", "2"}, {"001", "200", "102"}); }
inline phull::Substitution period_doubling() { return make({"0", "1"}, {"01", "00"}); }
inline phull::Substitution thue_morse() { return make({"0", "1"}, {"01", "10"}); }
inline phull::Substitution grs() { return make({"0", "1", "2", "3"}, {"01", "02", "31", "32"}); }

inline std::vector<std::pair<std::string, phull::Substitution>> bundled() {
  return {{"fibonacci", fibonacci()},
          {"counterexample", counterexample()},
          {"period-doubling", period_doubling()},
          {"thue-morse", thue_morse()},
          {"golay-rudin-shapiro", grs()}};
}

inline phull::CyclicWord cyclic(const phull::Substitution& s, const std::string& text) {
  return phull::CyclicWord(s.alphabet().parse(text));
}

}  // namespace fixture
