#pragma once

// Hand-editable substitution description:
//
//   # comment
//   name: fibonacci
//   alphabet: 0 1
//   seed: 0
//   [rules]
//   0 -> 0 1
//   1 -> 0
//   [potential]
//   0 = 0
//   1 = 1.0
//
// Symbols are whitespace-separated; with single-character symbols words may also be
// written unseparated ("01"). Keys come before the first section. Rules must cover
// the alphabet; a [potential] section, when present, must too.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phull/spectral.hpp"
#include "phull/substitution.hpp"
#include "phull/words.hpp"

namespace phull {

struct SubstitutionSpec {
  std::string name;
  Substitution substitution;
  std::optional<CyclicWord> seed;
  std::optional<PotentialMap> potential;

  const Alphabet& alphabet() const { return substitution.alphabet(); }
};

/// Throws ParseError with the 1-based line and column of the problem.
SubstitutionSpec parse_spec(std::string_view text);
/// Throws InvalidArgument if the file cannot be read.
SubstitutionSpec load_spec(const std::filesystem::path& path);

/// Canonical text that parses back to an equal spec.
std::string format_spec(const SubstitutionSpec& spec);

/// "0=0,1=1.5" against the alphabet; must be total. Throws ParseError (line 1).
PotentialMap parse_potential_list(const Alphabet& alphabet, std::string_view text);

}  // namespace phull
