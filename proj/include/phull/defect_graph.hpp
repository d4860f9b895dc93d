#pragma once

// The defect graph G(S): vertices are all 2-words, with an edge u → w when both
// are illegal and w is a factor of S(u). A seed converges iff no path from one
// of its 2-words reaches a cycle, equivalently iff every such path is shorter
// than |A|².

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phull/dictionary.hpp"
#include "phull/substitution.hpp"
#include "phull/words.hpp"

namespace phull {

using Vertex = std::size_t;

class DefectGraph {
 public:
  DefectGraph(Alphabet alphabet, std::vector<bool> legal, std::vector<std::vector<Vertex>> successors);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t vertex_count() const noexcept { return legal_.size(); }

  Vertex vertex(Letter first, Letter second) const { return first * alphabet_.size() + second; }
  Vertex vertex(const Word& two_word) const;
  Word word(Vertex v) const;

  bool legal(Vertex v) const { return legal_.at(v); }
  const std::vector<Vertex>& successors(Vertex v) const { return successors_.at(v); }
  /// Lexicographic (u, w) order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  Alphabet alphabet_;
  std::vector<bool> legal_;
  std::vector<std::vector<Vertex>> successors_;
};

DefectGraph build_graph(const Substitution& s);
DefectGraph build_graph(Language& language);

/// The 2-words of a seed configuration.
class SeedCensus {
 public:
  enum class Origin { cyclic_word, explicit_set };

  static SeedCensus from_seed(const CyclicWord& seed);
  static SeedCensus from_words(WordSet two_words);

  const WordSet& two_words() const noexcept { return two_words_; }
  Origin origin() const noexcept { return origin_; }
  const std::optional<CyclicWord>& seed() const noexcept { return seed_; }

 private:
  SeedCensus(WordSet words, Origin origin, std::optional<CyclicWord> seed);

  WordSet two_words_;
  Origin origin_;
  std::optional<CyclicWord> seed_;
};

enum class Verdict { good, bad };

struct Classification {
  Verdict verdict = Verdict::good;
  /// bad: a directed path from a census word whose tail path[cycle_start..] is closed.
  std::vector<Vertex> path;
  std::size_t cycle_start = 0;
  /// good: longest directed path from an illegal census word (< |A|²).
  std::size_t max_path_length = 0;
  std::vector<Word> legal_census;
  std::vector<Word> illegal_census;
};

/// Cycle reachability.
Classification classify(const DefectGraph& graph, const SeedCensus& census);

/// The same verdict decided independently from path lengths: bad iff some path of length
/// ≥ |A|² starts at a census word.
Verdict classify_by_path_length(const DefectGraph& graph, const SeedCensus& census);

struct SelfCorrection {
  bool self_correcting = true;
  std::vector<Vertex> cycle;  // closed path (first == last) when not self-correcting
};

SelfCorrection self_correcting(const DefectGraph& graph);

/// Strongly connected components that carry a cycle, each sorted, in order of their
/// smallest vertex.
std::vector<std::vector<Vertex>> cyclic_components(const DefectGraph& graph);

/// Vertices at the end of some directed path of exactly `steps` edges from `sources`.
std::vector<bool> reachable_in_exactly(const DefectGraph& graph, const std::vector<Vertex>& sources,
                                       std::size_t steps);

/// result[m-1] = illegal 2-words of the hull of S^m(seed), for 1 ≤ m ≤ steps.
std::vector<WordSet> defect_paths(Language& language, const CyclicWord& seed, unsigned steps,
                                  std::size_t period_budget);

/// Graphviz export: nodes in lexicographic order with a `legal` attribute, legal nodes filled gray.
std::string to_dot(const DefectGraph& graph, const std::string& name);

}  // namespace phull
