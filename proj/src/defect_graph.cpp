#include "phull/defect_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "phull/errors.hpp"

namespace phull {

DefectGraph::DefectGraph(Alphabet alphabet, std::vector<bool> legal, std::vector<std::vector<Vertex>> successors)
    : alphabet_(std::move(alphabet)), legal_(std::move(legal)), successors_(std::move(successors)) {
  const auto n = alphabet_.size() * alphabet_.size();
  if (legal_.size() != n || successors_.size() != n) throw InvalidArgument("defect graph needs |A|² vertices");
  for (Vertex u = 0; u < n; ++u)
    for (Vertex w : successors_[u])
      if (w >= n || legal_[u] || legal_[w]) throw InvalidArgument("defect graph edges must join illegal 2-words");
}

Vertex DefectGraph::vertex(const Word& two_word) const {
  if (two_word.size() != 2) throw InvalidArgument("defect graph vertices are 2-words");
  if (two_word[0] >= alphabet_.size() || two_word[1] >= alphabet_.size())
    throw InvalidArgument("2-word letter outside the alphabet");
  return vertex(two_word[0], two_word[1]);
}

Word DefectGraph::word(Vertex v) const {
  const auto s = alphabet_.size();
  return Word{static_cast<Letter>(v / s), static_cast<Letter>(v % s)};
}

std::vector<std::pair<Vertex, Vertex>> DefectGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex w : successors_[u]) out.emplace_back(u, w);
  return out;
}

DefectGraph build_graph(Language& language) {
  const auto& s = language.substitution();
  const auto& legal_two = language.words(2);
  const auto alpha = s.size();
  const auto n = alpha * alpha;
  std::vector<bool> legal(n);
  std::vector<std::vector<Vertex>> succ(n);
  for (Vertex v = 0; v < n; ++v)
    legal[v] = legal_two.contains(Word{static_cast<Letter>(v / alpha), static_cast<Letter>(v % alpha)});
  for (Vertex u = 0; u < n; ++u) {
    if (legal[u]) continue;
    const Word image = s.apply(Word{static_cast<Letter>(u / alpha), static_cast<Letter>(u % alpha)});
    for (const auto& f : subwords(image, 2)) {
      const Vertex w = f[0] * alpha + f[1];
      if (!legal[w]) succ[u].push_back(w);  // subwords() is sorted, so successors are too
    }
  }
  return DefectGraph(s.alphabet(), std::move(legal), std::move(succ));
}

DefectGraph build_graph(const Substitution& s) {
  Language lang(s);
  return build_graph(lang);
}

SeedCensus::SeedCensus(WordSet words, Origin origin, std::optional<CyclicWord> seed)
    : two_words_(std::move(words)), origin_(origin), seed_(std::move(seed)) {
  if (two_words_.empty()) throw InvalidArgument("seed census must not be empty");
  for (const auto& w : two_words_)
    if (w.size() != 2) throw InvalidArgument("seed census entries must be 2-words");
}

SeedCensus SeedCensus::from_seed(const CyclicWord& seed) {
  return SeedCensus(cyclic_subwords(seed, 2), Origin::cyclic_word, seed);
}

SeedCensus SeedCensus::from_words(WordSet two_words) {
  return SeedCensus(std::move(two_words), Origin::explicit_set, std::nullopt);
}

namespace {

std::vector<Vertex> illegal_sources(const DefectGraph& g, const SeedCensus& census) {
  std::vector<Vertex> out;
  for (const auto& w : census.two_words()) {
    const Vertex v = g.vertex(w);
    if (!g.legal(v)) out.push_back(v);
  }
  return out;
}

// Shortest path from any source to the first vertex satisfying `stop`; empty if none.
std::vector<Vertex> bfs_path(const DefectGraph& g, const std::vector<Vertex>& sources,
                             const std::function<bool(Vertex)>& stop) {
  const auto n = g.vertex_count();
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue;
  for (Vertex s : sources)
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (stop(v)) {
      std::vector<Vertex> path{v};
      for (Vertex p = parent[v]; p != kNone; p = parent[p]) path.push_back(p);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex w : g.successors(v))
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return {};
}

// Shortest closed path v → … → v, or empty.
std::vector<Vertex> shortest_cycle_through(const DefectGraph& g, Vertex v) {
  auto back = bfs_path(g, g.successors(v), [v](Vertex w) { return w == v; });
  if (back.empty()) return {};
  back.insert(back.begin(), v);
  return back;
}

std::vector<bool> on_cycle(const DefectGraph& g) {
  std::vector<bool> out(g.vertex_count(), false);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!g.successors(v).empty()) out[v] = !shortest_cycle_through(g, v).empty();
  return out;
}

}  // namespace

Classification classify(const DefectGraph& graph, const SeedCensus& census) {
  Classification out;
  for (const auto& w : census.two_words()) {
    if (graph.legal(graph.vertex(w)))
      out.legal_census.push_back(w);
    else
      out.illegal_census.push_back(w);
  }
  const auto sources = illegal_sources(graph, census);
  const auto cyclic = on_cycle(graph);

  auto lead = bfs_path(graph, sources, [&](Vertex v) { return cyclic[v]; });
  if (!lead.empty()) {
    out.verdict = Verdict::bad;
    const auto cycle = shortest_cycle_through(graph, lead.back());
    out.cycle_start = lead.size() - 1;
    out.path = std::move(lead);
    out.path.insert(out.path.end(), cycle.begin() + 1, cycle.end());
    return out;
  }

  // Reachable subgraph is acyclic: longest path by memoized DFS.
  std::vector<std::optional<std::size_t>> longest(graph.vertex_count());
  std::function<std::size_t(Vertex)> depth = [&](Vertex v) -> std::size_t {
    if (longest[v]) return *longest[v];
    std::size_t best = 0;
    for (Vertex w : graph.successors(v)) best = std::max(best, 1 + depth(w));
    longest[v] = best;
    return best;
  };
  out.verdict = Verdict::good;
  for (Vertex s : sources) out.max_path_length = std::max(out.max_path_length, depth(s));
  return out;
}

Verdict classify_by_path_length(const DefectGraph& graph, const SeedCensus& census) {
  const auto n = graph.vertex_count();
  std::vector<bool> layer(n, false);
  for (Vertex s : illegal_sources(graph, census)) layer[s] = true;
  // layer k = endpoints of length-k paths; a length-|A|² path exists iff layer |A|² is non-empty.
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<bool> next(n, false);
    bool any = false;
    for (Vertex v = 0; v < n; ++v)
      if (layer[v])
        for (Vertex w : graph.successors(v)) any = next[w] = true;
    if (!any) return Verdict::good;
    layer = std::move(next);
  }
  return Verdict::bad;
}

SelfCorrection self_correcting(const DefectGraph& graph) {
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (graph.successors(v).empty()) continue;
    auto cycle = shortest_cycle_through(graph, v);
    if (!cycle.empty()) return SelfCorrection{false, std::move(cycle)};
  }
  return SelfCorrection{};
}

std::vector<std::vector<Vertex>> cyclic_components(const DefectGraph& graph) {
  // Tarjan, iterative.
  const auto n = graph.vertex_count();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> out;
  std::size_t counter = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<std::pair<Vertex, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto& succ = graph.successors(v);
      if (next < succ.size()) {
        const Vertex w = succ[next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<Vertex> comp;
      Vertex w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != done);
      const auto& ds = graph.successors(done);
      const bool self_loop = std::find(ds.begin(), ds.end(), done) != ds.end();
      if (comp.size() > 1 || self_loop) {
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> reachable_in_exactly(const DefectGraph& graph, const std::vector<Vertex>& sources,
                                       std::size_t steps) {
  const auto n = graph.vertex_count();
  std::vector<bool> layer(n, false);
  for (Vertex s : sources) layer.at(s) = true;
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<bool> next(n, false);
    for (Vertex v = 0; v < n; ++v)
      if (layer[v])
        for (Vertex w : graph.successors(v)) next[w] = true;
    layer = std::move(next);
  }
  return layer;
}

std::vector<WordSet> defect_paths(Language& language, const CyclicWord& seed, unsigned steps,
                                  std::size_t period_budget) {
  const auto& s = language.substitution();
  const auto& legal_two = language.words(2);
  std::vector<WordSet> out;
  CyclicWord cur = seed;
  for (unsigned m = 1; m <= steps; ++m) {
    cur = s.apply(cur);
    if (cur.length() > period_budget)
      throw ResourceError("period length " + std::to_string(cur.length()) + " at step " + std::to_string(m) +
                          " exceeds the budget");
    WordSet illegal;
    for (auto& w : cyclic_subwords(cur, 2))
      if (!legal_two.contains(w)) illegal.insert(w);
    out.push_back(std::move(illegal));
  }
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const DefectGraph& graph, const std::string& name) {
  const auto& alpha = graph.alphabet();
  std::string out = "digraph " + dot_quote(name) + " {\n";
  out += "  node [shape=circle, style=filled, fillcolor=white];\n";
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    const auto label = dot_quote(alpha.render(graph.word(v)));
    out += "  " + label + " [label=" + label + ", legal=" + (graph.legal(v) ? "true" : "false");
    if (graph.legal(v)) out += ", fillcolor=gray";
    out += "];\n";
  }
  for (auto [u, w] : graph.edges())
    out += "  " + dot_quote(alpha.render(graph.word(u))) + " -> " + dot_quote(alpha.render(graph.word(w))) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace phull
