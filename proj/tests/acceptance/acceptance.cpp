// Acceptance criteria: one PASS/FAIL line each, with the measured values. Exit status is
// the number of failing criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <fmt/format.h>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "phull/defect_graph.hpp"
#include "phull/ihs.hpp"
#include "phull/spectral.hpp"

using namespace phull;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

// Tolerances and limits
constexpr double kThetaTol = 1e-9;
constexpr double kRateBand = 0.15;      // IHS slope within ±15% of −log θ
constexpr double kSpectralBand = 0.25;  // spectral slope within ±25%
constexpr double kBandTol = 1e-9;
constexpr double kOracleTol = 2e-3;
constexpr double kGridStep = 1e-3;

WordSet words_of(const Substitution& s, std::initializer_list<const char*> ws) {
  WordSet out;
  for (const char* w : ws) out.insert(s.alphabet().parse(w));
  return out;
}

Outcome two_words() {
  Outcome o;
  const auto fib = fixture::fibonacci(), ce = fixture::counterexample(), tm = fixture::thue_morse();
  o.require(legal_words(fib, 2).words == words_of(fib, {"00", "01", "10"}), "Fibonacci legal");
  o.require(illegal_words(fib, 2) == words_of(fib, {"11"}), "Fibonacci illegal");
  o.require(legal_words(ce, 2).words == words_of(ce, {"00", "01", "02", "10", "11", "12", "20"}), "CE legal");
  o.require(illegal_words(ce, 2) == words_of(ce, {"21", "22"}), "CE illegal");
  o.require(illegal_words(tm, 2).empty() && legal_words(tm, 2).words.size() == 4, "Thue-Morse all legal");
  return o;
}

Outcome pf_values() {
  Outcome o;
  const double fib = perron(fixture::fibonacci()).theta, ce = perron(fixture::counterexample()).theta;
  const double golden = (1 + std::sqrt(5.0)) / 2;
  o.note(fmt::format("Fibonacci err {:.2e}, CE err {:.2e}", std::abs(fib - golden), std::abs(ce - 3)));
  o.require(std::abs(fib - golden) <= kThetaTol, "Fibonacci theta");
  o.require(std::abs(ce - 3) <= kThetaTol, "CE theta");
  return o;
}

Outcome verdicts() {
  Outcome o;
  const auto ce = fixture::counterexample();
  const auto g = build_graph(ce);
  const auto bad = classify(g, SeedCensus::from_seed(fixture::cyclic(ce, "2")));
  bool in_cycle = bad.verdict == Verdict::bad && !bad.path.empty();
  for (std::size_t i = bad.cycle_start; i < bad.path.size(); ++i) {
    const auto w = g.word(bad.path[i]);
    in_cycle = in_cycle && (w == Word{2, 1} || w == Word{2, 2});
  }
  o.require(in_cycle, "CE seed 2 bad with cycle in {21,22}");
  o.require(classify(g, SeedCensus::from_seed(fixture::cyclic(ce, "0"))).verdict == Verdict::good, "CE seed 0 good");
  o.require(!self_correcting(g).self_correcting, "CE not self-correcting");

  for (const auto& [name, s] : fixture::bundled()) {
    if (name == "counterexample") continue;
    const auto gs = build_graph(s);
    o.require(self_correcting(gs).self_correcting, name + " self-correcting");
    // A self-correcting graph has no cycle, so every census is good; spot-check all 2-words.
    for (Vertex v = 0; v < gs.vertex_count(); ++v)
      o.require(classify(gs, SeedCensus::from_words(WordSet{gs.word(v)})).verdict == Verdict::good,
                name + " seed " + s.alphabet().render(gs.word(v)));
  }
  return o;
}

Outcome verdict_consistency() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  const auto check = [&](const Substitution& s) {
    const auto g = build_graph(s);
    const auto k = static_cast<Letter>(s.size());
    for (Letter a = 0; a < k; ++a)
      for (Letter b = 0; b < k; ++b) {
        const auto census = SeedCensus::from_seed(CyclicWord(a == b ? Word{a} : Word{a, b}));
        const auto v = classify(g, census).verdict;
        o.require(v == classify_by_path_length(g, census), "disagreement");
        bad += v == Verdict::bad;
        ++checked;
      }
  };
  for (const auto& [name, s] : fixture::bundled()) check(s);
  std::mt19937 rng(20240601);
  for (int i = 0; i < 240; ++i) check(oracle::random_primitive(rng, 1 + i % 3, 4));
  o.note(fmt::format("{} rules, {} censuses, {} bad", 5 + 240, checked, bad));
  return o;
}

Outcome path_correspondence() {
  Outcome o;
  Language lang(fixture::counterexample());
  const auto g = build_graph(lang);
  const auto seed = fixture::cyclic(lang.substitution(), "2");
  std::vector<Vertex> sources;
  for (const auto& w : cyclic_subwords(seed, 2))
    if (!g.legal(g.vertex(w))) sources.push_back(g.vertex(w));
  const auto steps = defect_paths(lang, seed, 8, 10'000'000);
  for (unsigned n = 1; n <= steps.size(); ++n) {
    const auto reach = reachable_in_exactly(g, sources, n);
    for (const auto& w : steps[n - 1])
      o.require(reach[g.vertex(w)], fmt::format("n={} word {}", n, lang.alphabet().render(w)));
    o.require(!steps[n - 1].empty(), fmt::format("n={} has no illegal 2-word", n));
  }
  return o;
}

Outcome rate_law() {
  Outcome o;
  for (const auto& [name, s] : {std::pair{"fibonacci", fixture::fibonacci()}, std::pair{"thue-morse", fixture::thue_morse()},
                                std::pair{"period-doubling", fixture::period_doubling()}}) {
    Language lang(s);
    const auto run = phull::run(lang, CyclicWord(Word{0}), IhsOptions{10, 41, 10'000'000});
    const double target = -std::log(perron(s).theta);
    if (!run.rate_fit) {
      o.require(false, std::string(name) + " no fit");
      continue;
    }
    const double ratio = run.rate_fit->slope / target;
    o.note(fmt::format("{} slope {:.4f} vs {:.4f} (ratio {:.3f}, {} points)", name, run.rate_fit->slope, target, ratio,
                       run.rate_fit->points));
    o.require(std::abs(ratio - 1) <= kRateBand, std::string(name) + " outside ±15%");
  }
  return o;
}

Outcome bad_seed_divergence() {
  Outcome o;
  Language lang(fixture::counterexample());
  const auto run = phull::run(lang, fixture::cyclic(lang.substitution(), "2"), IhsOptions{8, 41, 10'000'000});
  double lowest = 1;
  for (const auto& st : run.steps) {
    lowest = std::min(lowest, st.distance.upper_bound);
    o.require(st.distance.agree_length < 3, fmt::format("n={} agreement {}", st.n, st.distance.agree_length));
  }
  o.note(fmt::format("smallest bound {:.4f} over n <= 8", lowest));
  o.require(lowest >= 1.0 / 3, "bound dropped below 1/3");
  return o;
}

Outcome closure_oracle() {
  Outcome o;
  for (const auto& [name, s] : fixture::bundled())
    for (std::size_t len = 1; len <= 6; ++len)
      o.require(oracle::to_int_set(legal_words(s, len).words) == oracle::stabilized_factors(s, len),
                fmt::format("{} length {}", name, len));
  return o;
}

Outcome complexity_caps() {
  Outcome o;
  Language fib(fixture::fibonacci()), ce(fixture::counterexample());
  for (std::size_t r = 1; r <= 12; ++r) {
    o.require(complexity(fib, r) == r + 1, fmt::format("Fibonacci c({}) = {}", r, complexity(fib, r)));
    o.require(complexity(ce, r) >= r + 1, fmt::format("CE c({}) = {}", r, complexity(ce, r)));
  }
  std::size_t rows = 0;
  for (auto* lang : {&fib, &ce})
    for (const char* seed : {"0", "1"}) {
      const auto& s = lang->substitution();
      const auto run = phull::run(*lang, fixture::cyclic(s, seed), IhsOptions{8, 41, 10'000'000});
      for (const auto& row : complexity_cap(run, perron(s))) {
        o.require(row.within_period(), fmt::format("step {} r {}", row.n, row.r));
        ++rows;
      }
    }
  {
    const auto& s = ce.substitution();
    const auto run = phull::run(ce, fixture::cyclic(s, "2"), IhsOptions{8, 41, 10'000'000});
    for (const auto& row : complexity_cap(run, perron(s))) {
      o.require(row.within_period(), fmt::format("CE seed 2 step {} r {}", row.n, row.r));
      ++rows;
    }
  }
  o.note(fmt::format("{} hull rows checked", rows));
  return o;
}

Outcome spectral_bands() {
  Outcome o;
  double worst_free = 0, worst_shift = 0, worst_oracle = 0;
  for (std::size_t p : {1u, 2u, 3u, 5u, 8u, 13u, 64u}) {
    const auto b = bands(std::vector<double>(p, 0.0));
    o.require(b.intervals.size() == 1, fmt::format("V=0 p={} not one band", p));
    worst_free = std::max({worst_free, std::abs(b.intervals.front().lo + 2), std::abs(b.intervals.back().hi - 2)});
  }
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (std::size_t p : {1u, 2u, 4u, 9u, 30u}) {
    std::vector<double> v(p);
    for (auto& x : v) x = u(rng);
    auto w = v;
    for (auto& x : w) x += 1.25;
    const auto a = bands(v), b = bands(w);
    o.require(a.intervals.size() == b.intervals.size(), "shift changed band count");
    for (std::size_t i = 0; i < std::min(a.intervals.size(), b.intervals.size()); ++i)
      worst_shift = std::max({worst_shift, std::abs(b.intervals[i].lo - a.intervals[i].lo - 1.25),
                              std::abs(b.intervals[i].hi - a.intervals[i].hi - 1.25)});
  }
  for (std::size_t p = 1; p <= 4; ++p)
    for (int t = 0; t < 5; ++t) {
      std::vector<double> v(p);
      for (auto& x : v) x = u(rng);
      const auto grid = oracle::grid_bands(v, -6, 6, kGridStep);
      worst_oracle = std::max(worst_oracle, hausdorff_distance(grid, bands(v).intervals));
    }
  o.note(fmt::format("free {:.1e}, shift {:.1e}, transfer-matrix {:.1e}", worst_free, worst_shift, worst_oracle));
  o.require(worst_free <= kBandTol, "free band");
  o.require(worst_shift <= kBandTol, "shift covariance");
  o.require(worst_oracle <= kOracleTol, "transfer-matrix oracle");
  return o;
}

Outcome spectral_rate() {
  Outcome o;
  const auto fib = fixture::fibonacci();
  const auto run = spectral_run(fib, fixture::cyclic(fib, "0"), PotentialMap({0.0, 1.0}), SpectralOptions{10});
  if (!run.rate_fit) {
    o.require(false, "no fit");
    return o;
  }
  const double target = -std::log(perron(fib).theta);
  const double ratio = run.rate_fit->slope / target;
  o.note(fmt::format("slope {:.4f} vs {:.4f} (ratio {:.3f}, {} increments)", run.rate_fit->slope, target, ratio,
                     run.rate_fit->points));
  o.require(std::abs(ratio - 1) <= kSpectralBand, "outside ±25%");
  return o;
}

Outcome inclusions() {
  Outcome o;
  std::size_t applied = 0, runs = 0;
  const std::size_t rs[] = {2, 3, 5};
  for (const auto& [name, s] : fixture::bundled()) {
    Language lang(s);
    const auto g = build_graph(lang);
    const auto b = bounds(s, perron(s), estimate_repetitivity(lang));
    for (Letter a = 0; a < s.size(); ++a) {
      const CyclicWord seed(Word{a});
      const auto verdict = classify(g, SeedCensus::from_seed(seed)).verdict;
      if (verdict != Verdict::good) continue;
      const auto run = phull::run(lang, seed, IhsOptions{10, 41, 10'000'000});
      const auto report = check_bounds(run, lang, b, rs, verdict);
      for (const auto& c : report.checks) {
        applied += c.superset_applies + c.subset_applies;
        if (c.violated())
          o.require(false, fmt::format("{} seed {} n={} r={}", name, s.alphabet().symbol(a), c.n, c.r));
      }
      ++runs;
    }
  }
  o.note(fmt::format("{} good runs, {} applicable inclusions", runs, applied));
  o.require(applied > 0, "no inclusion applied");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "legal and illegal 2-words", 1, two_words},
      {2, "PF eigenvalues", 1, pf_values},
      {3, "seed verdicts and self-correction", 1, verdicts},
      {4, "cycle and path-length verdicts agree", 30, verdict_consistency},
      {5, "defect path correspondence", 10, path_correspondence},
      {6, "distance-bound rate law", 60, rate_law},
      {7, "bad-seed divergence", 10, bad_seed_divergence},
      {8, "dictionary closure oracle", 30, closure_oracle},
      {9, "complexity bounds and caps", 30, complexity_caps},
      {10, "spectral bands", 30, spectral_bands},
      {11, "spectral Cauchy rate", 120, spectral_rate},
      {12, "inclusion bounds", 60, inclusions},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.limit_s, fmt::format("took longer than {} s", c.limit_s));
    failures += !o.pass;
    std::cout << fmt::format("{} criterion {:>2}: {} ({:.2f} s){}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                             o.detail.empty() ? "" : " | " + o.detail);
  }
  return failures;
}
