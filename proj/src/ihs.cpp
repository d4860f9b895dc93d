#include "phull/ihs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phull/errors.hpp"

namespace phull {

std::vector<std::size_t> IhsRun::informative_steps() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const auto cur = steps[i].distance.agree_length;
    if (cur > steps[i - 1].distance.agree_length && cur < options.max_length) out.push_back(i);
  }
  return out;
}

CyclicWord step_word(const Substitution& s, const CyclicWord& seed, unsigned n) {
  CyclicWord cur = seed;
  for (unsigned k = 0; k < n; ++k) cur = s.apply(cur);
  return cur;
}

namespace {

std::size_t image_length(const Substitution& s, const Word& w) {
  std::size_t total = 0;
  for (Letter l : w.letters()) total += s.image(l).size();
  return total;
}

}  // namespace

IhsRun run(Language& language, const CyclicWord& seed, const IhsOptions& options) {
  if (options.max_length == 0 || options.max_length % 2 == 0)
    throw InvalidArgument("IHS scan length must be a positive odd integer");
  const auto& s = language.substitution();
  for (Letter l : seed.period().letters())
    if (l >= s.size()) throw InvalidArgument("seed letter outside the alphabet");

  IhsRun out{s, seed, options, {}, std::nullopt, false};
  const auto legal = WordSource::legal(language);
  const auto& legal_two = language.words(2);
  CyclicWord cur = seed;
  for (unsigned n = 0; n <= options.max_steps; ++n) {
    if (n > 0) {
      if (image_length(s, cur.period()) > options.period_budget) {
        out.truncated = true;
        break;
      }
      cur = s.apply(cur);
    }
    IhsStep step;
    step.n = n;
    step.period_length = cur.length();
    step.distance = distance(WordSource::hull(cur, language.word_budget()), legal, options.max_length);
    for (const auto& w : cyclic_subwords(cur, 2))
      if (!legal_two.contains(w)) ++step.illegal_two_words;
    out.truncated = out.truncated || step.distance.truncated;
    out.steps.push_back(std::move(step));
  }

  const auto informative = out.informative_steps();
  if (informative.size() >= 3) {
    std::vector<double> x, y;
    for (auto i : informative) {
      x.push_back(static_cast<double>(out.steps[i].n));
      y.push_back(std::log(out.steps[i].distance.upper_bound));
    }
    out.rate_fit = fit_line(x, y);
  }
  return out;
}

double RateBounds::n1(double r) const {
  if (!repetitivity.constant) return std::numeric_limits<double>::infinity();
  const double lt = std::log(perron.theta);
  return std::log(r) / lt + (std::log(*repetitivity.constant) - std::log(perron.c_check)) / lt;
}

double RateBounds::n2(double r) const {
  const double lt = std::log(perron.theta);
  return std::log(r) / lt - std::log(2.0 * perron.c_check) / lt + static_cast<double>(alphabet_size * alphabet_size);
}

RateBounds bounds(const Substitution& s, const PerronData& perron, const RepetitivityEstimate& repetitivity) {
  if (!(perron.theta > 1.0)) throw InvalidArgument("rate bounds need a PF eigenvalue above 1");
  if (!(perron.c_check > 0)) throw InvalidArgument("rate bounds need a positive lower growth constant");
  return RateBounds{perron, repetitivity, s.size()};
}

std::size_t BoundsReport::violations() const {
  std::size_t v = 0;
  for (const auto& c : checks) v += c.violated();
  return v;
}

BoundsReport check_bounds(const IhsRun& run, Language& language, const RateBounds& bounds,
                          std::span<const std::size_t> r_list, Verdict seed_verdict) {
  BoundsReport rep;
  rep.seed_verdict = seed_verdict;
  const auto& s = language.substitution();
  CyclicWord cur = run.seed;
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const unsigned n = run.steps[i].n;
    if (i > 0) cur = s.apply(cur);
    for (auto r : r_list) {
      InclusionCheck c;
      c.r = r;
      c.n = n;
      const auto hull = cyclic_subwords(cur, r);
      const auto& legal = language.words(r);
      c.superset_applies = static_cast<double>(n) >= std::ceil(bounds.n1(static_cast<double>(r)));
      c.superset_holds = std::includes(hull.begin(), hull.end(), legal.begin(), legal.end());
      c.subset_applies =
          seed_verdict == Verdict::good && static_cast<double>(n) > std::ceil(bounds.n2(static_cast<double>(r)));
      c.subset_holds = std::includes(legal.begin(), legal.end(), hull.begin(), hull.end());
      rep.checks.push_back(c);
    }
  }
  return rep;
}

std::vector<ComplexityCapRow> complexity_cap(const IhsRun& run, const PerronData& perron) {
  std::vector<ComplexityCapRow> rows;
  const auto seed_len = static_cast<double>(run.seed.length());
  CyclicWord cur = run.seed;
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    if (i > 0) cur = run.substitution.apply(cur);
    const unsigned n = run.steps[i].n;
    const double cap = perron.c_hat * std::pow(perron.theta, n) * seed_len;
    for (std::size_t r = 1; r <= run.options.max_length; r += 2)
      rows.push_back(ComplexityCapRow{n, r, complexity(cur, r), cur.length(), cap});
  }
  return rows;
}

}  // namespace phull
