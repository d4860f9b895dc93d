#include "phull/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "phull/errors.hpp"
#include "phull/simd/kernels.hpp"

namespace phull {

PotentialMap::PotentialMap(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("potential map must not be empty");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("potential values must be finite");
}

std::vector<double> PotentialMap::along(const Word& period) const {
  std::vector<double> out;
  out.reserve(period.size());
  for (Letter l : period.letters()) {
    if (l >= values_.size()) throw InvalidArgument("potential map has no value for a letter of the word");
    out.push_back(values_[l]);
  }
  return out;
}

double SpectralBands::total_bandwidth() const {
  double total = 0;
  for (const auto& i : intervals) total += i.length();
  return total;
}

namespace {

std::string dump(std::span<const double> v, std::size_t limit = 32) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out += fmt::format("{}{:.17g}", i ? ", " : "", v[i]);
  if (v.size() > limit) out += fmt::format(", … ({} entries)", v.size());
  return out + "]";
}

double scale_of(std::span<const double> potential) {
  double m = 0;
  for (double v : potential) m = std::max(m, std::fabs(v));
  return m + 2.0;
}

// Edges closer than this are treated as touching; covers the bisection width and the
// rounding of the band reduction.
double gap_tolerance(double tol, double scale) { return 4.0 * tol + 256.0 * DBL_EPSILON * scale; }

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> off, double tol) {
  const std::size_t n = diag.size();
  if (n == 0) throw InvalidArgument("empty matrix");
  if (off.size() + 1 != n) throw InvalidArgument("off-diagonal must have one entry fewer than the diagonal");
  if (!(tol > 0)) throw InvalidArgument("eigensolver tolerance must be positive");

  std::vector<double> off_sq(n - 1);
  double max_sq = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    off_sq[k] = off[k] * off[k];
    max_sq = std::max(max_sq, off_sq[k]);
  }
  const double pivmin = DBL_MIN * std::max(1.0, max_sq);

  double glo = std::numeric_limits<double>::infinity(), ghi = -glo;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = (k > 0 ? std::fabs(off[k - 1]) : 0.0) + (k + 1 < n ? std::fabs(off[k]) : 0.0);
    glo = std::min(glo, diag[k] - r);
    ghi = std::max(ghi, diag[k] + r);
  }
  if (!std::isfinite(glo) || !std::isfinite(ghi))
    throw NumericError("non-finite matrix entries: diagonal " + dump(diag) + ", off-diagonal " + dump(off));
  const double pad = 2.0 * tol + 8.0 * DBL_EPSILON * std::max(std::fabs(glo), std::fabs(ghi)) + 2.0 * pivmin;
  glo -= pad;
  ghi += pad;

  // Uniform grid pass: one batched count gives every eigenvalue a starting bracket.
  const std::size_t grid = n + 1;
  std::vector<double> shifts(grid + 1);
  std::vector<std::uint32_t> counts(grid + 1);
  for (std::size_t g = 0; g <= grid; ++g)
    shifts[g] = g == grid ? ghi : glo + (ghi - glo) * static_cast<double>(g) / static_cast<double>(grid);
  simd::sturm_count(diag, off_sq, pivmin, shifts, counts);
  if (counts.front() != 0 || counts.back() != n)
    throw NumericError("Sturm counts inconsistent with the Gershgorin bounds: diagonal " + dump(diag) +
                       ", off-diagonal " + dump(off));

  std::vector<double> lo(n), hi(n);
  {
    std::size_t g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (counts[g + 1] <= i) ++g;  // counts[g] ≤ i < counts[g+1]
      lo[i] = shifts[g];
      hi[i] = shifts[g + 1];
    }
  }

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  const auto converged = [&](std::size_t i) {
    const double mid = 0.5 * (lo[i] + hi[i]);
    const double width = hi[i] - lo[i];
    return width <= std::max(tol, 4.0 * DBL_EPSILON * std::max(std::fabs(lo[i]), std::fabs(hi[i]))) ||
           mid <= lo[i] || mid >= hi[i];
  };
  for (int iter = 0; iter < 200; ++iter) {
    std::erase_if(active, converged);
    if (active.empty()) break;
    shifts.resize(active.size());
    counts.resize(active.size());
    for (std::size_t j = 0; j < active.size(); ++j) shifts[j] = 0.5 * (lo[active[j]] + hi[active[j]]);
    simd::sturm_count(diag, off_sq, pivmin, shifts, counts);
    for (std::size_t j = 0; j < active.size(); ++j) {
      const std::size_t i = active[j];
      (counts[j] > i ? hi[i] : lo[i]) = shifts[j];
    }
  }
  if (!active.empty())
    throw NumericError("bisection did not converge: diagonal " + dump(diag) + ", off-diagonal " + dump(off));

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (lo[i] + hi[i]);
  return out;
}

std::vector<double> floquet_eigenvalues(std::span<const double> potential, FloquetPhase phase, double tol) {
  const std::size_t p = potential.size();
  if (p == 0) throw InvalidArgument("potential period must be at least 1");
  if (!(tol > 0)) throw InvalidArgument("eigensolver tolerance must be positive");
  // cos θ: the corner entry is −e^{iθ}.
  const double c = phase == FloquetPhase::periodic ? 1.0 : -1.0;

  if (p == 1) return {potential[0] - 2.0 * c};
  if (p == 2) {
    const double b = -1.0 - c;
    const double m = 0.5 * (potential[0] + potential[1]);
    const double r = std::hypot(0.5 * (potential[0] - potential[1]), b);
    return {m - r, m + r};
  }

  // Zig-zag ordering 0, p−1, 1, p−2, … puts every ring neighbour within distance 2,
  // so the cyclic matrix becomes a band matrix with two superdiagonals.
  std::vector<std::size_t> pos(p);
  for (std::size_t j = 0; j < p; ++j) pos[j % 2 == 0 ? j / 2 : p - 1 - (j - 1) / 2] = j;
  constexpr lapack_int kd = 2, ldab = kd + 1;
  std::vector<double> ab(ldab * p, 0.0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& {
    if (i > j) std::swap(i, j);
    return ab[kd + i - j + j * ldab];
  };
  for (std::size_t s = 0; s < p; ++s) at(pos[s], pos[s]) = potential[s];
  for (std::size_t s = 0; s + 1 < p; ++s) at(pos[s], pos[s + 1]) = -1.0;
  at(pos[0], pos[p - 1]) = -c;

  std::vector<double> d(p), e(p - 1);
  double q = 0;
  const lapack_int info = LAPACKE_dsbtrd(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(p), kd, ab.data(),
                                         ldab, d.data(), e.data(), &q, 1);
  if (info != 0)
    throw NumericError(fmt::format("band reduction failed (info {}) for potential {}", info, dump(potential)));
  return tridiagonal_eigenvalues(d, e, tol);
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals, double gap_tol) {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  for (const auto& i : intervals) {
    if (i.lo > i.hi) throw InvalidArgument("interval with lo > hi");
    if (!out.empty() && i.lo - out.back().hi <= gap_tol)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

SpectralBands bands(std::span<const double> potential, double tol) {
  const std::size_t p = potential.size();
  SpectralBands out;
  out.period = p;
  out.periodic = floquet_eigenvalues(potential, FloquetPhase::periodic, tol);
  out.antiperiodic = floquet_eigenvalues(potential, FloquetPhase::antiperiodic, tol);

  std::vector<double> edges(out.periodic);
  edges.insert(edges.end(), out.antiperiodic.begin(), out.antiperiodic.end());
  std::sort(edges.begin(), edges.end());
  const double gap_tol = gap_tolerance(tol, scale_of(potential));

  // Below every open gap after band k there must be exactly k+1 eigenvalues of each phase.
  std::vector<Interval> raw(p);
  for (std::size_t k = 0; k < p; ++k) raw[k] = Interval{edges[2 * k], edges[2 * k + 1]};
  for (std::size_t k = 0; k + 1 < p; ++k) {
    if (raw[k + 1].lo - raw[k].hi <= gap_tol) continue;
    const double mid = 0.5 * (raw[k].hi + raw[k + 1].lo);
    const auto below = [mid](const std::vector<double>& v) {
      return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), mid) - v.begin());
    };
    if (below(out.periodic) != k + 1 || below(out.antiperiodic) != k + 1)
      throw NumericError(fmt::format("periodic and antiperiodic eigenvalues do not interlace at gap {}: "
                                     "periodic {}, antiperiodic {}, potential {}",
                                     k, dump(out.periodic), dump(out.antiperiodic), dump(potential)));
  }
  out.intervals = merge_intervals(std::move(raw), gap_tol);
  return out;
}

SpectralBands bands(const CyclicWord& word, const PotentialMap& potential, double tol) {
  const auto v = potential.along(word.period());
  return bands(std::span<const double>(v), tol);
}

namespace {

// Distance from x to a sorted disjoint union.
double distance_to(double x, std::span<const Interval> set) {
  auto it = std::lower_bound(set.begin(), set.end(), x, [](const Interval& i, double v) { return i.hi < v; });
  double best = std::numeric_limits<double>::infinity();
  if (it != set.end()) best = std::max(0.0, it->lo - x);
  if (it != set.begin()) best = std::min(best, x - std::prev(it)->hi);
  return best;
}

// sup over a ∈ A of dist(a, B). On each interval of A the distance to B is piecewise
// linear with local maxima only at A's endpoints and at midpoints of B's gaps.
double directed(std::span<const Interval> a, std::span<const Interval> b) {
  double best = 0;
  for (const auto& i : a) {
    best = std::max({best, distance_to(i.lo, b), distance_to(i.hi, b)});
    for (std::size_t g = 0; g + 1 < b.size(); ++g) {
      const double mid = 0.5 * (b[g].hi + b[g + 1].lo);
      if (mid > i.lo && mid < i.hi) best = std::max(best, distance_to(mid, b));
    }
  }
  return best;
}

}  // namespace

double hausdorff_distance(std::span<const Interval> a, std::span<const Interval> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("Hausdorff distance needs non-empty sets");
  const auto ma = merge_intervals({a.begin(), a.end()});
  const auto mb = merge_intervals({b.begin(), b.end()});
  return std::max(directed(ma, mb), directed(mb, ma));
}

double spectral_distance(const SpectralBands& a, const SpectralBands& b) {
  return hausdorff_distance(a.intervals, b.intervals);
}

std::vector<double> discriminant(std::span<const double> potential, std::span<const double> energies) {
  std::vector<double> out(energies.size());
  simd::discriminant(potential, energies, out);
  return out;
}

SpectralRun spectral_run(const Substitution& s, const CyclicWord& seed, const PotentialMap& potential,
                         const SpectralOptions& options) {
  if (!is_primitive(s)) throw InvalidArgument("spectral run needs a primitive substitution");
  if (potential.size() != s.size()) throw InvalidArgument("potential map must cover the alphabet exactly");
  if (seed.length() > options.period_cap)
    throw ResourceError(fmt::format("seed period {} exceeds the cap {}", seed.length(), options.period_cap));

  SpectralRun out{s, seed, potential, options, {}, std::nullopt, false};
  CyclicWord cur = seed;
  for (unsigned n = 0; n <= options.max_steps; ++n) {
    if (n > 0) {
      std::size_t next = 0;
      for (Letter l : cur.period().letters()) next += s.image(l).size();
      if (next > options.period_cap) {
        out.truncated = true;
        break;
      }
      cur = s.apply(cur);
    }
    out.steps.push_back(SpectralStep{n, bands(cur, potential, options.tol), std::nullopt});
  }
  for (std::size_t i = 0; i + 1 < out.steps.size(); ++i)
    out.steps[i].increment_to_next = spectral_distance(out.steps[i].bands, out.steps[i + 1].bands);

  std::vector<double> x, y;
  for (const auto& st : out.steps)
    if (st.increment_to_next && *st.increment_to_next > 0) {
      x.push_back(st.n);
      y.push_back(std::log(*st.increment_to_next));
    }
  if (x.size() >= 3) out.rate_fit = fit_line(x, y);
  return out;
}

}  // namespace phull
