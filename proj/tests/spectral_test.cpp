#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "phull/dictionary.hpp"
#include "phull/errors.hpp"
#include "phull/spectral.hpp"

using namespace phull;

namespace {

std::vector<double> random_potential(std::mt19937& rng, std::size_t p, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(p);
  for (auto& x : v) x = u(rng);
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("free and constant potentials") {
  const auto free = bands(std::vector<double>{0.0});
  REQUIRE(free.intervals.size() == 1);
  CHECK(free.intervals[0].lo == doctest::Approx(-2));
  CHECK(free.intervals[0].hi == doctest::Approx(2));
  const auto shifted = bands(std::vector<double>{1.5});
  CHECK(shifted.intervals[0].lo == doctest::Approx(-0.5));
  CHECK(shifted.intervals[0].hi == doctest::Approx(3.5));
  for (std::size_t p : {2u, 3u, 4u, 7u, 16u, 55u, 200u}) {
    const auto b = bands(std::vector<double>(p, 0.0));
    REQUIRE(b.intervals.size() == 1);
    CHECK(std::abs(b.intervals[0].lo + 2) <= 1e-9);
    CHECK(std::abs(b.intervals[0].hi - 2) <= 1e-9);
  }
}

TEST_CASE("period two closed form") {
  for (double lambda : {0.5, 1.0, 3.0, -2.0}) {
    const auto b = bands(std::vector<double>{0.0, lambda});
    // 0 ≤ E(E−λ) ≤ 4
    const double r = std::sqrt(lambda * lambda / 4 + 4);
    const double lo = std::min(0.0, lambda), hi = std::max(0.0, lambda);
    REQUIRE(b.intervals.size() == 2);
    CHECK(b.intervals[0].lo == doctest::Approx(lambda / 2 - r).epsilon(1e-12));
    CHECK(b.intervals[0].hi == doctest::Approx(lo).epsilon(1e-12));
    CHECK(b.intervals[1].lo == doctest::Approx(hi).epsilon(1e-12));
    CHECK(b.intervals[1].hi == doctest::Approx(lambda / 2 + r).epsilon(1e-12));
  }
}

TEST_CASE("Floquet eigenvalues match a dense eigensolver") {
  std::mt19937 rng(3);
  for (std::size_t p = 1; p <= 64; p += (p < 10 ? 1 : 9)) {
    const auto v = random_potential(rng, p);
    check_close(floquet_eigenvalues(v, FloquetPhase::periodic), oracle::dense_floquet(v, 1.0), 1e-9);
    check_close(floquet_eigenvalues(v, FloquetPhase::antiperiodic), oracle::dense_floquet(v, -1.0), 1e-9);
  }
}

TEST_CASE("tridiagonal bisection on awkward matrices") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial * 3;
    auto d = random_potential(rng, n, 5.0);
    auto e = random_potential(rng, n - 1, 1.0);
    // zero and tiny couplings split the matrix; repeated diagonals give near-degenerate clusters
    for (std::size_t k = 0; k + 1 < n; k += 4) e[k] = trial % 2 ? 0.0 : 1e-200;
    if (n > 3) d[1] = d[2];
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) m(k, k) = d[k];
    for (std::size_t k = 0; k + 1 < n; ++k) m(k, k + 1) = m(k + 1, k) = e[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const std::vector<double> want(es.eigenvalues().data(), es.eigenvalues().data() + n);
    check_close(tridiagonal_eigenvalues(d, e), want, 1e-9);
  }
  CHECK_THROWS_AS(tridiagonal_eigenvalues(std::vector<double>{}, std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(tridiagonal_eigenvalues(std::vector<double>{1, 2}, std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(tridiagonal_eigenvalues(std::vector<double>{1}, std::vector<double>{}, 0.0), InvalidArgument);
}

TEST_CASE("bands agree with the transfer-matrix region") {
  std::mt19937 rng(23);
  for (std::size_t p = 1; p <= 4; ++p)
    for (int trial = 0; trial < 5; ++trial) {
      const auto v = random_potential(rng, p);
      const auto b = bands(v);
      CHECK(b.periodic.size() == p);
      const auto grid = oracle::grid_bands(v, -6.0, 6.0, 1e-3);
      CHECK(hausdorff_distance(grid, b.intervals) <= 2e-3);
    }
}

TEST_CASE("discriminant kernel against explicit matrix products") {
  std::mt19937 rng(29);
  for (std::size_t p : {1u, 2u, 5u, 13u, 40u}) {
    const auto v = random_potential(rng, p);
    std::vector<double> energies;
    for (double e = -4.5; e <= 4.5; e += 0.37) energies.push_back(e);
    const auto d = discriminant(v, energies);
    for (std::size_t i = 0; i < energies.size(); ++i) {
      const double want = oracle::transfer_trace(v, energies[i]);
      CHECK(std::abs(d[i] - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
    // Band edges sit where the trace is ±2; the trace is too steep to test this for long periods.
    if (p > 5) continue;
    const auto b = bands(v);
    for (const auto& i : b.intervals) {
      const auto edge = discriminant(v, std::vector<double>{i.lo, i.hi});
      CHECK(std::abs(std::abs(edge[0]) - 2) <= 1e-6);
      CHECK(std::abs(std::abs(edge[1]) - 2) <= 1e-6);
    }
  }
}

TEST_CASE("shift covariance") {
  std::mt19937 rng(31);
  for (std::size_t p : {1u, 3u, 8u, 21u}) {
    const auto v = random_potential(rng, p);
    auto w = v;
    for (auto& x : w) x += 0.75;
    const auto a = bands(v), b = bands(w);
    REQUIRE(a.intervals.size() == b.intervals.size());
    for (std::size_t i = 0; i < a.intervals.size(); ++i) {
      CHECK(std::abs(b.intervals[i].lo - a.intervals[i].lo - 0.75) <= 1e-9);
      CHECK(std::abs(b.intervals[i].hi - a.intervals[i].hi - 0.75) <= 1e-9);
    }
  }
}

TEST_CASE("band structure invariants") {
  std::mt19937 rng(37);
  for (std::size_t p : {3u, 10u, 34u, 89u}) {
    const auto v = random_potential(rng, p, 1.0);
    const auto b = bands(v);
    CHECK(b.intervals.size() <= p);
    CHECK(b.total_bandwidth() > 0);
    for (std::size_t i = 0; i < b.intervals.size(); ++i) {
      CHECK(b.intervals[i].lo <= b.intervals[i].hi);
      if (i > 0) CHECK(b.intervals[i - 1].hi < b.intervals[i].lo);
    }
  }
}

TEST_CASE("Hausdorff distance of interval unions") {
  const std::vector<Interval> a{{0, 1}}, b{{2, 3}}, wide{{0, 4}}, split{{0, 1}, {3, 4}};
  CHECK(hausdorff_distance(a, a) == 0);
  CHECK(hausdorff_distance(a, b) == 2);
  CHECK(hausdorff_distance(wide, split) == 1);
  CHECK(hausdorff_distance(split, wide) == 1);
  CHECK_THROWS_AS(hausdorff_distance(a, std::vector<Interval>{}), InvalidArgument);
  CHECK(oracle::grid_hausdorff(wide, split, 1e-3) == doctest::Approx(1).epsilon(1e-3));

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Interval> x, y;
    for (int k = 0; k < 1 + trial % 4; ++k) {
      double p = u(rng), q = u(rng);
      x.push_back({std::min(p, q), std::max(p, q)});
      p = u(rng), q = u(rng);
      y.push_back({std::min(p, q), std::max(p, q)});
    }
    CHECK(std::abs(hausdorff_distance(x, y) - oracle::grid_hausdorff(merge_intervals(x), merge_intervals(y), 1e-3)) <=
          1e-3);
  }
}

TEST_CASE("spectral runs") {
  const auto tm = fixture::thue_morse();
  const auto zero = spectral_run(tm, fixture::cyclic(tm, "0"), PotentialMap({0.0, 0.0}), SpectralOptions{6});
  REQUIRE(zero.steps.size() == 7);
  for (const auto& st : zero.steps) {
    REQUIRE(st.bands.intervals.size() == 1);
    CHECK(std::abs(st.bands.intervals[0].lo + 2) <= 1e-9);
    CHECK(std::abs(st.bands.intervals[0].hi - 2) <= 1e-9);
    if (st.increment_to_next) CHECK(*st.increment_to_next <= 1e-9);
  }

  const auto fib = fixture::fibonacci();
  const auto run = spectral_run(fib, fixture::cyclic(fib, "0"), PotentialMap({0.0, 1.0}), SpectralOptions{8});
  CHECK(run.steps.size() == 9);
  CHECK_FALSE(run.steps.back().increment_to_next);
  for (std::size_t i = 0; i + 1 < run.steps.size(); ++i) CHECK(*run.steps[i].increment_to_next > 0);
  REQUIRE(run.rate_fit);
  CHECK(run.rate_fit->slope < 0);

  const auto capped = spectral_run(fib, fixture::cyclic(fib, "0"), PotentialMap({0.0, 1.0}), SpectralOptions{20, 1e-12, 50});
  CHECK(capped.truncated);
  CHECK(capped.steps.back().bands.period == 34);

  CHECK_THROWS_AS(spectral_run(fib, fixture::cyclic(fib, "0"), PotentialMap({0.0})), InvalidArgument);
  CHECK_THROWS_AS(PotentialMap({0.0, NAN}), InvalidArgument);
  CHECK_THROWS_AS(bands(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("generic periodic potentials have one band per site") {
  std::mt19937 rng(43);
  for (std::size_t p : {2u, 5u, 13u, 40u}) {
    const auto v = random_potential(rng, p, 1.5);
    CHECK(floquet_eigenvalues(v, FloquetPhase::periodic).size() == p);
    CHECK(floquet_eigenvalues(v, FloquetPhase::antiperiodic).size() == p);
    CHECK(bands(v).intervals.size() == p);
  }
}

TEST_CASE("spectral increments stay below a fixed multiple of the dictionary bound") {
  const auto fib = fixture::fibonacci();
  const auto run = spectral_run(fib, fixture::cyclic(fib, "0"), PotentialMap({0.0, 1.0}), SpectralOptions{11});
  CyclicWord cur = fixture::cyclic(fib, "0");
  std::vector<double> ratios;
  for (const auto& st : run.steps) {
    if (!st.increment_to_next) break;
    const auto next = fib.apply(cur);
    const auto d = distance(WordSource::hull(cur), WordSource::hull(next), 1001);
    REQUIRE(d.agree_length < 1001);
    ratios.push_back(*st.increment_to_next / d.upper_bound);
    cur = next;
  }
  REQUIRE(ratios.size() == 11);
  const double early = *std::max_element(ratios.begin(), ratios.begin() + 5);
  for (std::size_t i = 5; i < ratios.size(); ++i) CHECK(ratios[i] <= early);
  CHECK(early < 2.0);
}
