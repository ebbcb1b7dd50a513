// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   acceptance              run every criterion
//   acceptance --skip-slow  skip the slow BCa simulation (criterion 7)
//   acceptance --only 7     run a single criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpfr_oracle.hpp"
#include "oracles.hpp"
#include "pvscore/eval.hpp"
#include "pvscore/exact.hpp"
#include "pvscore/inference.hpp"
#include "pvscore/matching.hpp"
#include "pvscore/projection.hpp"
#include "pvscore/random.hpp"

namespace pvscore {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  bool slow;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. Staircase example: exact discrete PV and the 4-point sampled PV are both 1/2.
Outcome staircase_example() {
  const DiscreteDist mu1{PointSet{{0}, {1}, {2}}, {0.25, 0.5, 0.25}};
  const DiscreteDist mu2{PointSet{{1}, {2.1}}, {0.25, 0.75}};
  const double exact = pv_discrete(mu1, mu2, 0.2).value;
  const double sampled = pv_hat(PointSet{{0}, {1}, {1}, {2}}, PointSet{{1}, {2.1}, {2.1}, {2.1}}, 0.2).value;
  Outcome o;
  o.ok = std::abs(exact - 0.5) <= 1e-12 && sampled == 0.5;
  o.detail = "pv_discrete=" + fmt("%.15g", exact) + " pv_hat=" + fmt("%.15g", sampled);
  return o;
}

// 2. Sampled PV equals the brute-force LP optimum on uniform point masses.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8), dim(1, 3);
  std::uniform_real_distribution<double> eps_dist(0.05, 0.6);
  const Metric metrics[] = {Metric::Chebyshev, Metric::Euclidean, Metric::Manhattan};
  int mismatches = 0;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(size(rng));
    const auto d = static_cast<std::size_t>(dim(rng));
    const PointSet a = testing::uniform_points(rng, n, d);
    const PointSet b = testing::uniform_points(rng, n, d);
    const double eps = eps_dist(rng);
    const Metric metric = metrics[t % 3];
    const double gap = std::abs(pv_hat(a, b, eps, metric).value -
                                pv_discrete_bruteforce(DiscreteDist::uniform(a), DiscreteDist::uniform(b), eps, metric));
    worst = std::max(worst, gap);
    if (gap > 1e-6) ++mismatches;
  }
  return {mismatches == 0, "500 instances, mismatches=" + std::to_string(mismatches) + fmt(" max|diff|=%.3g", worst)};
}

// 3. Discretization sandwich under L-infinity.
Outcome sandwich() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> size(10, 60);
  // Dyadic radii keep box centers and radii exact in binary.
  const double radii[] = {0.125, 0.25, 0.375, 0.5};
  int violations = 0, checks = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(size(rng));
    const double shift = 0.1 * (t % 5);
    const PointSet a = testing::uniform_points(rng, n, 2);
    const PointSet b = testing::uniform_points(rng, n, 2, 0.0, 1.0 - shift);
    const double eps = radii[t % 4];
    const double v = pv_hat(a, b, eps).value;
    for (int T : {2, 4}) {
      const double nu = eps / T;
      const auto h1 = discretize(a, nu);
      const auto h2 = discretize(b, nu);
      const double lower = pv_discrete(h1, h2, eps * (T + 1) / T).value;
      const double upper = pv_discrete(h1, h2, eps * (T - 1) / T).value;
      ++checks;
      if (lower > v + 1e-9 || v > upper + 1e-9) ++violations;
    }
  }
  return {violations == 0, std::to_string(checks) + " chains, violations=" + std::to_string(violations)};
}

// 4. Symmetry, range, monotonicity, identical-sample zero, one-point stability.
Outcome properties() {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> size(1, 40), dim(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Metric metrics[] = {Metric::Chebyshev, Metric::Euclidean, Metric::Manhattan};
  constexpr int kTrials = 1000;
  int sym = 0, range = 0, mono = 0, zero = 0, stab = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto n = static_cast<std::size_t>(size(rng));
    const auto m = static_cast<std::size_t>(size(rng));
    const auto d = static_cast<std::size_t>(dim(rng));
    const Metric metric = metrics[t % 3];
    const PointSet a = testing::uniform_points(rng, n, d);
    PointSet b = testing::uniform_points(rng, m, d, 0.0, 1.0 + unit(rng));
    const double e1 = 0.01 + 0.4 * unit(rng);
    const double e2 = e1 + 0.4 * unit(rng);
    const double v = pv_hat(a, b, e1, metric).value;
    if (v != pv_hat(b, a, e1, metric).value) ++sym;
    if (v < 0.0 || v > 1.0) ++range;
    if (pv_hat(a, b, e2, metric).value > v) ++mono;
    if (pv_hat(a, a, e1, metric).value != 0.0) ++zero;
    const bool left = t % 2 == 0;
    PointSet a2 = a;
    PointSet& target = left ? a2 : b;
    for (double& c : target.mutable_row(static_cast<std::size_t>(t) % target.size())) c = 1.5 * unit(rng);
    const double v2 = pv_hat(a2, b, e1, metric).value;
    const double bound = 0.5 * (1.0 / static_cast<double>(n) + 1.0 / static_cast<double>(m));
    if (std::abs(v2 - v) > bound + 1e-15) ++stab;
  }
  std::ostringstream s;
  s << kTrials << " trials each; violations symmetry=" << sym << " range=" << range << " monotonicity=" << mono
    << " zero=" << zero << " stability=" << stab;
  return {sym + range + mono + zero + stab == 0, s.str()};
}

PowerStudyConfig shift_study(TestMethod method, std::vector<double> deltas, std::vector<std::size_t> sizes,
                             std::size_t reps, std::uint64_t seed) {
  PowerStudyConfig cfg;
  cfg.epsilons = {0.3};
  cfg.deltas = std::move(deltas);
  cfg.alpha = 0.05;
  cfg.reps = reps;
  cfg.sample_sizes = std::move(sizes);
  cfg.seed = seed;
  cfg.method = method;
  cfg.bootstrap_replicates = 500;
  return cfg;
}

// 5. Bound test level under P = Q.
Outcome type_one_bound() {
  const auto cells = run_power_study(shift_study(TestMethod::Bound, {0.0}, {1000}, 500, 505));
  const double rate = cells.at(0).frequency;
  return {rate <= 0.05 + 0.03, "rejection rate=" + fmt("%.4f", rate) + " (limit 0.08)"};
}

// 6. Power grows with N and reaches 0.9 at N = 5000.
Outcome power_trend() {
  const auto cells = run_power_study(shift_study(TestMethod::Bound, {0.6}, {250, 1000, 5000}, 100, 606));
  bool ok = cells.back().frequency >= 0.9;
  std::ostringstream s;
  s << "power at N=250/1000/5000:";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    s << " " << cells[k].frequency;
    if (k > 0 && cells[k].frequency + 0.1 < cells[k - 1].frequency) ok = false;
  }
  return {ok, s.str()};
}

// 7. BCa interval test: type-1 and type-2 errors at most 0.10.
Outcome bca_levels() {
  const auto cells = run_power_study(shift_study(TestMethod::Bca, {0.0, 0.6}, {250, 1000, 5000}, 100, 707));
  bool ok = true;
  std::ostringstream s;
  for (const auto& c : cells) {
    const double err = c.delta == 0.0 ? c.frequency : 1.0 - c.frequency;
    s << (c.delta == 0.0 ? "type1" : "type2") << "(N=" << c.n << ")=" << err << " ";
    if (err > 0.05 + 0.05) ok = false;
  }
  return {ok, s.str()};
}

PointSet sphere_points(Rng& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<double> c(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      c[i * d + k] = g(rng);
      norm += c[i * d + k] * c[i * d + k];
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < d; ++k) c[i * d + k] /= norm;
  }
  return PointSet(std::move(c), d);
}

// 8. Samples of one sphere distribution still look dissimilar inside the regime.
Outcome sphere_simulation() {
  const SphereRegime r = sphere_regime(0.01, 0.5, 0.5, 12);
  int above = 0;
  constexpr int kReps = 200;
  for (int rep = 0; rep < kReps; ++rep) {
    Rng rng = substream(808, static_cast<std::uint64_t>(rep));
    const PointSet a = sphere_points(rng, 40, 12);
    const PointSet b = sphere_points(rng, 40, 12);
    if (pv_hat(a, b, 0.5, Metric::Euclidean).value > 0.5) ++above;
  }
  const double frac = static_cast<double>(above) / kReps;
  const bool interval_ok = r.n_low == 37 && r.n_high && *r.n_high == 47 && r.contains(40);
  std::ostringstream s;
  s << "regime=[" << r.n_low << "," << (r.n_high ? std::to_string(*r.n_high) : "empty") << "] fraction(pv_hat>0.5)="
    << frac << " (limit 0.97)";
  return {interval_ok && frac >= 0.99 - 0.02, s.str()};
}

// 9. Projected test level under P = Q with fresh pairs per projection.
Outcome ppv_level() {
  constexpr int kReps = 200;
  constexpr std::size_t kN = 500;
  int rejections = 0;
  for (int rep = 0; rep < kReps; ++rep) {
    auto source = [rep](std::size_t k) {
      Rng rng = substream(derive_seed(909, static_cast<std::uint64_t>(rep)), k);
      return std::make_pair(testing::uniform_points(rng, kN, 5), testing::uniform_points(rng, kN, 5));
    };
    if (ppv_similarity_test(source, 0.3, 10, 0.05, derive_seed(910, static_cast<std::uint64_t>(rep)), true).reject) {
      ++rejections;
    }
  }
  const double rate = static_cast<double>(rejections) / kReps;
  return {rate <= 0.05 + 0.04, "N=500, rejection rate=" + fmt("%.4f", rate) + " (limit 0.09)"};
}

// 10. Thresholds against arbitrary-precision evaluation from 2^M directly.
Outcome closed_forms() {
  testing::widen_mpfr_exponent_range();
  struct Tuple {
    double eps;
    double boxes;  // ceil(1/eps), written out by hand
    std::size_t d;
    double delta;
    double n;
  };
  const std::vector<Tuple> tuples = {
      {0.5, 2, 1, 0.05, 1000},        {0.5, 2, 2, 0.01, 50},         {0.5, 2, 8, 0.1, 7},
      {0.3, 4, 1, 0.05, 1000},        {0.3, 4, 3, 0.05, 250},        {0.3, 4, 5, 0.2, 5000},
      {0.25, 4, 2, 0.001, 123},       {0.2, 5, 1, 0.05, 10},         {0.2, 5, 4, 0.05, 100000},
      {0.1, 10, 1, 0.5, 3},           {0.1, 10, 2, 0.05, 1000},      {0.1, 10, 6, 0.01, 1000000},
      {0.15, 7, 3, 0.05, 400},        {0.45, 3, 7, 0.3, 40},         {0.05, 20, 2, 0.05, 2000},
      {0.05, 20, 5, 0.01, 20000},     {0.01, 100, 1, 0.05, 500},     {0.01, 100, 3, 0.1, 1000000},
      {0.7, 2, 10, 0.05, 60},         {0.9, 2, 30, 0.05, 1000},      {0.33, 4, 9, 0.05, 1e9},
      {0.125, 8, 4, 0.025, 777},      {0.0625, 16, 3, 0.05, 9999},   {0.02, 50, 4, 0.2, 31},
      {0.001, 1000, 1, 0.05, 100},    {0.001, 1000, 2, 0.05, 100},   {0.001, 1000, 3, 0.01, 1e7},
      {0.5, 2, 40, 0.05, 1000},       {0.5, 2, 50, 0.01, 1e6},       {0.99, 2, 20, 0.99, 2},
      {0.6, 2, 1, 0.001, 1},          {0.4, 3, 2, 0.05, 11},         {0.35, 3, 12, 0.05, 1e5},
      {0.08, 13, 3, 0.05, 2500},      {0.03, 34, 3, 0.05, 1e6},      {0.004, 250, 4, 0.05, 1e8},
      {0.2, 5, 12, 0.05, 1e6},        {0.25, 4, 16, 0.05, 1e6},      {0.1, 10, 9, 0.05, 1e6},
      {0.1, 10, 12, 0.05, 1e6},       {0.01, 100, 6, 0.05, 1e6},     // 1e12
      // Overflow regime: M >= 1e18 (M < 2^62 so MPFR can still form 2^M).
      {0.001, 1000, 6, 0.05, 1e6},    // 1e18
      {0.5, 2, 60, 0.05, 1000},       // 2^60 ~ 1.15e18
      {0.5, 2, 61, 0.1, 1e9},         // 2^61
      {0.25, 4, 30, 0.05, 1e7},       // 4^30 = 2^60
      {1.0 / 1200.0, 1200, 6, 0.01, 1e12},  // 2.99e18
      {0.1, 10, 18, 0.05, 1e5},       // 1e18
      {0.01, 100, 9, 0.2, 1e15},      // 1e18
      {0.05, 20, 14, 0.05, 1e10},     // 1.64e18
      {0.3, 4, 30, 0.001, 1e12},      // 4^30 ~ 1.15e18
  };
  int failures = 0;
  double worst = 0.0;
  std::size_t overflow_tuples = 0;
  for (const auto& t : tuples) {
    const double cover = std::pow(t.boxes, static_cast<double>(t.d));
    if (cover >= 1e18) ++overflow_tuples;
    const auto n = static_cast<std::size_t>(t.n);
    const auto p = make_bound_params(t.eps, t.d, n, t.delta);
    const double nd = static_cast<double>(n);
    double errs[4];
    errs[0] = testing::relative_error(deviation_bound(p), testing::mp_eta(cover, t.delta, nd));
    errs[1] = testing::relative_error(similarity_threshold(t.eps, t.d, n, t.delta), testing::mp_eta(cover, t.delta, nd));
    errs[2] = testing::relative_error(ppv_threshold(t.eps, t.d, n, t.delta),
                                      testing::mp_ppv_threshold(t.boxes, static_cast<double>(t.d), t.delta, nd));
    // theta0 = 0.5, beta = delta
    const double mp_bound = testing::mp_sample_size_bound(cover, 0.5, t.delta, t.delta);
    errs[3] = testing::relative_error(required_sample_size_bound(0.5, t.eps, t.d, t.delta, t.delta), mp_bound);
    bool ok = std::all_of(std::begin(errs), std::end(errs), [](double e) { return e <= 1e-12; });
    // Integer check only where doubles still represent every integer.
    if (mp_bound < 9007199254740992.0) {
      ok = ok && static_cast<double>(required_sample_size(0.5, t.eps, t.d, t.delta, t.delta)) == std::ceil(mp_bound);
    }
    for (double e : errs) worst = std::max(worst, e);
    if (!ok) {
      ++failures;
      std::fprintf(stderr, "tuple eps=%g d=%zu delta=%g n=%g errs=%g %g %g %g\n", t.eps, t.d, t.delta, t.n,
                   errs[0], errs[1], errs[2], errs[3]);
    }
  }
  std::ostringstream s;
  s << tuples.size() << " tuples (" << overflow_tuples << " with M>=1e18), failures=" << failures
    << ", max rel err=" << worst;
  return {failures == 0 && tuples.size() >= 50 && overflow_tuples > 0, s.str()};
}

// 11. AP/MAP fixtures and MAP invariance under monotone score maps.
Outcome ranking_metrics() {
  const std::vector<std::size_t> r1{1}, r2{1, 3};
  const bool fixtures = average_precision(r1, 1) == 1.0 && std::abs(average_precision(r2, 2) - 5.0 / 6.0) < 1e-15;
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.25);
  int broken = 0;
  for (int t = 0; t < 100; ++t) {
    RankingTask task;
    for (int q = 0; q < 5; ++q) task.query_ids.push_back("q" + std::to_string(q));
    for (int c = 0; c < 15; ++c) task.candidate_ids.push_back("c" + std::to_string(c));
    for (int q = 0; q < 5; ++q) {
      std::vector<double> s;
      std::vector<bool> rel;
      for (int c = 0; c < 15; ++c) {
        s.push_back(std::round(u(rng) * 10.0) / 10.0);
        rel.push_back(coin(rng));
      }
      rel[static_cast<std::size_t>(q)] = true;
      task.scores.push_back(s);
      task.relevance.push_back(rel);
    }
    RankingTask mapped = task;
    for (auto& row : mapped.scores) {
      for (double& s : row) s = std::log1p(s) * 3.0 + 2.0;
    }
    if (mean_average_precision(task).map != mean_average_precision(mapped).map) ++broken;
  }
  return {fixtures && broken == 0,
          std::string("fixtures ") + (fixtures ? "exact" : "WRONG") + ", invariance violations=" + std::to_string(broken)};
}

// 12. pv_hat on n = m = 5000, d = 3, average degree about 50.
Outcome performance() {
  std::mt19937_64 rng(1212);
  const PointSet a = testing::uniform_points(rng, 5000, 3);
  const PointSet b = testing::uniform_points(rng, 5000, 3);
  // Interior degree (2 eps)^3 * 5000 is about 61; the boundary of the cube
  // pulls the average down to about 50.
  const double eps = 0.115;
  const auto start = std::chrono::steady_clock::now();
  const PvEstimate est = pv_hat(a, b, eps);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const NeighborGraph g = build_neighbor_graph(a, b, eps, Metric::Chebyshev);
  const double degree = static_cast<double>(g.edge_count()) / 5000.0;
  std::ostringstream s;
  s << "pv_hat=" << est.value << " avg degree=" << degree << " time=" << secs << "s (limit 2s)";
  return {secs < 2.0 && degree > 40 && degree < 60, s.str()};
}

}  // namespace
}  // namespace pvscore

int main(int argc, char** argv) {
  using namespace pvscore;
  bool skip_slow = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--skip-slow") {
      skip_slow = true;
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--skip-slow] [--only N]\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "Staircase example exactness", 0.001, false, staircase_example},
      {2, "Oracle equivalence with brute-force LP", 10, false, oracle_equivalence},
      {3, "Discretization sandwich", 30, false, sandwich},
      {4, "Property suite", 30, false, properties},
      {5, "Type-1 level of the bound test", 120, false, type_one_bound},
      {6, "Power trend of the bound test", 300, false, power_trend},
      {7, "BCa type-1 and type-2 levels", 1200, true, bca_levels},
      {8, "Sphere regime simulation", 60, false, sphere_simulation},
      {9, "Projected test level", 300, false, ppv_level},
      {10, "Closed-form thresholds vs arbitrary precision", 1, false, closed_forms},
      {11, "Ranking metrics", 60, false, ranking_metrics},
      {12, "Matching performance n=m=5000", 60, false, performance},
  };

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    if (only == 0 && skip_slow && c.slow) {
      std::printf("[SKIP] %2d %s (slow suite)\n", c.id, c.name);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && secs < c.time_limit_s;
    ++ran;
    if (!ok) ++failed;
    std::printf("[%s] %2d %s: %s; runtime %.3fs (limit %gs)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.time_limit_s);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
