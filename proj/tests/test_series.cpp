#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "trigconv/random.hpp"
#include "trigconv/series.hpp"

using namespace trigconv;

namespace {

CoefficientSequence seq(const char* text) { return make_sequence(parse_family(text)); }

long double direct_dirichlet(index_t n, double x) {
  long double s = 0;
  for (index_t k = 1; k <= n; ++k) s += std::sin(static_cast<long double>(k) * x);
  return s;
}

// Independent tail evaluation: long double, std::sin per term.
long double direct_tail_sine(const CoefficientSequence& b, index_t lo, index_t hi, double x) {
  long double s = 0;
  for (index_t k = lo + 1; k <= hi; ++k) s += static_cast<long double>(b.at(k).real()) * std::sin(static_cast<long double>(k) * x);
  return s;
}

TwoSidedSequence random_two_sided(std::uint64_t seed, index_t count) {
  SplitMix64 g(seed);
  std::vector<cplx> p, q;
  std::uint64_t i = 0;
  for (index_t k = 1; k <= count; ++k) {
    p.emplace_back(2 * g.uniform(i) - 1, 2 * g.uniform(i + 1) - 1);
    q.emplace_back(2 * g.uniform(i + 2) - 1, 2 * g.uniform(i + 3) - 1);
    i += 4;
  }
  return {cplx(g.uniform(i), g.uniform(i + 1)), CoefficientSequence::explicit_values(p),
          CoefficientSequence::explicit_values(q)};
}

}  // namespace

// ---------------------------------------------------------------- grid

TEST(GridSpec, PointsLieInRangeAndContainTestPoint) {
  for (index_t n : {1, 7, 100, 4096}) {
    GridSpec g;
    g.n_ref = n;
    const auto pts = g.points();
    ASSERT_FALSE(pts.empty());
    EXPECT_GT(pts.front(), 0.0);
    EXPECT_LE(pts.back(), kPi);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    EXPECT_TRUE(std::find(pts.begin(), pts.end(), kPi / (8.0 * n)) != pts.end()) << n;
  }
}

TEST(GridSpec, TextRoundTripAndErrors) {
  GridSpec g;
  g.n_ref = 64;
  g.oversample = 4;
  EXPECT_EQ(g.to_text(), "grid(64,4)");
  const auto back = GridSpec::parse(g.to_text());
  EXPECT_EQ(back.n_ref, 64);
  EXPECT_EQ(back.oversample, 4);
  EXPECT_THROW(GridSpec::parse("grid(64)"), Error);
  EXPECT_THROW(GridSpec::parse("grid(64,1.5)"), Error);
  g.extra = {4.0};
  EXPECT_THROW(g.points(), Error);
}

// ---------------------------------------------------------------- Dirichlet kernel

TEST(Dirichlet, Examples) {
  EXPECT_NEAR(dirichlet_sine(2, kPi / 2), 1.0, 1e-15);
  for (index_t n : {1, 2, 17, 1000}) EXPECT_NEAR(dirichlet_sine(n, kPi), 0.0, 1e-12);
  const double v = dirichlet_sine(1000, 0.01);
  EXPECT_NEAR(v, static_cast<double>(direct_dirichlet(1000, 0.01)), 1e-9);
  EXPECT_LE(std::abs(v), kPi / 0.01);
  EXPECT_THROW(dirichlet_sine(3, 0.0), Error);
  EXPECT_THROW(dirichlet_sine(3, 4.0), Error);
}

TEST(DirichletProperty, ClosedFormMatchesDirectSumAndBound) {
  SplitMix64 g(31);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const index_t n = 1 + static_cast<index_t>(g.uniform(2 * i) * 10000);
    const double x = kPi * (1.0 - g.uniform(2 * i + 1));
    const double closed = dirichlet_sine(n, x);
    EXPECT_NEAR(closed, static_cast<double>(direct_dirichlet(n, x)), 1e-9) << n << " " << x;
    EXPECT_LE(std::abs(closed), kPi / x);
  }
}

// ---------------------------------------------------------------- partial sums

TEST(PartialSum, SineExamples) {
  const auto unit = CoefficientSequence::explicit_real({1, 0, 0, 0});
  EXPECT_NEAR(partial_sum_sine(unit, 3, kPi / 2).real(), 1.0, 1e-15);
  EXPECT_EQ(partial_sum_sine(seq("harmonic(1)"), 100, 0.0), cplx{});
  EXPECT_EQ(partial_sum_sine(seq("harmonic(1)"), 100, 2 * kPi), cplx{});
  EXPECT_NEAR(partial_sum_sine(seq("harmonic(1)"), 4, kPi / 2).real(), 2.0 / 3.0, 1e-15);
}

TEST(PartialSum, SineArgumentReduction) {
  const auto b = seq("harmonic(1)");
  for (double x : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(std::abs(partial_sum_sine(b, 50, -x) + partial_sum_sine(b, 50, x)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(partial_sum_sine(b, 50, x + 2 * kPi) - partial_sum_sine(b, 50, x)), 0.0, 1e-12);
  }
}

TEST(PartialSum, TwoSidedExamples) {
  EXPECT_EQ(partial_sum_two_sided(TwoSidedSequence::zero(), 10, 1.3), cplx{});
  const auto one = CoefficientSequence::explicit_values({cplx(1) / cplx(0, 2), 0, 0});
  const TwoSidedSequence ts = TwoSidedSequence::from_sine(CoefficientSequence::explicit_real({1, 0, 0}));
  for (double x : {-2.0, 0.0, 0.7, 3.0}) {
    EXPECT_NEAR(std::abs(partial_sum_two_sided(ts, 3, x) - std::sin(x)), 0.0, 1e-15) << x;
  }
  EXPECT_EQ(ts.pos().at(1), one.at(1));
}

TEST(PartialSumProperty, SplitIdentity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ts = random_two_sided(seed, 60);
    for (double x : {1.0, -0.4, 2.9}) {
      const cplx a = partial_sum_two_sided(ts, 50, x);
      const cplx b = partial_sum_two_sided_split(ts, 50, x);
      EXPECT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a))) << seed;
    }
  }
}

TEST(PartialSumProperty, SineSeriesAsTwoSided) {
  const auto b = seq("log_damped");
  const auto ts = TwoSidedSequence::from_sine(b);
  for (double x : {0.1, 1.0, 3.0}) {
    EXPECT_NEAR(std::abs(partial_sum_two_sided(ts, 200, x) - partial_sum_sine(b, 200, x)), 0.0, 1e-13);
  }
}

// ---------------------------------------------------------------- tail sup-norm

TEST(TailSupNorm, ZeroSeries) {
  EXPECT_EQ(tail_sup_norm(SeriesInput{TwoSidedSequence::zero()}, 10).sup_estimate, 0.0);
  EXPECT_EQ(tail_sup_norm(SeriesInput{SineSeries{CoefficientSequence::zero()}}, 10).sup_estimate, 0.0);
}

TEST(TailSupNorm, LacunaryUnderAbsoluteTail) {
  const auto b = seq("lacunary(1)");
  const auto t = tail_sup_norm(SeriesInput{SineSeries{b}}, 100);
  // Sum_{k >= 7} 2^-k = 2^-6.
  EXPECT_LE(t.sup_estimate, std::pow(2.0, -6));
  ASSERT_TRUE(t.truncation_slack);
  EXPECT_EQ(t.n_ref, 1 << 16);
  EXPECT_DOUBLE_EQ(*t.truncation_slack, std::pow(2.0, -16));
  EXPECT_NEAR(t.sup_estimate, static_cast<double>(std::abs(direct_tail_sine(b, 100, 1 << 16, t.argmax_x))), 1e-12);
}

TEST(TailSupNorm, MatchesIndependentEvaluationAtArgmax) {
  for (const char* text : {"harmonic(1)", "log_damped", "rbv_block(1,3)"}) {
    const auto b = seq(text);
    const auto t = tail_sup_norm(SeriesInput{SineSeries{b}}, 64, index_t{4096}, [] {
      GridSpec g;
      g.n_ref = 64;
      return g;
    }());
    EXPECT_NEAR(t.sup_estimate, static_cast<double>(std::abs(direct_tail_sine(b, 64, 4096, t.argmax_x))), 1e-11) << text;
  }
}

TEST(TailSupNorm, HarmonicStaysAboveThreshold) {
  for (index_t n : {64, 256, 1024}) {
    EXPECT_GE(tail_sup_norm(SeriesInput{SineSeries{seq("harmonic(1)")}}, n).sup_estimate, 0.2) << n;
  }
}

TEST(TailSupNormProperty, LargerGridNeverDecreasesEstimate) {
  const SeriesInput in{SineSeries{seq("perturbed(2,harmonic(1),0.3)@8")}};
  GridSpec small;
  small.n_ref = 32;
  small.oversample = 1;
  small.geometric = false;
  double prev = tail_sup_norm(in, 32, index_t{2048}, small).sup_estimate;
  GridSpec g = small;
  g.geometric = true;
  for (int os : {1, 2, 8, 32}) {
    g.oversample = os;
    g.extra.push_back(0.001 * os);
    const double now = tail_sup_norm(in, 32, index_t{2048}, g).sup_estimate;
    EXPECT_GE(now, prev) << os;
    prev = now;
  }
}

TEST(TailSupNorm, TwoSidedUsesMirroredGrid) {
  // c_k = 1/k^2 only on the negative side: |tail| is even in x, so the
  // mirrored grid gives the same maximum as a one-sided scan.
  const TwoSidedSequence ts(cplx{}, CoefficientSequence::zero(), seq("harmonic(2)"));
  const auto t = tail_sup_norm(SeriesInput{ts}, 8);
  double oracle = 0;
  for (index_t k = 9; k <= (1 << 16); ++k) oracle += 1.0 / (double(k) * double(k));
  EXPECT_NEAR(t.sup_estimate, oracle, 1e-12);  // attained at x = 0
  EXPECT_EQ(t.argmax_x, 0.0);
}

TEST(TailSupNorm, Errors) {
  EXPECT_THROW(tail_sup_norm(SeriesInput{SineSeries{seq("harmonic(1)")}}, 10, index_t{10}, GridSpec{}), Error);
  GridSpec empty;
  empty.oversample = 0;
  empty.geometric = false;
  EXPECT_THROW(tail_sup_norm(SeriesInput{SineSeries{seq("harmonic(1)")}}, 10, index_t{100}, empty), Error);
}

// ---------------------------------------------------------------- curves

TEST(ConvergenceCurve, ZeroGivesZeros) {
  const auto c = convergence_curve(SeriesInput{SineSeries{CoefficientSequence::zero()}}, {8});
  ASSERT_EQ(c.entries.size(), 1u);
  EXPECT_EQ(c.entries[0].sup_estimate, 0.0);
  EXPECT_EQ(c.entries[0].max_k_ck, 0.0);
  EXPECT_EQ(*c.entries[0].truncation_slack, 0.0);
}

TEST(ConvergenceCurve, HarmonicColumns) {
  const auto c = convergence_curve(SeriesInput{SineSeries{seq("harmonic(1)")}}, {64, 256});
  for (const auto& e : c.entries) {
    EXPECT_NEAR(e.max_k_ck, 1.0, 1e-15);
    EXPECT_GE(e.sup_estimate, 0.2);
    EXPECT_FALSE(e.truncation_slack);
  }
}

TEST(ConvergenceCurve, LacunarySupVanishesWhileCoefficientColumnStaysOne) {
  std::vector<index_t> ns;
  for (index_t n = 64; n <= 4096; n *= 2) ns.push_back(n);
  const auto b = seq("lacunary(1)");
  const auto c = convergence_curve(SeriesInput{SineSeries{b}}, ns);
  double prev = 1.0;
  for (const auto& e : c.entries) {
    EXPECT_DOUBLE_EQ(e.max_k_ck, 1.0);  // n itself is a power of two
    EXPECT_LE(e.sup_estimate, *b.abs_tail(e.n));
    EXPECT_LT(e.sup_estimate, prev);
    prev = e.sup_estimate;
  }
}

TEST(ConvergenceCurve, RejectsUnsortedList) {
  EXPECT_THROW(convergence_curve(SeriesInput{SineSeries{seq("zero")}}, {8, 4}), Error);
  EXPECT_THROW(convergence_curve(SeriesInput{SineSeries{seq("zero")}}, {}), Error);
}

// ---------------------------------------------------------------- Abel bound

TEST(AbelBound, HarmonicExample) {
  const index_t H = 1 << 16;
  const auto b = abel_tail_bound(seq("harmonic(1)"), 10, 0.1, H);
  // Variation telescopes to 1/10 - 1/(H+1); head 1/10; residual 1/(H+1).
  EXPECT_NEAR(b.variation, 0.1 - 1.0 / (H + 1), 1e-15);
  EXPECT_DOUBLE_EQ(b.head, 0.1);
  EXPECT_NEAR(b.bound, (kPi / 0.1) * 0.2, 1e-12);
  EXPECT_NEAR(b.bound, 6.2832, 1e-4);
  const double actual = std::abs(truncated_sine_tail(seq("harmonic(1)"), 10, H, 0.1));
  long double oracle = 0;
  for (index_t k = 10; k <= H; ++k) oracle += std::sin(static_cast<long double>(k) * 0.1) / k;
  EXPECT_NEAR(actual, std::abs(static_cast<double>(oracle)), 1e-12);
  EXPECT_LE(actual, b.bound);
}

TEST(AbelBound, ZeroAndErrors) {
  EXPECT_EQ(abel_tail_bound(seq("zero"), 5, 1.0, 100).bound, 0.0);
  EXPECT_THROW(abel_tail_bound(seq("harmonic(1)"), 5, 0.0, 100), Error);
  EXPECT_THROW(abel_tail_bound(seq("harmonic(1)"), 0, 1.0, 100), Error);
  EXPECT_THROW(abel_tail_bound(seq("harmonic(1)"), 50, 1.0, 10), Error);
}

TEST(AbelBoundProperty, DominatesTruncatedTail) {
  SplitMix64 g(5);
  const char* families[] = {"harmonic(1)", "lacunary(1)", "rbv_block(1,4)", "random_rbv(0.8,5000)@2",
                            "rotated(1,log_damped)", "perturbed(2,harmonic(0.5),0.9)@1"};
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto c = seq(families[i % 6]);
    const index_t N = 1 + static_cast<index_t>(g.uniform(3 * i) * 500);
    const double x = kPi * (1.0 - g.uniform(3 * i + 1));
    const index_t H = N + static_cast<index_t>(g.uniform(3 * i + 2) * 5000);
    const auto b = abel_tail_bound(c, N, x, H);  // throws on violation in test builds
    EXPECT_LE(std::abs(truncated_sine_tail(c, N, H, x)), b.bound);
  }
}

TEST(JOneEstimate, SmallFrequencyPartBoundedByFirstMoment) {
  SplitMix64 g(77);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto c = seq(i % 2 ? "harmonic(1)" : "random_rbv(0.5,10000)@4");
    const double x = 1e-4 + 0.05 * g.uniform(2 * i);
    const index_t Nx = static_cast<index_t>(std::floor(1.0 / x));
    const index_t n = 1 + static_cast<index_t>(g.uniform(2 * i + 1) * (Nx - 1));
    if (n >= Nx) continue;
    long double first_moment = 0;
    for (index_t k = n; k < Nx; ++k) first_moment += k * std::abs(c.at(k));
    EXPECT_LE(std::abs(truncated_sine_tail(c, n, Nx - 1, x)), x * static_cast<double>(first_moment) * (1 + 1e-12));
  }
}

// ---------------------------------------------------------------- dyadic bound

TEST(DyadicBound, MonotoneTelescopes) {
  const index_t H = 1 << 12;
  const auto d = dyadic_variation_bound(seq("harmonic(1)"), 16, 1, H);
  EXPECT_NEAR(d.lhs, 1.0 / 16 - 1.0 / (H + 1), 1e-15);
  for (const auto& b : d.blocks) {
    EXPECT_EQ(b.argmax, b.start);
    EXPECT_DOUBLE_EQ(b.max_abs, 1.0 / b.start);
  }
  // Sum_j 2^-j / 16 over the blocks 16, 32, ..., 2048.
  EXPECT_NEAR(d.block_max_sum(), (1.0 / 16) * (2 - std::pow(2.0, -8)), 1e-15);
  EXPECT_TRUE(d.dominated_by(2.0 / 3.0));
  EXPECT_FALSE(d.first_block_violation(2.0 / 3.0));
}

TEST(DyadicBound, GeometricStepHoldsWhenNcnIsSmall) {
  const auto d = dyadic_variation_bound(seq("log_damped"), 64, 2, 1 << 14);
  const auto [eps, lhs, rhs] = d.geometric_step();
  EXPECT_GT(eps, 0.0);
  EXPECT_LE(lhs, rhs * (1 + 1e-12));
}

TEST(DyadicBound, LacunaryBlocksBreakDominance) {
  const auto d = dyadic_variation_bound(seq("lacunary(1)"), 3, 1, 1 << 10);
  const auto bad = d.first_block_violation(1e6);
  ASSERT_TRUE(bad);
  EXPECT_EQ(d.blocks[*bad].max_abs, 0.0);
  EXPECT_GT(d.blocks[*bad].variation, 0.0);
}

// ---------------------------------------------------------------- test-point probe

TEST(Lemma2Probe, SineFloorOnTestRange) {
  for (index_t n : {10, 100, 1000}) {
    const auto p = lemma2_testpoint_probe(TwoSidedSequence::zero(), n, Sector(0));
    EXPECT_TRUE(p.sine_floor_holds()) << n;
    EXPECT_NEAR(p.sine_floor, 0.38268343236508984, 1e-15);
    for (index_t k = n + 1; k <= 4 * n; ++k) ASSERT_GE(std::sin(k * kPi / (8.0 * n)), p.sine_floor);
  }
}

TEST(Lemma2Probe, ZeroGivesZeros) {
  const auto p = lemma2_testpoint_probe(TwoSidedSequence::zero(), 50, Sector(0));
  EXPECT_EQ(p.weighted_re_sum, 0.0);
  EXPECT_EQ(p.norm_estimate, 0.0);
  EXPECT_EQ(p.symmetric_sum, 0.0);
  EXPECT_TRUE(p.relation_holds());
}

TEST(Lemma2Probe, LogDampedRelation) {
  const TwoSidedSequence ts(cplx{}, seq("log_damped"), CoefficientSequence::zero());
  const index_t n = 256;
  const auto p = lemma2_testpoint_probe(ts, n, Sector(0));
  EXPECT_TRUE(p.premises_hold);
  // Oracle: the three terms evaluated directly.
  const double x0 = kPi / (8.0 * n);
  long double lhs = 0, sym = 0;
  for (index_t k = n + 1; k <= 4 * n; ++k) {
    const double c = 1.0 / (k * std::log(k + 2.0));
    lhs += 2 * c * std::sin(k * x0);
    sym += c;
  }
  EXPECT_NEAR(p.weighted_re_sum, static_cast<double>(lhs), 1e-13);
  EXPECT_NEAR(p.symmetric_sum, static_cast<double>(sym), 1e-13);
  EXPECT_TRUE(p.relation_holds());
  EXPECT_GE(p.relation_slack(), 0.0);
  EXPECT_TRUE(p.chain_holds());
  EXPECT_TRUE(p.lower_bound_holds());
}

TEST(Lemma2Probe, ReportsUnmetPremises) {
  const TwoSidedSequence ts(cplx{}, seq("rotated(1.2,harmonic(1))"), CoefficientSequence::zero());
  EXPECT_FALSE(lemma2_testpoint_probe(ts, 10, Sector(0.5)).premises_hold);
}
