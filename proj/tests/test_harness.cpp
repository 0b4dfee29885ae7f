#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "trigconv/harness.hpp"

using namespace trigconv;

namespace {

CoefficientSequence seq(const char* text) { return make_sequence(parse_family(text)); }
WeightSequence weight(const char* text) { return make_weight(parse_family(text)); }

Theorem3Options small(index_t N) {
  Theorem3Options o;
  o.horizon = N;
  return o;
}

}  // namespace

TEST(Theorem3, HarmonicWithConstantWeight) {
  const auto r = verify_theorem3(seq("harmonic(1)"), WeightSequence::constant(), small(1 << 14));
  ASSERT_TRUE(r.premises_met) << r.note;
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(*r.get("M2pp"), 1.0, 1e-3);
  EXPECT_DOUBLE_EQ(*r.get("rho"), 1.0);
  EXPECT_NEAR(*r.get("measured_2star"), 2.0 / 3.0, 1e-12);
  EXPECT_LE(*r.get("measured_2star"), *r.get("predicted_2star_bound"));
}

TEST(Theorem3, QuasimonotoneWithSquareRootWeight) {
  // c_n / sqrt(n) = n^-2 is non-increasing: M2'' = 1 by telescoping.
  const index_t N = 1 << 12;
  const auto c = seq("orvqm(power(0.5),harmonic(2))");
  const auto R = weight("power(0.5)");
  const auto r = verify_theorem3(c, R, small(N));
  ASSERT_TRUE(r.premises_met) << r.note;
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(*r.get("M2pp"), 1.0 - 1.0 / std::pow(4097.0, 2), 1e-15);
  // rho = max R(2n+1)/R(n) = sqrt(3) at n = 1; for n >= 1 it is sqrt((2n+1)/n).
  EXPECT_NEAR(*r.get("rho"), std::sqrt(3.0), 1e-15);
  // Oracle: every chain term directly for m <= 2^10.
  const double M = *r.get("M2pp");
  for (index_t n = 1; n <= (1 << 10); ++n) {
    long double L = 0, Sa = 0;
    for (index_t k = n; k <= 2 * n; ++k) {
      L += std::abs(c.at(k) - c.at(k + 1));
      Sa += std::abs(c.at(k) / R.at(k) - c.at(k + 1) / R.at(k + 1));
    }
    const double an = std::abs(c.at(n)) / R.at(n);
    const double rhs = M * R.at(2 * n + 1) * an + an * (R.at(2 * n + 1) - R.at(n));
    ASSERT_LE(static_cast<double>(L), rhs * (1 + 1e-12)) << n;
    ASSERT_LE(static_cast<double>(Sa), M * an * (1 + 1e-12)) << n;
  }
  EXPECT_LE(*r.get("measured_2star"), 2.0 * *r.get("rho") - 1.0 + 1e-12);
}

TEST(Theorem3, ZeroSequence) {
  const auto r = verify_theorem3(seq("zero"), weight("log"), small(1024));
  EXPECT_TRUE(r.premises_met);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.get("measured_2star"), 0.0);
  EXPECT_GT(r.checks, 0);
}

TEST(Theorem3, NonNullSequenceDoesNotMeetPremises) {
  const auto r = verify_theorem3(CoefficientSequence::generator(
                                     "growing", [](index_t n) { return cplx(static_cast<double>(n)); }, true),
                                 WeightSequence::constant(), small(1024));
  EXPECT_FALSE(r.premises_met);
  EXPECT_FALSE(r.violated());
  EXPECT_NE(r.note.find("null-trending"), std::string::npos);
}

TEST(Theorem3, LacunaryDoesNotMeetPremises) {
  const auto r = verify_theorem3(seq("lacunary(1)"), weight("power(1)"), small(1024));
  EXPECT_FALSE(r.premises_met);
}

TEST(Theorem3Property, SeededCorpusChainsHold) {
  const auto out = verify_theorem3_corpus(1, 12, small(1 << 13));
  const auto s = out.summary();
  EXPECT_EQ(s.members, 12);
  EXPECT_EQ(s.premises_not_met, 0);
  EXPECT_EQ(s.passed, 12);
  EXPECT_FALSE(out.any_violation());
  EXPECT_GE(s.worst_slack, 0.0);
  for (const auto& r : out.records) {
    EXPECT_LE(*r.get("measured_2star"), *r.get("predicted_2star_bound")) << r.member;
    EXPECT_LE(*r.get("predicted_2star_bound"), *r.get("rigorous_2star_bound") + 1e-12) << r.member;
  }
}

TEST(Theorem3Property, CorpusIsDeterministicAndCoversAllKinds) {
  const auto a = theorem3_corpus(5, 12);
  const auto b = theorem3_corpus(5, 12);
  ASSERT_EQ(a.size(), 12u);
  int rbv = 0, complex = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_string(a[i].coefficients), to_string(b[i].coefficients));
    const std::string text = to_string(a[i].coefficients);
    rbv += text.find("random_rbv") != std::string::npos;
    complex += a[i].theta0 > 0;
  }
  EXPECT_EQ(rbv, 4);
  EXPECT_EQ(complex, 4);
}

TEST(ViolationRecording, KeepsBothSidesAndCapsStorage) {
  InstanceRecord r;
  for (int i = 0; i < 40; ++i) r.check("x", i, 2.0, 1.0);
  EXPECT_EQ(r.violation_count, 40);
  EXPECT_EQ(r.violations.size(), InstanceRecord::kMaxStoredViolations);
  EXPECT_EQ(r.violations[0].lhs, 2.0);
  EXPECT_EQ(r.violations[0].rhs, 1.0);
  EXPECT_LT(r.worst_slack, 0.0);
  EXPECT_FALSE(r.passed());
}

// ---------------------------------------------------------------- corollary

TEST(Corollary, RealDecreasingHasUnitConstant) {
  const auto r = verify_corollary(seq("orvqm(log,harmonic(2))"), weight("log"), Sector(0), small(1 << 12));
  ASSERT_TRUE(r.premises_met) << r.note;
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(*r.get("M2pp"), 1.0 - 1.0 / std::pow(4097.0, 2), 1e-15);
}

TEST(Corollary, SectorBoundaryFamily) {
  const double theta = kPi / 6;
  const auto c = seq("rotated(0.5235987755982988,harmonic(2))");
  const auto r = verify_corollary(c, WeightSequence::constant(), Sector(theta), small(1 << 12));
  ASSERT_TRUE(r.premises_met) << r.note;
  EXPECT_TRUE(r.passed());
  // Oracle: moduli of the differences against their real parts.
  long double mod = 0, re = 0;
  for (index_t n = 1; n <= (1 << 12); ++n) {
    const cplx d = c.at(n) - c.at(n + 1);
    mod += std::abs(d);
    re += d.real();
  }
  EXPECT_NEAR(static_cast<double>(mod / re), 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_LE(*r.get("M2pp"), 2.0 / std::sqrt(3.0) * (1 + 1e-12));
}

TEST(Corollary, LacunaryDoesNotMeetPremises) {
  const auto r = verify_corollary(seq("lacunary(1)"), WeightSequence::constant(), Sector(0), small(1 << 12));
  EXPECT_FALSE(r.premises_met);
  EXPECT_NE(r.note.find("not O-regularly varying quasimonotone"), std::string::npos);
}

TEST(CorollaryProperty, SeededCorpus) {
  const auto out = verify_corollary_corpus(3, 6, small(1 << 13));
  EXPECT_EQ(out.summary().passed, 6);
}

// ---------------------------------------------------------------- lacunary remark

TEST(LacunaryRemark, AlphaOneTriad) {
  LacunaryOptions opt;
  opt.horizon = 1 << 16;
  opt.tail_n_max = 1 << 12;
  const auto r = verify_lacunary_remark(1.0, opt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.get("max_abs_block_max_minus_one"), 0.0);
  for (index_t n0 : {1, 2, 4, 8, 16}) {
    const auto w = r.get("2star_witness_N0=" + std::to_string(n0));
    ASSERT_TRUE(w) << n0;
  }
  ASSERT_FALSE(r.trend.empty());
  EXPECT_LE(r.trend.back().second, std::pow(2.0, -12));
}

TEST(LacunaryRemark, ScaledValuesAtPowersOfTwo) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto b = make_sequence(FamilySpec{"lacunary", {SpecArg{alpha}}, {}});
    for (int k = 1; k <= 20; ++k) {
      const double n = std::ldexp(1.0, k);
      EXPECT_NEAR(std::pow(n, alpha) * b.at(static_cast<index_t>(n)).real(), 1.0,
                  4 * std::numeric_limits<double>::epsilon())
          << alpha << " " << k;
    }
  }
}

// ---------------------------------------------------------------- equivalence diagnostics

TEST(Equivalence, HarmonicConsistentNonVanishing) {
  const auto out = verify_equivalence_diagnostics({parse_family("harmonic(1)")}, {.n_list = {64, 128, 256}});
  const auto& r = out.records.at(0);
  EXPECT_EQ(*r.get("condition_2star"), 1.0);
  EXPECT_EQ(*r.get("coefficients_vanish"), 0.0);
  EXPECT_EQ(*r.get("sup_vanishes"), 0.0);
  EXPECT_FALSE(out.any_violation());
}

TEST(Equivalence, LacunaryInconsistencyAttributedToStar) {
  const auto out = verify_equivalence_diagnostics({parse_family("lacunary(1)")}, {.n_list = {64, 128, 256}});
  const auto& r = out.records.at(0);
  EXPECT_EQ(*r.get("condition_2star"), 0.0);
  EXPECT_EQ(*r.get("consistent"), 0.0);
  EXPECT_FALSE(out.any_violation());
  EXPECT_NE(r.note.find("waived"), std::string::npos);
  EXPECT_NE(r.note.find("attributed"), std::string::npos);
}

TEST(Equivalence, RecordsAreSortedByMember) {
  const auto out = verify_equivalence_diagnostics({parse_family("zero"), parse_family("harmonic(2)")},
                                                  {.n_list = {16, 32}});
  ASSERT_EQ(out.records.size(), 2u);
  EXPECT_LT(out.records[0].member, out.records[1].member);
}
