#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trigconv/sequence.hpp"
#include "trigconv/summation.hpp"

namespace trigconv {

enum class ConditionId {
  monotone,
  quasimonotone,
  orv_weight,
  orvqm,
  cond_2,
  cond_2prime,
  cond_2doubleprime,
  cond_2star,
  cond_4,
  cond_5,
  cond_6,
};

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

inline const char* base_name(ConditionId id) noexcept {
  switch (id) {
    case ConditionId::monotone:
      return "MONOTONE";
    case ConditionId::quasimonotone:
      return "QUASIMONOTONE";
    case ConditionId::orv_weight:
      return "ORV_WEIGHT";
    case ConditionId::orvqm:
      return "ORVQM";
    case ConditionId::cond_2:
      return "COND_2";
    case ConditionId::cond_2prime:
      return "COND_2PRIME";
    case ConditionId::cond_2doubleprime:
      return "COND_2DOUBLEPRIME";
    case ConditionId::cond_2star:
      return "COND_2STAR";
    case ConditionId::cond_4:
      return "COND_4";
    case ConditionId::cond_5:
      return "COND_5";
    case ConditionId::cond_6:
      return "COND_6";
  }
  return "?";
}

struct IndexRange {
  index_t first = 1;
  index_t last = 1;
};

/// Outcome of one condition check over a finite range.
///
/// `constant` is the smallest M consistent with the checked range only; it
/// is never a proof of the infinite-range constant. `stabilization` is the
/// share of the truncated sum contributed by its last dyadic block [N/2, N].
struct ConditionReport {
  ConditionId id = ConditionId::monotone;
  std::string condition;  // e.g. "COND_2STAR(4)"
  Verdict verdict = Verdict::holds;
  std::optional<double> constant;
  std::vector<index_t> witness;
  IndexRange range;
  index_t horizon = 0;
  std::optional<double> stabilization;
  /// Block-level trend data (block start, value), when the check records one.
  std::vector<std::pair<index_t, double>> trend;
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::holds; }
  bool fails() const noexcept { return verdict == Verdict::fails; }
};

inline constexpr double kStabilizationThreshold = 1e-3;
/// Block maxima of n|c_n| below this count as "vanished" for condition (5).
inline constexpr double kNullTrendTolerance = 0.1;

namespace detail {

inline std::string label_with(ConditionId id, const std::string& params) {
  return params.empty() ? std::string(base_name(id)) : std::string(base_name(id)) + "(" + params + ")";
}

inline IndexRange resolve_m_range(std::optional<IndexRange> requested, index_t horizon) {
  IndexRange r = requested.value_or(IndexRange{1, std::max<index_t>(horizon / 4, 1)});
  if (r.first < 1 || r.last < r.first) throw Error("invalid m range");
  return r;
}

/// Values c_1..c_count as a 1-based vector (slot 0 unused).
inline std::vector<cplx> one_based(const CoefficientSequence& c, index_t count) {
  if (c.n_start() != 1) throw Error("checkers expect sequences starting at n = 1");
  auto v = c.prefix(count);
  v.insert(v.begin(), cplx{});
  return v;
}

inline std::vector<double> one_based(const WeightSequence& r, index_t count) {
  auto v = r.prefix(count);
  v.insert(v.begin(), 0.0);
  return v;
}

inline void require_real_nonnegative(const std::vector<cplx>& v) {
  for (std::size_t n = 1; n < v.size(); ++n) {
    if (v[n].imag() != 0.0 || v[n].real() < 0.0) throw Error("not a nonnegative sequence");
  }
}

inline void require_valid_weight(const std::vector<double>& r) {
  for (std::size_t n = 1; n < r.size(); ++n) {
    if (!(r[n] > 0.0)) throw Error("weight must be positive (fails at n = " + std::to_string(n) + ")");
    if (n + 1 < r.size() && !geq_tol(r[n + 1], r[n])) {
      throw Error("weight must be non-decreasing (fails at n = " + std::to_string(n) + ")");
    }
  }
}

/// Shared protocol for conditions (2), (2') and (2''): with a_n given for
/// n = 1..N+1 and rhs_m for m in range, T_m = Sum_{n=m}^{N} |a_n - a_{n+1}|.
inline ConditionReport rest_variation_report(ConditionReport rep, const std::vector<cplx>& a,
                                             const std::vector<double>& rhs, index_t N, IndexRange range) {
  // Suffix sums run right to left over nonnegative terms: no cancellation.
  std::vector<double> tail(static_cast<std::size_t>(N) + 2, 0.0);
  CompensatedSum acc;
  CompensatedSum last_block;
  for (index_t n = N; n >= 1; --n) {
    const double d = std::abs(a[static_cast<std::size_t>(n)] - a[static_cast<std::size_t>(n + 1)]);
    acc.add(d);
    if (n >= N / 2) last_block.add(d);
    tail[static_cast<std::size_t>(n)] = acc.value();
  }

  double best = 0.0;
  index_t best_m = range.first;
  std::optional<index_t> failure;
  for (index_t m = range.first; m <= range.last; ++m) {
    const double t = tail[static_cast<std::size_t>(m)];
    const double r = rhs[static_cast<std::size_t>(m)];
    if (r == 0.0) {
      if (t > 0.0 && !failure) failure = m;
      continue;
    }
    if (const double ratio = t / r; ratio > best) {
      best = ratio;
      best_m = m;
    }
  }
  const double total = tail[static_cast<std::size_t>(range.first)];
  rep.stabilization = total > 0.0 ? last_block.value() / total : 0.0;
  rep.range = range;
  rep.horizon = N;
  if (failure) {
    rep.verdict = Verdict::fails;
    rep.constant = std::numeric_limits<double>::infinity();
    rep.witness = {*failure};
    rep.note = "zero right-hand side with positive tail variation at m = " + std::to_string(*failure);
    return rep;
  }
  rep.constant = best;
  rep.witness = {best_m};
  if (*rep.stabilization > kStabilizationThreshold) {
    rep.verdict = Verdict::inconclusive;
    rep.note = "truncated tail sum has not settled (last dyadic block carries " +
               format_number(*rep.stabilization) + " of the total)";
  } else {
    rep.verdict = Verdict::holds;
  }
  return rep;
}

}  // namespace detail

/// b_n / n^alpha non-increasing for 1 <= n < N. Witness: first violating n.
inline ConditionReport check_quasimonotone(const CoefficientSequence& b, double alpha, index_t N) {
  if (alpha < 0.0) throw Error("alpha must be nonnegative");
  if (N < 2) throw Error("horizon must be at least 2");
  const auto v = detail::one_based(b, N);
  detail::require_real_nonnegative(v);
  ConditionReport rep;
  rep.id = alpha == 0.0 ? ConditionId::monotone : ConditionId::quasimonotone;
  rep.condition = alpha == 0.0 ? "MONOTONE" : detail::label_with(ConditionId::quasimonotone, format_number(alpha));
  rep.range = {1, N - 1};
  rep.horizon = N;
  rep.constant = 0.0;
  auto scaled = [&](index_t n) {
    const double x = v[static_cast<std::size_t>(n)].real();
    return alpha == 0.0 ? x : x / std::pow(static_cast<double>(n), alpha);
  };
  double prev = scaled(1);
  for (index_t n = 1; n < N; ++n) {
    const double next = scaled(n + 1);
    if (!geq_tol(prev, next)) {
      rep.verdict = Verdict::fails;
      rep.witness = {n};
      rep.note = "b_n/n^alpha increases from n = " + std::to_string(n) + " to " + std::to_string(n + 1);
      return rep;
    }
    prev = next;
  }
  rep.verdict = Verdict::holds;
  return rep;
}

/// O-regular variation of R: constant = max_{n <= N/2} R(2n)/R(n).
///
/// Finite data never proves limsup = infinity, so growth is reported as
/// inconclusive: the verdict holds iff the last dyadic block of n does not
/// raise the running maximum. Trend holds the per-block maxima.
inline ConditionReport check_orv_weight(const WeightSequence& R, index_t N) {
  if (N < 2) throw Error("horizon must be at least 2");
  const auto r = detail::one_based(R, N);
  detail::require_valid_weight(r);
  ConditionReport rep;
  rep.id = ConditionId::orv_weight;
  rep.condition = detail::label_with(ConditionId::orv_weight, R.label());
  rep.range = {1, N / 2};
  rep.horizon = N;

  double running = 0.0;
  double before_last = 0.0;
  index_t arg = 1;
  const index_t last_block_start = std::max<index_t>(N / 4, 1) + 1;
  double block_max = 0.0;
  index_t block_start = 1;
  for (index_t n = 1; n <= N / 2; ++n) {
    if (n == 2 * block_start) {
      rep.trend.emplace_back(block_start, block_max);
      block_start = n;
      block_max = 0.0;
    }
    const double ratio = r[static_cast<std::size_t>(2 * n)] / r[static_cast<std::size_t>(n)];
    block_max = std::max(block_max, ratio);
    if (ratio > running) {
      running = ratio;
      arg = n;
    }
    if (n < last_block_start) before_last = running;
  }
  rep.trend.emplace_back(block_start, block_max);
  rep.constant = running;
  rep.witness = {arg};
  if (std::isfinite(running) && (N / 2 < last_block_start || leq_tol(running, before_last))) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "R(2n)/R(n) still growing over the last dyadic block";
  }
  return rep;
}

/// Delta(c_n/R(n)) in K(theta0) for 1 <= n <= N. Constant: the largest
/// |arg| among the nonzero differences (least admissible theta0).
inline ConditionReport check_orvqm(const CoefficientSequence& c, const WeightSequence& R, const Sector& s,
                                   index_t N) {
  if (N < 1) throw Error("horizon must be at least 1");
  const auto v = detail::one_based(c, N + 1);
  const auto r = detail::one_based(R, N + 1);
  detail::require_valid_weight(r);
  ConditionReport rep;
  rep.id = ConditionId::orvqm;
  rep.condition = detail::label_with(ConditionId::orvqm, R.label() + "," + format_number(s.theta0()));
  rep.range = {1, N};
  rep.horizon = N;
  double widest = 0.0;
  for (index_t n = 1; n <= N; ++n) {
    const cplx a0 = v[static_cast<std::size_t>(n)] / r[static_cast<std::size_t>(n)];
    const cplx a1 = v[static_cast<std::size_t>(n + 1)] / r[static_cast<std::size_t>(n + 1)];
    const cplx d = a0 - a1;
    const double scale = std::max(std::abs(a0), std::abs(a1));
    if (!in_sector_tol(d, s, scale)) {
      rep.verdict = Verdict::fails;
      rep.witness = {n};
      rep.constant = std::abs(std::arg(d));
      rep.note = "Delta(c_n/R(n)) leaves the sector at n = " + std::to_string(n);
      return rep;
    }
    if (std::abs(d) > kCompareTol * scale) widest = std::max(widest, std::abs(std::arg(d)));
  }
  rep.constant = widest;
  rep.verdict = Verdict::holds;
  return rep;
}

/// Condition (2): T_m = Sum_{n=m}^{N} |b_n - b_{n+1}| against b_m.
inline ConditionReport check_condition_2(const CoefficientSequence& b, index_t N,
                                         std::optional<IndexRange> m_range = std::nullopt) {
  const IndexRange range = detail::resolve_m_range(m_range, N);
  if (range.last > N) throw Error("m range exceeds horizon");
  const auto v = detail::one_based(b, N + 1);
  std::vector<double> rhs(v.size());
  for (std::size_t n = 1; n < v.size(); ++n) rhs[n] = std::abs(v[n]);
  ConditionReport rep;
  rep.id = ConditionId::cond_2;
  rep.condition = "COND_2";
  return detail::rest_variation_report(std::move(rep), v, rhs, N, range);
}

/// Conditions (2') / (2''): condition (2) for c_n/R(n) with right-hand
/// side |c_m|/R(m). Labelled COND_2PRIME for nonnegative real input.
inline ConditionReport check_condition_2weighted(const CoefficientSequence& c, const WeightSequence& R, index_t N,
                                                 std::optional<IndexRange> m_range = std::nullopt) {
  const IndexRange range = detail::resolve_m_range(m_range, N);
  if (range.last > N) throw Error("m range exceeds horizon");
  auto v = detail::one_based(c, N + 1);
  const auto r = detail::one_based(R, N + 1);
  detail::require_valid_weight(r);
  const bool nonneg = std::all_of(v.begin() + 1, v.end(), [](cplx z) { return z.imag() == 0.0 && z.real() >= 0.0; });
  std::vector<double> rhs(v.size());
  for (std::size_t n = 1; n < v.size(); ++n) {
    v[n] /= r[n];
    rhs[n] = std::abs(v[n]);
  }
  ConditionReport rep;
  rep.id = nonneg ? ConditionId::cond_2prime : ConditionId::cond_2doubleprime;
  rep.condition = detail::label_with(rep.id, R.label());
  return detail::rest_variation_report(std::move(rep), v, rhs, N, range);
}

/// Condition (2*): L_m = Sum_{n=m}^{2m} |Delta c_n| (both ends inclusive)
/// against R_m = max_{m <= n < m+N0} |c_n|. Sums are finite, so the
/// verdict is exact over the range: holds unless some R_m = 0 < L_m.
inline ConditionReport check_condition_2star(const CoefficientSequence& c, index_t N0, index_t N,
                                             std::optional<IndexRange> m_range = std::nullopt) {
  if (N0 < 1) throw Error("N0 must be a natural number");
  const IndexRange range = detail::resolve_m_range(m_range, N);
  if (2 * range.last > N) throw Error("condition (2*) needs 2 * max(m) <= N");
  const index_t count = std::max(N + 1, range.last + N0 - 1);
  const auto v = detail::one_based(c, count);
  std::vector<double> diffs(static_cast<std::size_t>(N));  // diffs[n-1] = |c_n - c_{n+1}|
  for (index_t n = 1; n <= N; ++n) {
    diffs[static_cast<std::size_t>(n - 1)] = std::abs(v[static_cast<std::size_t>(n)] - v[static_cast<std::size_t>(n + 1)]);
  }
  const RangeSumTree tree(diffs);

  ConditionReport rep;
  rep.id = ConditionId::cond_2star;
  rep.condition = detail::label_with(ConditionId::cond_2star, std::to_string(N0));
  rep.range = range;
  rep.horizon = N;
  double best = 0.0;
  index_t best_m = range.first;
  std::optional<index_t> failure;
  for (index_t m = range.first; m <= range.last; ++m) {
    const double L = tree.sum(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(2 * m - 1));
    double Rm = 0.0;
    for (index_t n = m; n < m + N0; ++n) Rm = std::max(Rm, std::abs(v[static_cast<std::size_t>(n)]));
    if (Rm == 0.0) {
      if (L > 0.0 && !failure) failure = m;
      continue;
    }
    if (const double ratio = L / Rm; ratio > best) {
      best = ratio;
      best_m = m;
    }
  }
  if (failure) {
    rep.verdict = Verdict::fails;
    rep.constant = std::numeric_limits<double>::infinity();
    rep.witness = {*failure};
    rep.note = "window max is zero while block variation is positive at m = " + std::to_string(*failure);
  } else {
    rep.verdict = Verdict::holds;
    rep.constant = best;
    rep.witness = {best_m};
  }
  return rep;
}

/// Condition (4): c_n + c_{-n} and c_n - c_{-n} in K(theta0), 1 <= n <= N.
/// A pass also puts 2c_n (their sum) in the sector.
inline ConditionReport check_condition_4(const TwoSidedSequence& ts, const Sector& s, index_t N) {
  if (N < 1) throw Error("horizon must be at least 1");
  const auto p = detail::one_based(ts.pos(), N);
  const auto q = detail::one_based(ts.neg(), N);
  ConditionReport rep;
  rep.id = ConditionId::cond_4;
  rep.condition = detail::label_with(ConditionId::cond_4, format_number(s.theta0()));
  rep.range = {1, N};
  rep.horizon = N;
  double widest = 0.0;
  for (index_t n = 1; n <= N; ++n) {
    const cplx a = p[static_cast<std::size_t>(n)];
    const cplx b = q[static_cast<std::size_t>(n)];
    const double scale = std::max(std::abs(a), std::abs(b));
    for (const cplx z : {a + b, a - b}) {
      if (!in_sector_tol(z, s, scale)) {
        rep.verdict = Verdict::fails;
        rep.witness = {n};
        rep.constant = std::abs(std::arg(z));
        rep.note = "c_n +- c_{-n} leaves the sector at n = " + std::to_string(n);
        return rep;
      }
      if (std::abs(z) > kCompareTol * scale) widest = std::max(widest, std::abs(std::arg(z)));
    }
  }
  rep.verdict = Verdict::holds;
  rep.constant = widest;
  rep.note = "2c_n lies in the sector for every checked n";
  return rep;
}

/// Condition (5) on a one-sided sequence: block maxima of n|c_n| over
/// [2^j, 2^{j+1}) ∩ [1, N]. Holds when the last block maximum is below
/// `tolerance`; fails when it is still the largest block maximum (no decay
/// at all); inconclusive otherwise.
inline ConditionReport check_condition_5(const CoefficientSequence& c, index_t N,
                                         double tolerance = kNullTrendTolerance) {
  if (N < 1) throw Error("horizon must be at least 1");
  const auto v = detail::one_based(c, N);
  ConditionReport rep;
  rep.id = ConditionId::cond_5;
  rep.condition = "COND_5";
  rep.range = {1, N};
  rep.horizon = N;
  double overall = 0.0;
  index_t last_arg = 1;
  double last_max = 0.0;
  for (index_t start = 1; start <= N; start *= 2) {
    const index_t stop = std::min(2 * start - 1, N);
    double block = 0.0;
    index_t arg = start;
    for (index_t n = start; n <= stop; ++n) {
      const double x = static_cast<double>(n) * std::abs(v[static_cast<std::size_t>(n)]);
      if (x > block) {
        block = x;
        arg = n;
      }
    }
    rep.trend.emplace_back(start, block);
    overall = std::max(overall, block);
    last_max = block;
    last_arg = arg;
  }
  rep.constant = last_max;
  if (last_max < tolerance) {
    rep.verdict = Verdict::holds;
  } else if (rep.trend.size() > 1 && geq_tol(last_max, overall * (1.0 - 1e-9))) {
    rep.verdict = Verdict::fails;
    rep.witness = {last_arg};
    rep.note = "n|c_n| shows no decay across dyadic blocks";
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.witness = {last_arg};
    rep.note = "n|c_n| decays but is still above tolerance " + format_number(tolerance);
  }
  return rep;
}

/// Condition (6): partial sums of |c_n + c_{-n}| with the dyadic
/// stabilization rule. Trend records the partial sum at each block end.
inline ConditionReport check_condition_6(const TwoSidedSequence& ts, index_t N) {
  if (N < 1) throw Error("horizon must be at least 1");
  const auto p = detail::one_based(ts.pos(), N);
  const auto q = detail::one_based(ts.neg(), N);
  ConditionReport rep;
  rep.id = ConditionId::cond_6;
  rep.condition = "COND_6";
  rep.range = {1, N};
  rep.horizon = N;
  CompensatedSum total;
  CompensatedSum last_block;
  for (index_t n = 1; n <= N; ++n) {
    const double x = std::abs(p[static_cast<std::size_t>(n)] + q[static_cast<std::size_t>(n)]);
    total.add(x);
    if (n >= N / 2) last_block.add(x);
    if (std::has_single_bit(static_cast<std::uint64_t>(n + 1)) || n == N) rep.trend.emplace_back(n, total.value());
  }
  const double sum = total.value();
  rep.constant = sum;
  rep.stabilization = sum > 0.0 ? last_block.value() / sum : 0.0;
  if (*rep.stabilization <= kStabilizationThreshold) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "partial sums of |c_n + c_{-n}| still growing";
  }
  return rep;
}

inline std::pair<ConditionReport, ConditionReport> check_conditions_5_6(const TwoSidedSequence& ts, index_t N,
                                                                        double tolerance = kNullTrendTolerance) {
  return {check_condition_5(ts.pos(), N, tolerance), check_condition_6(ts, N)};
}

// ---------------------------------------------------------------- classify

struct ClassifyOptions {
  std::optional<index_t> horizon;
  std::optional<index_t> m_max;
  std::vector<index_t> n0_list{1, 2, 4, 8, 16};
  double theta0 = 0.0;
  std::optional<FamilySpec> weight;  // defaults to const
  std::vector<double> alphas;        // extra QUASIMONOTONE(alpha) checks
  double null_tolerance = kNullTrendTolerance;
};

struct Classification {
  std::string subject;
  index_t horizon = 0;
  std::vector<ConditionReport> reports;

  const ConditionReport* find(const std::string& condition) const {
    for (const auto& r : reports) {
      if (r.condition == condition) return &r;
    }
    return nullptr;
  }
};

namespace detail {

inline bool is_nonnegative_real(const CoefficientSequence& c, index_t count) {
  if (!c.is_real()) return false;
  const auto v = c.prefix(count);
  return std::all_of(v.begin(), v.end(), [](cplx z) { return z.imag() == 0.0 && z.real() >= 0.0; });
}

inline IndexRange classify_range(const ClassifyOptions& opt, index_t N) {
  const index_t last = std::min(opt.m_max.value_or(std::max<index_t>(N / 4, 1)), std::max<index_t>(N / 2, 1));
  return {1, std::max<index_t>(last, 1)};
}

}  // namespace detail

/// Runs every applicable checker on the sine coefficients (or one-sided
/// sequence) c with shared horizons.
inline Classification classify(const CoefficientSequence& c, const ClassifyOptions& opt = {}) {
  const index_t N = opt.horizon.value_or(default_horizon(c));
  if (N < 2) throw Error("horizon must be at least 2");
  const IndexRange range = detail::classify_range(opt, N);
  const WeightSequence R = opt.weight ? make_weight(*opt.weight) : WeightSequence::constant();
  const Sector sector(opt.theta0);

  Classification out;
  out.subject = c.label();
  out.horizon = N;
  c.prefix(N + 1);  // surfaces "insufficient length" before any checker runs
  if (detail::is_nonnegative_real(c, N + 1)) {
    out.reports.push_back(check_quasimonotone(c, 0.0, N));
    for (double a : opt.alphas) out.reports.push_back(check_quasimonotone(c, a, N));
    out.reports.push_back(check_condition_2(c, N, range));
  }
  out.reports.push_back(check_orv_weight(R, N));
  out.reports.push_back(check_orvqm(c, R, sector, N));
  out.reports.push_back(check_condition_2weighted(c, R, N, range));
  for (index_t n0 : opt.n0_list) out.reports.push_back(check_condition_2star(c, n0, N, range));
  out.reports.push_back(check_condition_5(c, N, opt.null_tolerance));
  return out;
}

/// Two-sided variant: conditions (4), (5), (6), plus (2*) and O-RVQM on the
/// positive side.
inline Classification classify(const TwoSidedSequence& ts, const ClassifyOptions& opt = {}) {
  const index_t N = opt.horizon.value_or(default_horizon(ts.pos()));
  if (N < 2) throw Error("horizon must be at least 2");
  const IndexRange range = detail::classify_range(opt, N);
  const WeightSequence R = opt.weight ? make_weight(*opt.weight) : WeightSequence::constant();
  const Sector sector(opt.theta0);

  Classification out;
  out.subject = ts.label();
  out.horizon = N;
  ts.pos().prefix(N + 1);
  ts.neg().prefix(N + 1);
  out.reports.push_back(check_condition_4(ts, sector, N));
  auto [c5, c6] = check_conditions_5_6(ts, N, opt.null_tolerance);
  out.reports.push_back(std::move(c5));
  out.reports.push_back(std::move(c6));
  out.reports.push_back(check_orv_weight(R, N));
  out.reports.push_back(check_orvqm(ts.pos(), R, sector, N));
  for (index_t n0 : opt.n0_list) out.reports.push_back(check_condition_2star(ts.pos(), n0, N, range));
  return out;
}

}  // namespace trigconv
