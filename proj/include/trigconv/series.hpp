#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "trigconv/classifiers.hpp"
#include "trigconv/sequence.hpp"
#include "trigconv/summation.hpp"

namespace trigconv {

/// Coefficients b_n of Sum b_n sin nx.
struct SineSeries {
  CoefficientSequence b;
};

using SeriesInput = std::variant<SineSeries, TwoSidedSequence>;

inline std::string label(const SeriesInput& in) {
  return std::visit(
      [](const auto& s) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SineSeries>) {
          return s.b.label();
        } else {
          return s.label();
        }
      },
      in);
}

/// Default reference horizon for tail estimates: max(2^16, 64 n).
inline index_t default_reference_horizon(index_t n) { return std::max<index_t>(index_t{1} << 16, 64 * n); }

inline constexpr index_t kMaxUniformPoints = 2048;

/// Evaluation points in (0, pi]: a uniform grid of min(oversample*n_ref,
/// 2048) points, the geometric set x0 * 2^{j/4} (x0 = pi/(8 n_ref),
/// j >= -32) and any extra points.
struct GridSpec {
  index_t n_ref = 1;
  int oversample = 8;
  bool geometric = true;
  std::vector<double> extra;

  double x0() const { return kPi / (8.0 * static_cast<double>(n_ref)); }

  std::vector<double> points() const {
    if (n_ref < 1) throw Error("grid n_ref must be at least 1");
    if (oversample < 0) throw Error("grid oversample must be nonnegative");
    std::vector<double> pts;
    const index_t uniform = std::min<index_t>(static_cast<index_t>(oversample) * n_ref, kMaxUniformPoints);
    for (index_t j = 1; j <= uniform; ++j) pts.push_back(static_cast<double>(j) * kPi / static_cast<double>(uniform));
    if (geometric) {
      for (int j = -32;; ++j) {
        const double x = x0() * std::exp2(j / 4.0);
        if (x > kPi) break;
        pts.push_back(x);
      }
    }
    for (double x : extra) {
      if (!(x > 0.0 && x <= kPi)) throw Error("grid points must lie in (0, pi]");
      pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  std::string to_text() const { return "grid(" + std::to_string(n_ref) + "," + std::to_string(oversample) + ")"; }

  static GridSpec parse(std::string_view text) {
    const FamilySpec spec = parse_family(text);
    if (spec.name != "grid") throw Error("expected grid(n_ref,oversample)");
    detail::expect_arity(spec, 2, 2);
    GridSpec g;
    g.n_ref = detail::require_count(detail::number_arg(spec, 0), "grid n_ref");
    const double os = detail::number_arg(spec, 1);
    if (os < 0 || os != std::floor(os) || os > 1e6) throw Error("grid oversample must be a nonnegative integer");
    g.oversample = static_cast<int>(os);
    return g;
  }
};

// ---------------------------------------------------------------- kernels

/// D_n(x) = Sum_{k=1}^n sin kx via sin(nx/2) sin((n+1)x/2) / sin(x/2).
inline double dirichlet_sine(index_t n, double x) {
  if (!(x > 0.0 && x <= kPi)) throw Error("dirichlet_sine: x must lie in (0, pi]");
  if (n < 0) throw Error("dirichlet_sine: n must be nonnegative");
  const double dn = static_cast<double>(n);
  return std::sin(dn * x / 2.0) * std::sin((dn + 1.0) * x / 2.0) / std::sin(x / 2.0);
}

/// Reduces x to [0, pi] using oddness and 2pi-periodicity of sine series:
/// returns (x', sign) with sin(kx) = sign * sin(kx') for every integer k.
inline std::pair<double, double> reduce_sine_argument(double x) {
  double r = std::remainder(x, 2.0 * kPi);  // (-pi, pi]
  if (r < 0.0) return {-r, -1.0};
  return {r, 1.0};
}

/// Sum_{k=1}^n b_k sin kx, compensated, terms in increasing k.
inline cplx partial_sum_sine(const CoefficientSequence& b, index_t n, double x) {
  if (n < 1) throw Error("partial_sum_sine: n must be at least 1");
  const auto [xr, sign] = reduce_sine_argument(x);
  if (xr == 0.0) return {};
  const auto v = b.prefix(n);
  CompensatedComplexSum acc;
  for (index_t k = 1; k <= n; ++k) acc.add(v[static_cast<std::size_t>(k - 1)] * std::sin(static_cast<double>(k) * xr));
  return sign * acc.value();
}

/// S_n(x) = c0 + Sum_{k=1}^n (c_k e^{ikx} + c_{-k} e^{-ikx}).
inline cplx partial_sum_two_sided(const TwoSidedSequence& ts, index_t n, double x) {
  if (n < 0) throw Error("partial_sum_two_sided: n must be nonnegative");
  CompensatedComplexSum acc;
  acc.add(ts.c0());
  if (n == 0) return acc.value();
  const auto p = ts.pos().prefix(n);
  const auto q = ts.neg().prefix(n);
  for (index_t k = 1; k <= n; ++k) {
    const cplx e = std::polar(1.0, static_cast<double>(k) * x);
    acc.add(p[static_cast<std::size_t>(k - 1)] * e);
    acc.add(q[static_cast<std::size_t>(k - 1)] * std::conj(e));
  }
  return acc.value();
}

/// The same partial sum regrouped as c0 + I1 + 2i I2 with
/// I1 = Sum (c_k + c_{-k}) e^{-ikx} and I2 = Sum c_k sin kx.
inline cplx partial_sum_two_sided_split(const TwoSidedSequence& ts, index_t n, double x) {
  if (n < 0) throw Error("partial_sum_two_sided: n must be nonnegative");
  if (n == 0) return ts.c0();
  const auto p = ts.pos().prefix(n);
  const auto q = ts.neg().prefix(n);
  CompensatedComplexSum i1;
  CompensatedComplexSum i2;
  for (index_t k = 1; k <= n; ++k) {
    const double kx = static_cast<double>(k) * x;
    const auto j = static_cast<std::size_t>(k - 1);
    i1.add((p[j] + q[j]) * std::polar(1.0, -kx));
    i2.add(p[j] * std::sin(kx));
  }
  return ts.c0() + i1.value() + cplx{0.0, 2.0} * i2.value();
}

namespace detail {

/// Coefficients of the frequencies k in (lo, hi] of a series, ready for
/// repeated evaluation at many points.
class Band {
 public:
  Band(const SeriesInput& in, index_t lo, index_t hi) : lo_(lo), hi_(hi) {
    if (lo < 0 || hi <= lo) throw Error("empty frequency band");
    if (const auto* s = std::get_if<SineSeries>(&in)) {
      sine_ = true;
      pos_ = s->b.prefix(hi);
    } else {
      const auto& ts = std::get<TwoSidedSequence>(in);
      pos_ = ts.pos().prefix(hi);
      neg_ = ts.neg().prefix(hi);
    }
    pos_.erase(pos_.begin(), pos_.begin() + lo);
    if (!neg_.empty()) neg_.erase(neg_.begin(), neg_.begin() + lo);
    for (std::size_t j = 0; j < pos_.size(); ++j) {
      if (pos_[j] != cplx{} || (!sine_ && neg_[j] != cplx{})) nonzero_.push_back(j);
    }
  }

  bool sine() const noexcept { return sine_; }

  /// Sum over the band at x. Dense bands advance e^{ikx} by complex
  /// rotation, resynchronised from std::polar every 256 steps; sparse
  /// bands evaluate each nonzero term directly.
  cplx evaluate(double x) const {
    CompensatedComplexSum acc;
    if (nonzero_.size() * 8 <= pos_.size()) {
      for (std::size_t j : nonzero_) add_term(acc, j, std::polar(1.0, static_cast<double>(lo_ + 1 + static_cast<index_t>(j)) * x));
      return acc.value();
    }
    const cplx step = std::polar(1.0, x);
    cplx e;
    for (std::size_t j = 0; j < pos_.size(); ++j) {
      if (j % 256 == 0) {
        e = std::polar(1.0, static_cast<double>(lo_ + 1 + static_cast<index_t>(j)) * x);
      } else {
        e *= step;
      }
      add_term(acc, j, e);
    }
    return acc.value();
  }

 private:
  void add_term(CompensatedComplexSum& acc, std::size_t j, cplx e) const {
    if (sine_) {
      acc.add(pos_[j] * e.imag());
    } else {
      acc.add(pos_[j] * e);
      acc.add(neg_[j] * std::conj(e));
    }
  }

  index_t lo_;
  index_t hi_;
  bool sine_ = false;
  std::vector<cplx> pos_;
  std::vector<cplx> neg_;
  std::vector<std::size_t> nonzero_;
};

inline std::vector<double> evaluation_points(const SeriesInput& in, const GridSpec& grid) {
  auto pts = grid.points();
  if (std::holds_alternative<TwoSidedSequence>(in)) {
    // Two-sided series live on (-pi, pi]: mirror the grid and add x = 0.
    std::vector<double> all;
    all.reserve(2 * pts.size() + 1);
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      if (*it < kPi) all.push_back(-*it);
    }
    all.push_back(0.0);
    all.insert(all.end(), pts.begin(), pts.end());
    pts = std::move(all);
  }
  if (pts.empty()) throw Error("grid is empty");
  return pts;
}

/// Sum_{k > K} |c_k| for one side: closed form when the family has one,
/// otherwise summed over (K, 16K] and accepted only if its last dyadic
/// block carries at most 1e-3 of the total.
inline std::optional<double> abs_tail_of(const CoefficientSequence& c, index_t K) {
  if (auto t = c.abs_tail(K)) return t;
  if (c.is_explicit()) return std::nullopt;
  const index_t stop = 16 * std::max<index_t>(K, 1);
  CompensatedSum total;
  CompensatedSum last;
  for (index_t k = K + 1; k <= stop; ++k) {
    const double a = std::abs(c.at(k));
    total.add(a);
    if (k > stop / 2) last.add(a);
  }
  const double t = total.value();
  if (t == 0.0) return 0.0;
  if (last.value() <= kStabilizationThreshold * t) return t;
  return std::nullopt;
}

inline std::optional<double> abs_tail_of(const SeriesInput& in, index_t K) {
  if (const auto* s = std::get_if<SineSeries>(&in)) return abs_tail_of(s->b, K);
  const auto& ts = std::get<TwoSidedSequence>(in);
  auto a = abs_tail_of(ts.pos(), K);
  auto b = abs_tail_of(ts.neg(), K);
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

}  // namespace detail

/// Grid estimate of ||S_{N_ref} - S_n|| (frequencies n < k <= N_ref).
///
/// The grid maximum is a lower estimate of the truncated tail's sup-norm;
/// `truncation_slack` bounds Sum_{k > N_ref} |c_k| + |c_{-k}| when it can be
/// computed, so the true tail differs pointwise by at most that much.
struct TailEstimate {
  index_t n = 0;
  index_t n_ref = 0;
  double sup_estimate = 0.0;
  double argmax_x = 0.0;
  std::optional<double> truncation_slack;
  std::size_t grid_points = 0;
};

inline TailEstimate tail_sup_norm(const SeriesInput& in, index_t n, std::optional<index_t> n_ref,
                                  const GridSpec& grid) {
  if (n < 0) throw Error("tail_sup_norm: n must be nonnegative");
  const index_t ref = n_ref.value_or(default_reference_horizon(n));
  if (ref <= n) throw Error("tail_sup_norm: reference horizon must exceed n");
  const auto pts = detail::evaluation_points(in, grid);
  const detail::Band band(in, n, ref);

  TailEstimate out;
  out.n = n;
  out.n_ref = ref;
  out.grid_points = pts.size();
  for (double x : pts) {
    const double v = std::abs(band.evaluate(x));
    if (v > out.sup_estimate) {
      out.sup_estimate = v;
      out.argmax_x = x;
    }
  }
  out.truncation_slack = detail::abs_tail_of(in, ref);
  return out;
}

inline TailEstimate tail_sup_norm(const SeriesInput& in, index_t n) {
  GridSpec grid;
  grid.n_ref = n > 0 ? n : 1;
  return tail_sup_norm(in, n, std::nullopt, grid);
}

// ---------------------------------------------------------------- curves

struct CurveEntry {
  index_t n = 0;
  double sup_estimate = 0.0;
  std::optional<double> truncation_slack;
  double max_k_ck = 0.0;  // max_{n <= k < 2n} k |c_k|
};

struct TailNormCurve {
  std::string subject;
  std::vector<CurveEntry> entries;
  std::string grid;  // e.g. "grid(n,8)"
};

struct CurveOptions {
  std::optional<index_t> n_ref;
  int oversample = 8;
};

/// Per n: the tail sup estimate next to max_{k in [n,2n)} k|c_k|; the two
/// columns co-vanish exactly when "n c_n -> 0 iff uniform convergence".
inline TailNormCurve convergence_curve(const SeriesInput& in, const std::vector<index_t>& n_list,
                                       const CurveOptions& opt = {}) {
  if (n_list.empty()) throw Error("n list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw Error("n list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw Error("n list must be strictly ascending");
  }
  const CoefficientSequence& side =
      std::holds_alternative<SineSeries>(in) ? std::get<SineSeries>(in).b : std::get<TwoSidedSequence>(in).pos();
  TailNormCurve curve;
  curve.subject = label(in);
  curve.grid = "grid(n," + std::to_string(opt.oversample) + ")";
  for (index_t n : n_list) {
    GridSpec g;
    g.n_ref = n;
    g.oversample = opt.oversample;
    const TailEstimate t = tail_sup_norm(in, n, opt.n_ref, g);
    const auto c = side.prefix(2 * n - 1);
    double mk = 0.0;
    for (index_t k = n; k < 2 * n; ++k) mk = std::max(mk, static_cast<double>(k) * std::abs(c[static_cast<std::size_t>(k - 1)]));
    curve.entries.push_back({n, t.sup_estimate, t.truncation_slack, mk});
  }
  return curve;
}

// ---------------------------------------------------------------- proof bounds

struct AbelBound {
  double bound = 0.0;      // (pi/x) (variation + head + residual)
  double variation = 0.0;  // Sum_{k=N}^{H} |c_k - c_{k+1}|
  double head = 0.0;       // |c_N|
  double residual = 0.0;   // |c_{H+1}|; vanishes as H -> infinity for null c
};

/// Direct Sum_{k=N}^{H} c_k sin kx, terms in increasing k.
inline cplx truncated_sine_tail(const CoefficientSequence& c, index_t N, index_t H, double x) {
  CompensatedComplexSum acc;
  for (index_t k = N; k <= H; ++k) acc.add(c.at(k) * std::sin(static_cast<double>(k) * x));
  return acc.value();
}

/// Abel-transformation bound for the sine tail from N, using |D_k(x)| <= pi/x:
/// |Sum_{k=N}^{H} c_k sin kx| <= (pi/x)(Sum_{k=N}^{H} |Delta c_k| + |c_N| + |c_{H+1}|).
inline AbelBound abel_tail_bound(const CoefficientSequence& c, index_t N, double x, index_t horizon) {
  if (!(x > 0.0 && x <= kPi)) throw Error("abel_tail_bound: x must lie in (0, pi]");
  if (N < 1) throw Error("abel_tail_bound: N must be at least 1");
  if (horizon < N) throw Error("abel_tail_bound: horizon must be at least N");
  AbelBound out;
  CompensatedSum var;
  cplx prev = c.at(N);
  out.head = std::abs(prev);
  for (index_t k = N; k <= horizon; ++k) {
    const cplx next = c.at(k + 1);
    var.add(std::abs(prev - next));
    prev = next;
  }
  out.variation = var.value();
  out.residual = std::abs(prev);
  out.bound = (kPi / x) * (out.variation + out.head + out.residual);
#ifdef TRIGCONV_CHECK_BOUNDS
  const double actual = std::abs(truncated_sine_tail(c, N, horizon, x));
  if (actual > out.bound * (1.0 + 1e-12) + 1e-300) throw Error("abel_tail_bound: dominance violated");
#endif
  return out;
}

struct DyadicBlock {
  index_t start = 0;  // 2^j N
  index_t end = 0;    // inclusive, min(2^{j+1} N - 1, horizon)
  double variation = 0.0;
  double max_abs = 0.0;  // |c_{k_j}|, max over [start, start + N0)
  index_t argmax = 0;    // k_j
};

/// Block decomposition of Sum_{k=N}^{H} |Delta c_k| over [2^j N, 2^{j+1} N).
struct DyadicBound {
  index_t N = 1;
  index_t N0 = 1;
  double lhs = 0.0;
  std::vector<DyadicBlock> blocks;

  double block_max_sum() const {
    CompensatedSum s;
    for (const auto& b : blocks) s.add(b.max_abs);
    return s.value();
  }

  /// LHS <= M * Sum_j |c_{k_j}|.
  bool dominated_by(double M) const { return leq_tol(lhs, M * block_max_sum()); }

  /// First block whose variation exceeds M |c_{k_j}|.
  std::optional<std::size_t> first_block_violation(double M) const {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (!leq_tol(blocks[j].variation, M * blocks[j].max_abs)) return j;
    }
    return std::nullopt;
  }

  /// eps = max_j k_j |c_{k_j}|; the geometric step asserts
  /// Sum_j |c_{k_j}| <= eps N^{-1} Sum_j 2^{-j}. Returns (eps, lhs, rhs).
  std::tuple<double, double, double> geometric_step() const {
    double eps = 0.0;
    CompensatedSum geo;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      eps = std::max(eps, static_cast<double>(blocks[j].argmax) * blocks[j].max_abs);
      geo.add(std::exp2(-static_cast<double>(j)));
    }
    return {eps, block_max_sum(), eps / static_cast<double>(N) * geo.value()};
  }
};

inline DyadicBound dyadic_variation_bound(const CoefficientSequence& c, index_t N, index_t N0, index_t horizon) {
  if (N < 1) throw Error("dyadic_variation_bound: N must be at least 1");
  if (N0 < 1) throw Error("dyadic_variation_bound: N0 must be at least 1");
  if (horizon < N) throw Error("dyadic_variation_bound: horizon must be at least N");
  DyadicBound out;
  out.N = N;
  out.N0 = N0;
  const auto v = detail::one_based(c, std::max(horizon + 1, horizon + N0));
  CompensatedSum total;
  for (index_t start = N; start <= horizon; start *= 2) {
    DyadicBlock b;
    b.start = start;
    b.end = std::min(2 * start - 1, horizon);
    CompensatedSum var;
    for (index_t k = b.start; k <= b.end; ++k) {
      var.add(std::abs(v[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k + 1)]));
    }
    b.variation = var.value();
    b.argmax = start;
    for (index_t k = start; k < start + N0; ++k) {
      const double a = std::abs(v[static_cast<std::size_t>(k)]);
      if (a > b.max_abs) {
        b.max_abs = a;
        b.argmax = k;
      }
    }
    total.add(b.variation);
    out.blocks.push_back(b);
  }
  out.lhs = total.value();
  return out;
}

/// Test-point arithmetic behind the necessity of n c_n -> 0: at
/// x0 = pi/(8n) every k in (n, 4n] has sin(k x0) >= sin(pi/8), and
///   2 sin(pi/8) Sum Re c_k <= 2 Sum Re c_k sin(k x0)
///     <= |Sum c_k (e^{ikx0} - e^{-ikx0})|
///     <= |S_4n - S_n|(x0) + Sum |c_k + c_{-k}|
///     <= ||S_4n - S_n|| + Sum |c_k + c_{-k}|,
/// sums over k in (n, 4n]. The lower-bound leg compares
/// Sum_{k=n}^{4n-1} Re c_k with floor(n/N0) |c_2n| / (max(M,1) M(theta0)),
/// M the (2*) constant over m in [n, 2n].
struct Lemma2Probe {
  index_t n = 0;
  index_t N0 = 1;
  double x0 = 0.0;
  double min_sine = 0.0;  // min over k in (n, 4n] of sin(k x0)
  double sine_floor = 0.0;  // sin(pi/8)
  bool premises_hold = false;  // condition (4) on [1, 4n]

  double re_sum = 0.0;            // Sum_{k=n+1}^{4n} Re c_k
  double weighted_re_sum = 0.0;   // 2 Sum Re c_k sin(k x0)
  double sine_mass = 0.0;         // |Sum c_k (e^{ikx0} - e^{-ikx0})|
  double pointwise_diff = 0.0;    // |S_4n - S_n|(x0)
  double norm_estimate = 0.0;     // grid max of |S_4n - S_n|
  double symmetric_sum = 0.0;     // Sum |c_k + c_{-k}|

  double constant_2star = 0.0;
  double sector_constant = 1.0;
  double lower_bound_value = 0.0;  // floor(n/N0)|c_2n| / (max(M,1) M(theta0))
  double re_sum_wide = 0.0;        // Sum_{k=n}^{4n-1} Re c_k

  bool sine_floor_holds() const { return min_sine >= sine_floor; }
  /// Inequality (7): 2 Sum Re c_k sin(k x0) <= ||S_4n - S_n|| + Sum |c_k + c_{-k}|.
  double relation_slack() const { return norm_estimate + symmetric_sum - weighted_re_sum; }
  bool relation_holds() const { return leq_tol(weighted_re_sum, norm_estimate + symmetric_sum); }
  bool chain_holds() const {
    return leq_tol(2.0 * sine_floor * re_sum, weighted_re_sum) && leq_tol(weighted_re_sum, sine_mass) &&
           leq_tol(sine_mass, pointwise_diff + symmetric_sum) && leq_tol(pointwise_diff, norm_estimate);
  }
  bool lower_bound_holds() const { return leq_tol(lower_bound_value, re_sum_wide); }
};

inline Lemma2Probe lemma2_testpoint_probe(const TwoSidedSequence& ts, index_t n, const Sector& s, index_t N0 = 1) {
  if (n < 1) throw Error("test-point probe: n must be at least 1");
  if (N0 < 1) throw Error("test-point probe: N0 must be at least 1");
  Lemma2Probe out;
  out.n = n;
  out.N0 = N0;
  out.x0 = kPi / (8.0 * static_cast<double>(n));
  out.sine_floor = std::sin(kPi / 8.0);
  out.premises_hold = check_condition_4(ts, s, 4 * n).holds();
  out.sector_constant = sector_dominance_constant(s);

  const index_t top = 4 * n + N0 + 1;
  const auto p = detail::one_based(ts.pos(), top);
  const auto q = detail::one_based(ts.neg(), top);

  out.min_sine = 1.0;
  CompensatedSum re, wre, wide;
  CompensatedComplexSum mass;
  CompensatedSum sym;
  for (index_t k = n + 1; k <= 4 * n; ++k) {
    const auto j = static_cast<std::size_t>(k);
    const double sn = std::sin(static_cast<double>(k) * out.x0);
    out.min_sine = std::min(out.min_sine, sn);
    re.add(p[j].real());
    wre.add(2.0 * p[j].real() * sn);
    mass.add(p[j] * cplx{0.0, 2.0 * sn});
    sym.add(std::abs(p[j] + q[j]));
  }
  for (index_t k = n; k < 4 * n; ++k) wide.add(p[static_cast<std::size_t>(k)].real());
  out.re_sum = re.value();
  out.weighted_re_sum = wre.value();
  out.sine_mass = std::abs(mass.value());
  out.symmetric_sum = sym.value();
  out.re_sum_wide = wide.value();

  const SeriesInput in{ts};
  const detail::Band band(in, n, 4 * n);
  out.pointwise_diff = std::abs(band.evaluate(out.x0));
  GridSpec grid;
  grid.n_ref = n;
  grid.extra = {out.x0};
  out.norm_estimate = out.pointwise_diff;
  for (double x : detail::evaluation_points(in, grid)) out.norm_estimate = std::max(out.norm_estimate, std::abs(band.evaluate(x)));

  // (2*) constant over m in [n, 2n]: the windows the lower-bound leg uses.
  std::vector<double> diffs(static_cast<std::size_t>(4 * n) + 1, 0.0);
  for (index_t k = 1; k <= 4 * n; ++k) diffs[static_cast<std::size_t>(k)] = std::abs(p[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k + 1)]);
  const RangeSumTree tree(diffs);
  double M = 0.0;
  for (index_t m = n; m <= 2 * n; ++m) {
    const double L = tree.sum(static_cast<std::size_t>(m), static_cast<std::size_t>(2 * m));
    double Rm = 0.0;
    for (index_t k = m; k < m + N0; ++k) Rm = std::max(Rm, std::abs(p[static_cast<std::size_t>(k)]));
    if (Rm > 0.0) {
      M = std::max(M, L / Rm);
    } else if (L > 0.0) {
      M = std::numeric_limits<double>::infinity();
    }
  }
  out.constant_2star = M;
  const double blocks = static_cast<double>(n / N0);
  out.lower_bound_value = blocks * std::abs(p[static_cast<std::size_t>(2 * n)]) / (std::max(M, 1.0) * out.sector_constant);
  return out;
}

}  // namespace trigconv
