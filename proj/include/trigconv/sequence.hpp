#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trigconv/random.hpp"
#include "trigconv/summation.hpp"

namespace trigconv {

using cplx = std::complex<double>;
using index_t = std::int64_t;

inline constexpr double kPi = std::numbers::pi;

/// Relative tolerance for "non-increasing" / "non-negative" style comparisons.
inline constexpr double kCompareTol = 1e-12;

/// Default truncation horizon for generator-backed sequences (2^20).
inline constexpr index_t kDefaultGeneratorHorizon = index_t{1} << 20;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a >= b up to kCompareTol scaled by the larger magnitude.
inline bool geq_tol(double a, double b) noexcept {
  if (a >= b) return true;
  return a >= b - kCompareTol * std::max(std::abs(a), std::abs(b));
}

inline bool leq_tol(double a, double b) noexcept { return geq_tol(b, a); }

inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, end);
}

// ---------------------------------------------------------------- sectors

/// Closed sector K(theta0) = {z : |arg z| <= theta0} in the right half-plane.
class Sector {
 public:
  explicit Sector(double theta0 = 0.0) : theta0_(theta0) {
    if (!(theta0 >= 0.0 && theta0 < kPi / 2)) {
      throw Error("sector angle must lie in [0, pi/2)");
    }
  }
  double theta0() const noexcept { return theta0_; }

 private:
  double theta0_;
};

/// Exact membership; zero belongs to every sector.
inline bool in_sector(cplx z, const Sector& s) noexcept {
  if (z == cplx{}) return true;
  return std::abs(std::arg(z)) <= s.theta0();
}

/// Membership with round-off allowances: |z| below `scale * kCompareTol`
/// counts as zero, and the angle may exceed theta0 by kCompareTol.
inline bool in_sector_tol(cplx z, const Sector& s, double scale) noexcept {
  if (z == cplx{}) return true;
  // Distance from z to the closed cone, compared against the relative tolerance.
  const double excess = std::abs(std::arg(z)) - s.theta0();
  if (excess <= 0) return true;
  const double dist = excess >= kPi / 2 ? std::abs(z) : std::abs(z) * std::sin(excess);
  return dist <= kCompareTol * std::max(scale, std::abs(z));
}

/// Least M with |z| <= M Re z on K(theta0).
inline double sector_dominance_constant(const Sector& s) noexcept { return 1.0 / std::cos(s.theta0()); }

// ---------------------------------------------------------------- sequences

/// One-sided sequence c_n, n >= n_start. Either an explicit finite prefix or
/// a closed-form generator. Immutable and cheap to copy.
class CoefficientSequence {
 public:
  using Generator = std::function<cplx(index_t)>;
  /// Sum_{k > K} |c_k| (exact or an upper bound); +inf when divergent.
  using AbsTail = std::function<double(index_t)>;

  static CoefficientSequence explicit_values(std::vector<cplx> values, index_t n_start = 1,
                                             std::string label = "explicit") {
    for (const auto& v : values) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error("explicit values must be finite");
      }
    }
    CoefficientSequence s;
    s.is_real_ = std::all_of(values.begin(), values.end(), [](cplx v) { return v.imag() == 0.0; });
    s.values_ = std::make_shared<const std::vector<cplx>>(std::move(values));
    s.n_start_ = n_start;
    s.label_ = std::move(label);
    return s;
  }

  static CoefficientSequence explicit_real(const std::vector<double>& values, index_t n_start = 1) {
    return explicit_values(std::vector<cplx>(values.begin(), values.end()), n_start);
  }

  static CoefficientSequence generator(std::string label, Generator gen, bool is_real, index_t n_start = 1,
                                       AbsTail abs_tail = {}) {
    CoefficientSequence s;
    s.gen_ = std::move(gen);
    s.is_real_ = is_real;
    s.n_start_ = n_start;
    s.label_ = std::move(label);
    s.abs_tail_ = std::move(abs_tail);
    return s;
  }

  static CoefficientSequence zero() {
    return generator(
        "zero", [](index_t) { return cplx{}; }, true, 1, [](index_t) { return 0.0; });
  }

  bool is_explicit() const noexcept { return values_ != nullptr; }
  bool is_real() const noexcept { return is_real_; }
  index_t n_start() const noexcept { return n_start_; }
  const std::string& label() const noexcept { return label_; }

  /// Number of available terms; nullopt for generators (unbounded).
  std::optional<index_t> length() const noexcept {
    if (values_) return static_cast<index_t>(values_->size());
    return std::nullopt;
  }

  cplx at(index_t n) const {
    if (n < n_start_) throw Error("index below sequence start");
    if (values_) {
      const auto j = static_cast<std::size_t>(n - n_start_);
      if (j >= values_->size()) throw Error("insufficient length");
      return (*values_)[j];
    }
    return gen_(n);
  }

  /// Terms n_start .. n_start + count - 1.
  std::vector<cplx> prefix(index_t count) const {
    if (count < 1) throw Error("prefix length must be at least 1");
    if (values_) {
      if (static_cast<index_t>(values_->size()) < count) throw Error("insufficient length");
      return {values_->begin(), values_->begin() + count};
    }
    std::vector<cplx> out(static_cast<std::size_t>(count));
    for (index_t j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = gen_(n_start_ + j);
    return out;
  }

  /// Closed-form Sum_{k > K} |c_k| when the family provides one.
  std::optional<double> abs_tail(index_t K) const {
    if (!abs_tail_) return std::nullopt;
    const double t = abs_tail_(K);
    if (!std::isfinite(t)) return std::nullopt;
    return t;
  }

  /// Same sequence scaled by lambda (tail hook scales with it).
  CoefficientSequence scaled(cplx lambda) const {
    if (values_) {
      std::vector<cplx> v(*values_);
      for (auto& x : v) x *= lambda;
      return explicit_values(std::move(v), n_start_, label_);
    }
    AbsTail tail;
    if (abs_tail_) {
      tail = [t = abs_tail_, m = std::abs(lambda)](index_t K) { return m * t(K); };
    }
    return generator(
        label_, [g = gen_, lambda](index_t n) { return lambda * g(n); }, is_real_ && lambda.imag() == 0.0, n_start_,
        std::move(tail));
  }

 private:
  CoefficientSequence() = default;

  std::shared_ptr<const std::vector<cplx>> values_;
  Generator gen_;
  AbsTail abs_tail_;
  bool is_real_ = true;
  index_t n_start_ = 1;
  std::string label_;
};

/// Default horizon: data length minus one for explicit data (so every
/// difference c_n - c_{n+1}, n <= N, is available), 2^20 for generators.
inline index_t default_horizon(const CoefficientSequence& s) {
  if (auto len = s.length()) return std::max<index_t>(*len - 1, 1);
  return kDefaultGeneratorHorizon;
}

/// Positive non-decreasing weight R(n). Validation of positivity and
/// monotonicity happens where a range is known (the checkers).
class WeightSequence {
 public:
  explicit WeightSequence(CoefficientSequence seq) : seq_(std::move(seq)) {
    if (!seq_.is_real()) throw Error("weight sequence must be real");
  }
  static WeightSequence constant(double c = 1.0) {
    return WeightSequence(CoefficientSequence::generator(
        c == 1.0 ? "const" : "const(" + format_number(c) + ")", [c](index_t) { return cplx{c}; }, true));
  }

  double at(index_t n) const { return seq_.at(n).real(); }
  std::vector<double> prefix(index_t count) const {
    const auto v = seq_.prefix(count);
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx z) { return z.real(); });
    return out;
  }
  const std::string& label() const noexcept { return seq_.label(); }
  const CoefficientSequence& sequence() const noexcept { return seq_; }

 private:
  CoefficientSequence seq_;
};

/// {c_k}_{k in Z}: c0 plus the positive and negative sides, k >= 1.
class TwoSidedSequence {
 public:
  TwoSidedSequence(cplx c0, CoefficientSequence pos, CoefficientSequence neg)
      : c0_(c0), pos_(std::move(pos)), neg_(std::move(neg)) {
    if (pos_.length() != neg_.length()) throw Error("two-sided sequence: sides differ in length");
    if (pos_.n_start() != 1 || neg_.n_start() != 1) throw Error("two-sided sequence: sides must start at k = 1");
  }

  /// Sum b_n sin nx written as Sum c_k e^{ikx}: c_k = b_k/(2i), c_{-k} = -c_k.
  static TwoSidedSequence from_sine(const CoefficientSequence& b) {
    const cplx half_over_i{0.0, -0.5};
    return {cplx{}, b.scaled(half_over_i), b.scaled(-half_over_i)};
  }

  static TwoSidedSequence zero() { return {cplx{}, CoefficientSequence::zero(), CoefficientSequence::zero()}; }

  cplx c0() const noexcept { return c0_; }
  const CoefficientSequence& pos() const noexcept { return pos_; }
  const CoefficientSequence& neg() const noexcept { return neg_; }
  /// c_k for any integer k.
  cplx at(index_t k) const {
    if (k == 0) return c0_;
    return k > 0 ? pos_.at(k) : neg_.at(-k);
  }
  std::string label() const { return "twosided(" + pos_.label() + "," + neg_.label() + ")"; }

 private:
  cplx c0_;
  CoefficientSequence pos_;
  CoefficientSequence neg_;
};

// ---------------------------------------------------------------- family specs

struct SpecArg;

/// Parsed `family_id(arg,...)[@seed]`; arguments are numbers or nested specs.
struct FamilySpec {
  std::string name;
  std::vector<SpecArg> args;
  std::optional<std::uint64_t> seed;

  bool operator==(const FamilySpec&) const = default;
};

struct SpecArg {
  std::variant<double, FamilySpec> value;

  bool operator==(const SpecArg&) const = default;
  bool is_number() const noexcept { return std::holds_alternative<double>(value); }
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FamilySpec parse_all() {
    FamilySpec spec = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("cannot parse family spec '" + std::string(text_) + "': " + what + " at offset " +
                std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  FamilySpec parse_spec() {
    skip_ws();
    FamilySpec spec;
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(text_[start]))) fail("expected family name");
    spec.name = std::string(text_.substr(start, pos_ - start));
    if (peek('(')) {
      ++pos_;
      if (!peek(')')) {
        spec.args.push_back(parse_arg());
        while (peek(',')) {
          ++pos_;
          spec.args.push_back(parse_arg());
        }
      }
      expect(')');
    }
    if (peek('@')) {
      ++pos_;
      skip_ws();
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), seed);
      if (ec != std::errc{}) fail("expected unsigned seed");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      spec.seed = seed;
    }
    return spec;
  }

  SpecArg parse_arg() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected argument");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t p = pos_;
      if (text_[p] == '+') ++p;
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(text_.data() + p, text_.data() + text_.size(), x);
      if (ec != std::errc{} || !std::isfinite(x)) fail("expected number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return SpecArg{x};
    }
    return SpecArg{parse_spec()};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline double number_arg(const FamilySpec& s, std::size_t i) {
  if (i >= s.args.size() || !s.args[i].is_number()) {
    throw Error("family '" + s.name + "': argument " + std::to_string(i + 1) + " must be a number");
  }
  return std::get<double>(s.args[i].value);
}

inline const FamilySpec& spec_arg(const FamilySpec& s, std::size_t i) {
  if (i >= s.args.size() || s.args[i].is_number()) {
    throw Error("family '" + s.name + "': argument " + std::to_string(i + 1) + " must be a family spec");
  }
  return std::get<FamilySpec>(s.args[i].value);
}

inline void expect_arity(const FamilySpec& s, std::size_t lo, std::size_t hi) {
  if (s.args.size() < lo || s.args.size() > hi) {
    throw Error("family '" + s.name + "': expected " + std::to_string(lo) +
                (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments, got " + std::to_string(s.args.size()));
  }
}

inline std::uint64_t require_seed(const FamilySpec& s) {
  if (!s.seed) throw Error("family '" + s.name + "' requires an explicit @seed");
  return *s.seed;
}

inline index_t require_count(double x, const char* what) {
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e15) throw Error(std::string(what) + " must be a positive integer");
  return static_cast<index_t>(x);
}

/// floor(log2 n) for n >= 1.
inline int floor_log2(index_t n) noexcept { return std::bit_width(static_cast<std::uint64_t>(n)) - 1; }

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) { return detail::SpecParser(text).parse_all(); }

/// Canonical text form; numbers use the shortest round-trip representation.
inline std::string to_string(const FamilySpec& spec) {
  std::string out = spec.name;
  if (!spec.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < spec.args.size(); ++i) {
      if (i) out += ',';
      const auto& a = spec.args[i];
      out += a.is_number() ? format_number(std::get<double>(a.value)) : to_string(std::get<FamilySpec>(a.value));
    }
    out += ')';
  }
  if (spec.seed) out += "@" + std::to_string(*spec.seed);
  return out;
}

inline WeightSequence make_weight(const FamilySpec& spec);

/// Builds the generator for a coefficient family.
///
///   zero                     c_n = 0
///   harmonic(p)              n^-p
///   log_damped / logdamped   1/(n log(n+2))
///   quasimono(a, p)          n^a 2^{-p floor(log2 n)}   (b_n/n^a non-increasing)
///   lacunary(a)              2^{-a k} at n = 2^k, k >= 1; else 0
///   rbv_block(p, w)          ceil(n/w)^-p               (blockwise constant)
///   geometric(r)             r^n, |r| < 1
///   orvqm(R, base)           R(n) base_n                (Delta(c_n/R(n)) = Delta base_n)
///   rotated(theta, base)     (1 + i tan theta) base_n
///   perturbed(w, base, e)@s  base_n (1 + e u_j), u_j ~ U[-1,1) per block j of width w
///   random_orvqm(q, t, H)@s  Sum_{j=n}^{H} d_j, d_j = u_j j^-q e^{+-i t}, 20% zeros
///   random_rbv(q, H)@s       2^{-q floor(log2 n)} e^{i phi_block}, 0 beyond H
inline CoefficientSequence make_sequence(const FamilySpec& spec) {
  using detail::expect_arity;
  using detail::number_arg;
  const std::string label = to_string(spec);
  const std::string& id = spec.name;

  if (id == "zero") {
    expect_arity(spec, 0, 0);
    return CoefficientSequence::generator(
        label, [](index_t) { return cplx{}; }, true, 1, [](index_t) { return 0.0; });
  }
  if (id == "harmonic") {
    expect_arity(spec, 1, 1);
    const double p = number_arg(spec, 0);
    CoefficientSequence::AbsTail tail;
    if (p > 1.0) {
      // Sum_{k>K} k^-p <= integral_K^inf t^-p dt, plus the first term for K = 0.
      tail = [p](index_t K) {
        if (K < 1) return 1.0 + 1.0 / (p - 1.0);
        return std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0);
      };
    }
    return CoefficientSequence::generator(
        label, [p](index_t n) { return cplx{std::pow(static_cast<double>(n), -p)}; }, true, 1, std::move(tail));
  }
  if (id == "log_damped" || id == "logdamped") {
    expect_arity(spec, 0, 0);
    return CoefficientSequence::generator(
        label,
        [](index_t n) {
          const double x = static_cast<double>(n);
          return cplx{1.0 / (x * std::log(x + 2.0))};
        },
        true);
  }
  if (id == "quasimono") {
    expect_arity(spec, 2, 2);
    const double alpha = number_arg(spec, 0);
    const double p = number_arg(spec, 1);
    if (alpha < 0.0) throw Error("quasimono: alpha must be nonnegative");
    return CoefficientSequence::generator(
        label,
        [alpha, p](index_t n) {
          return cplx{std::pow(static_cast<double>(n), alpha) * std::exp2(-p * detail::floor_log2(n))};
        },
        true);
  }
  if (id == "lacunary") {
    expect_arity(spec, 1, 1);
    const double alpha = number_arg(spec, 0);
    if (!(alpha > 0.0)) throw Error("lacunary: alpha must be positive");
    auto tail = [alpha](index_t K) {
      int k0 = std::max(1, detail::floor_log2(std::max<index_t>(K, 1)) + 1);
      return std::exp2(-alpha * k0) / (1.0 - std::exp2(-alpha));
    };
    return CoefficientSequence::generator(
        label,
        [alpha](index_t n) {
          if (n < 2 || !std::has_single_bit(static_cast<std::uint64_t>(n))) return cplx{};
          return cplx{std::exp2(-alpha * detail::floor_log2(n))};
        },
        true, 1, tail);
  }
  if (id == "rbv_block") {
    expect_arity(spec, 2, 2);
    const double p = number_arg(spec, 0);
    const index_t w = detail::require_count(number_arg(spec, 1), "rbv_block width");
    return CoefficientSequence::generator(
        label, [p, w](index_t n) { return cplx{std::pow(static_cast<double>((n + w - 1) / w), -p)}; }, true);
  }
  if (id == "geometric") {
    expect_arity(spec, 1, 1);
    const double r = number_arg(spec, 0);
    if (!(std::abs(r) < 1.0)) throw Error("geometric: |r| must be below 1");
    return CoefficientSequence::generator(
        label, [r](index_t n) { return cplx{std::pow(r, static_cast<double>(n))}; }, true, 1,
        [r](index_t K) { return std::pow(std::abs(r), static_cast<double>(std::max<index_t>(K, 0) + 1)) / (1.0 - std::abs(r)); });
  }
  if (id == "orvqm") {
    expect_arity(spec, 2, 2);
    const WeightSequence weight = make_weight(detail::spec_arg(spec, 0));
    const CoefficientSequence base = make_sequence(detail::spec_arg(spec, 1));
    return CoefficientSequence::generator(
        label, [weight, base](index_t n) { return weight.at(n) * base.at(n); }, base.is_real());
  }
  if (id == "rotated") {
    expect_arity(spec, 2, 2);
    const double theta = number_arg(spec, 0);
    if (!(std::abs(theta) < kPi / 2)) throw Error("rotated: |theta| must be below pi/2");
    const CoefficientSequence base = make_sequence(detail::spec_arg(spec, 1));
    auto s = base.scaled(cplx{1.0, std::tan(theta)});
    return CoefficientSequence::generator(
        label, [s](index_t n) { return s.at(n); }, s.is_real(), 1,
        [s](index_t K) { return s.abs_tail(K).value_or(std::numeric_limits<double>::infinity()); });
  }
  if (id == "perturbed") {
    expect_arity(spec, 3, 3);
    const index_t w = detail::require_count(number_arg(spec, 0), "perturbed block width");
    const CoefficientSequence base = make_sequence(detail::spec_arg(spec, 1));
    const double eps = number_arg(spec, 2);
    if (!(std::abs(eps) < 1.0)) throw Error("perturbed: |eps| must be below 1");
    const SplitMix64 rng(detail::require_seed(spec));
    return CoefficientSequence::generator(
        label,
        [base, w, eps, rng](index_t n) {
          const auto block = static_cast<std::uint64_t>((n - 1) / w);
          return base.at(n) * (1.0 + eps * (2.0 * rng.uniform(block) - 1.0));
        },
        base.is_real(), 1,
        [base, eps](index_t K) {
          return (1.0 + std::abs(eps)) * base.abs_tail(K).value_or(std::numeric_limits<double>::infinity());
        });
  }
  if (id == "random_orvqm") {
    expect_arity(spec, 3, 3);
    const double q = number_arg(spec, 0);
    const Sector sector(number_arg(spec, 1));
    const index_t H = detail::require_count(number_arg(spec, 2), "random_orvqm support");
    const SplitMix64 rng(detail::require_seed(spec));
    const SplitMix64 zero_draw = rng.fork(1), size_draw = rng.fork(2), side_draw = rng.fork(3);
    // Accumulate sector-valued decrements backward from a zero tail, so
    // Delta a_n = d_n lies in the sector by construction.
    auto values = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(H) + 1);
    auto tails = std::make_shared<std::vector<double>>(static_cast<std::size_t>(H) + 1);
    CompensatedComplexSum acc;
    CompensatedSum abs_acc;
    for (index_t j = H; j >= 1; --j) {
      const auto u = static_cast<std::uint64_t>(j);
      (*tails)[static_cast<std::size_t>(j)] = abs_acc.value();
      if (zero_draw.uniform(u) >= 0.2) {
        const double mag = (1.0 - size_draw.uniform(u)) * std::pow(static_cast<double>(j), -q);
        const double phi = side_draw.uniform(u) < 0.5 ? -sector.theta0() : sector.theta0();
        acc.add(std::polar(mag, phi));
      }
      (*values)[static_cast<std::size_t>(j)] = acc.value();
      abs_acc.add(std::abs((*values)[static_cast<std::size_t>(j)]));
    }
    (*tails)[0] = abs_acc.value();
    return CoefficientSequence::generator(
        label,
        [values, H](index_t n) { return n > H ? cplx{} : (*values)[static_cast<std::size_t>(n)]; },
        sector.theta0() == 0.0, 1,
        [tails, H](index_t K) { return K >= H ? 0.0 : (*tails)[static_cast<std::size_t>(std::max<index_t>(K, 0))]; });
  }
  if (id == "random_rbv") {
    expect_arity(spec, 2, 2);
    const double q = number_arg(spec, 0);
    const index_t H = detail::require_count(number_arg(spec, 1), "random_rbv support");
    const SplitMix64 rng(detail::require_seed(spec));
    return CoefficientSequence::generator(
        label,
        [q, H, rng](index_t n) {
          if (n > H) return cplx{};
          const int j = detail::floor_log2(n);
          return std::polar(std::exp2(-q * j), 2.0 * kPi * rng.uniform(static_cast<std::uint64_t>(j)));
        },
        false);
  }
  throw Error("unknown family '" + id + "'");
}

/// Weight families: const[(c)] / one, power(beta), log (= log(n+2)), exp2 (= 2^n).
inline WeightSequence make_weight(const FamilySpec& spec) {
  using detail::expect_arity;
  using detail::number_arg;
  const std::string label = to_string(spec);
  const std::string& id = spec.name;
  if (id == "const" || id == "one") {
    expect_arity(spec, 0, 1);
    const double c = spec.args.empty() ? 1.0 : number_arg(spec, 0);
    return WeightSequence(CoefficientSequence::generator(label, [c](index_t) { return cplx{c}; }, true));
  }
  if (id == "power") {
    expect_arity(spec, 1, 1);
    const double beta = number_arg(spec, 0);
    return WeightSequence(CoefficientSequence::generator(
        label, [beta](index_t n) { return cplx{std::pow(static_cast<double>(n), beta)}; }, true));
  }
  if (id == "log") {
    expect_arity(spec, 0, 0);
    return WeightSequence(CoefficientSequence::generator(
        label, [](index_t n) { return cplx{std::log(static_cast<double>(n) + 2.0)}; }, true));
  }
  if (id == "exp2") {
    expect_arity(spec, 0, 0);
    return WeightSequence(CoefficientSequence::generator(
        label, [](index_t n) { return cplx{std::exp2(static_cast<double>(n))}; }, true));
  }
  throw Error("unknown weight family '" + id + "'");
}

inline WeightSequence parse_weight(std::string_view text) { return make_weight(parse_family(text)); }

// ---------------------------------------------------------------- text sources

/// One value per line, `re` or `re,im`; blank lines and `#` comments skipped.
inline std::vector<cplx> parse_value_lines(std::istream& in) {
  std::vector<cplx> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(first, last - first + 1);
    const auto comma = body.find(',');
    auto parse = [&](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw Error("line " + std::to_string(lineno) + ": cannot parse value '" + std::string(s) + "'");
      }
      return x;
    };
    if (comma == std::string::npos) {
      out.emplace_back(parse(body), 0.0);
    } else {
      out.emplace_back(parse(std::string_view(body).substr(0, comma)),
                       parse(std::string_view(body).substr(comma + 1)));
    }
  }
  return out;
}

/// Accepts `explicit:[v1,v2,...]`, `file:PATH` or a family spec.
inline CoefficientSequence sequence_from_text(std::string_view text) {
  if (text.starts_with("explicit:")) {
    std::string_view body = text.substr(9);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw Error("explicit sequence must look like explicit:[v1,v2,...]");
    }
    std::string lines(body.substr(1, body.size() - 2));
    std::replace(lines.begin(), lines.end(), ',', '\n');
    std::istringstream in(lines);
    auto values = parse_value_lines(in);
    if (values.empty()) throw Error("explicit sequence is empty");
    return CoefficientSequence::explicit_values(std::move(values), 1, std::string(text));
  }
  if (text.starts_with("file:")) {
    const std::string path(text.substr(5));
    std::ifstream in(path);
    if (!in) throw Error("cannot open sequence file '" + path + "'");
    auto values = parse_value_lines(in);
    if (values.empty()) throw Error("sequence file '" + path + "' holds no values");
    return CoefficientSequence::explicit_values(std::move(values), 1, std::string(text));
  }
  return make_sequence(parse_family(text));
}

/// `twosided(POS,NEG)` builds a two-sided sequence with c0 = 0; any other
/// text is read as the sine coefficients of Sum b_n sin nx.
inline bool is_two_sided_text(std::string_view text) { return text.starts_with("twosided("); }

inline TwoSidedSequence two_sided_from_text(std::string_view text) {
  const FamilySpec spec = parse_family(text);
  if (spec.name != "twosided") throw Error("expected twosided(POS,NEG)");
  detail::expect_arity(spec, 2, 2);
  return {cplx{}, make_sequence(detail::spec_arg(spec, 0)), make_sequence(detail::spec_arg(spec, 1))};
}

}  // namespace trigconv
