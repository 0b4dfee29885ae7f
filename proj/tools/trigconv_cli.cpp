// trigconv: classify coefficient sequences, tabulate tail sup-norm curves and
// run the theorem verification harness.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trigconv.hpp"

namespace {

using namespace trigconv;

constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct UsageError : Error {
  using Error::Error;
};

std::vector<index_t> parse_index_list(const std::string& text) {
  // "a,b,c" or "a..b:dyadic"
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto colon = text.find(':', dots);
    const std::string mode = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (mode != "dyadic") throw UsageError("range '" + text + "' needs the form a..b:dyadic");
    index_t lo = 0, hi = 0;
    try {
      lo = std::stoll(text.substr(0, dots));
      hi = std::stoll(text.substr(dots + 2, colon - dots - 2));
    } catch (const std::exception&) {
      throw UsageError("cannot parse range '" + text + "'");
    }
    if (lo < 1 || hi < lo) throw UsageError("range '" + text + "' must satisfy 1 <= a <= b");
    std::vector<index_t> out;
    for (index_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  std::vector<index_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    index_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse list entry '" + item + "'");
    }
    if (used != item.size()) throw UsageError("cannot parse list entry '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string input_digest(const std::string& spec) {
  if (spec.starts_with("file:")) return hex64(fnv1a64(read_text_file(spec.substr(5))));
  return hex64(fnv1a64(spec));
}

// Writes `content` to `out` (plus a manifest sidecar) or to stdout.
void emit(const std::string& content, const std::optional<std::string>& out, RunManifest manifest) {
  if (!out) {
    std::cout << content;
    return;
  }
  write_text_file(*out, content);
  manifest.output_digest = hex64(fnv1a64(content));
  write_text_file(*out + ".manifest.json", to_json(manifest).dump(2) + "\n");
}

json index_array(const std::vector<index_t>& v) { return json(v); }

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string spec;
  std::optional<index_t> horizon;
  std::optional<index_t> m_max;
  std::string n0 = "1,2,4,8,16";
  double theta0 = 0.0;
  std::optional<std::string> weight;
  std::vector<double> alphas;
  std::optional<std::string> out;
};

int run_classify(const ClassifyArgs& a, RunManifest manifest) {
  ClassifyOptions opt;
  opt.horizon = a.horizon;
  opt.m_max = a.m_max;
  opt.n0_list = parse_index_list(a.n0);
  for (index_t n0 : opt.n0_list) {
    if (n0 < 1) throw UsageError("--n0 entries must be at least 1");
  }
  opt.theta0 = a.theta0;
  opt.alphas = a.alphas;
  if (a.weight) opt.weight = parse_family(*a.weight);

  Classification result;
  if (is_two_sided_text(a.spec)) {
    result = classify(two_sided_from_text(a.spec), opt);
  } else {
    result = classify(sequence_from_text(a.spec), opt);
  }
  manifest.defaults = json{{"horizon", result.horizon},
                           {"m_max", a.m_max ? json(*a.m_max) : json("N/4")},
                           {"n0", index_array(opt.n0_list)},
                           {"theta0", opt.theta0},
                           {"weight", a.weight ? to_string(*opt.weight) : "const"},
                           {"alphas", opt.alphas},
                           {"stabilization_threshold", kStabilizationThreshold},
                           {"null_trend_tolerance", opt.null_tolerance},
                           {"compare_tolerance", kCompareTol}};
  manifest.input_digests.emplace_back("spec", input_digest(a.spec));
  emit(to_json(result).dump(2) + "\n", a.out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------- curve

struct CurveArgs {
  std::string spec;
  std::string n_list;
  std::optional<index_t> nref;
  int oversample = 8;
  bool as_json = false;
  std::optional<std::string> out;
};

int run_curve(const CurveArgs& a, RunManifest manifest) {
  const std::vector<index_t> ns = parse_index_list(a.n_list);
  CurveOptions opt;
  opt.n_ref = a.nref;
  opt.oversample = a.oversample;
  const SeriesInput in = is_two_sided_text(a.spec) ? SeriesInput{two_sided_from_text(a.spec)}
                                                   : SeriesInput{SineSeries{sequence_from_text(a.spec)}};
  const TailNormCurve curve = convergence_curve(in, ns, opt);
  json nrefs = json::array();
  for (index_t n : ns) nrefs.push_back(a.nref.value_or(default_reference_horizon(n)));
  manifest.defaults = json{{"n", index_array(ns)},
                           {"n_ref", std::move(nrefs)},
                           {"oversample", a.oversample},
                           {"max_uniform_points", kMaxUniformPoints},
                           {"grid", curve.grid}};
  manifest.input_digests.emplace_back("spec", input_digest(a.spec));
  emit(a.as_json ? to_json(curve).dump(2) + "\n" : curve_csv(curve), a.out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string id;
  std::uint64_t seed = 1;
  index_t corpus_size = 50;
  double alpha = 1.0;
  std::optional<index_t> horizon;
  std::vector<std::string> corpus;
  bool as_json = false;
  std::optional<std::string> out;
};

int run_verify(const VerifyArgs& a, RunManifest manifest) {
  VerificationOutcome outcome;
  std::string summary;
  json resolved;
  if (a.id == "t3" || a.id == "corollary") {
    Theorem3Options opt;
    opt.horizon = a.horizon.value_or(kHarnessHorizon);
    if (a.corpus_size < 1) throw UsageError("--corpus-size must be at least 1");
    outcome = a.id == "t3" ? verify_theorem3_corpus(a.seed, a.corpus_size, opt)
                           : verify_corollary_corpus(a.seed, a.corpus_size, opt);
    const OutcomeSummary s = outcome.summary();
    summary = std::to_string(s.passed) + "/" + std::to_string(s.members) +
              (a.id == "t3" ? " chains hold" : " corollary chains hold");
    if (s.premises_not_met > 0) summary += " (" + std::to_string(s.premises_not_met) + " premises not met)";
    resolved = json{{"seed", a.seed}, {"corpus_size", a.corpus_size}, {"horizon", opt.horizon}, {"m_range", "[1, N/4]"}};
    manifest.seed = a.seed;
  } else if (a.id == "lacunary") {
    if (!(a.alpha > 0.0)) throw UsageError("--alpha must be positive");
    LacunaryOptions opt;
    if (a.horizon) opt.horizon = *a.horizon;
    outcome.theorem = TheoremId::lacunary_remark;
    outcome.records.push_back(verify_lacunary_remark(a.alpha, opt));
    summary = outcome.any_violation() ? "triad not confirmed" : "triad confirmed";
    resolved = json{{"alpha", a.alpha},
                    {"horizon", opt.horizon},
                    {"n0", index_array(opt.n0_list)},
                    {"tail_n_max", opt.tail_n_max}};
  } else {
    EquivalenceOptions opt;
    std::vector<FamilySpec> corpus;
    for (const auto& s : a.corpus) corpus.push_back(parse_family(s));
    if (corpus.empty()) corpus = default_equivalence_corpus();
    outcome = verify_equivalence_diagnostics(corpus, opt);
    const OutcomeSummary s = outcome.summary();
    summary = std::to_string(s.members - s.violated) + "/" + std::to_string(s.members) +
              " members consistent or waived (numerical evidence)";
    json names = json::array();
    for (const auto& f : corpus) names.push_back(to_string(f));
    resolved = json{{"corpus", std::move(names)},
                    {"n", index_array(opt.n_list)},
                    {"threshold", opt.threshold},
                    {"n0", index_array(opt.n0_list)},
                    {"horizon_2star", opt.horizon_2star}};
  }
  manifest.defaults = std::move(resolved);
  const std::string body = to_json(outcome).dump(2) + "\n";
  if (a.out) {
    emit(body, a.out, std::move(manifest));
  }
  if (a.as_json && !a.out) {
    std::cout << body;
  } else {
    std::cout << outcome_table(outcome) << summary << "\n";
  }
  return outcome.any_violation() ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-condition classifiers, tail sup-norm curves and theorem checks for trigonometric series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(trigconv::kVersion));

  RunManifest manifest;
  for (int i = 0; i < argc; ++i) manifest.command_line.emplace_back(i == 0 ? "trigconv" : argv[i]);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Run every applicable condition checker");
  classify_cmd->add_option("spec", ca.spec, "family spec, explicit:[..], file:PATH or twosided(POS,NEG)")->required();
  classify_cmd->add_option("--horizon", ca.horizon, "truncation horizon N");
  classify_cmd->add_option("--m-max", ca.m_max, "largest m checked (default N/4)");
  classify_cmd->add_option("--n0", ca.n0, "window widths for (2*), comma separated")->capture_default_str();
  classify_cmd->add_option("--theta0", ca.theta0, "sector half-angle in radians")->capture_default_str();
  classify_cmd->add_option("--weight", ca.weight, "weight spec R(n), e.g. power(0.5)");
  classify_cmd->add_option("--alpha", ca.alphas, "extra quasimonotone exponents");
  classify_cmd->add_option("--out", ca.out, "write JSON here (plus a manifest sidecar)");

  CurveArgs cu;
  auto* curve_cmd = app.add_subcommand("curve", "Tabulate tail sup-norm estimates next to max k|c_k|");
  curve_cmd->add_option("spec", cu.spec, "family spec, explicit:[..], file:PATH or twosided(POS,NEG)")->required();
  curve_cmd->add_option("--n", cu.n_list, "n list: a,b,c or a..b:dyadic")->required();
  curve_cmd->add_option("--nref", cu.nref, "reference horizon (default max(2^16, 64n))");
  curve_cmd->add_option("--oversample", cu.oversample, "uniform grid points per frequency")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  curve_cmd->add_flag("--json", cu.as_json, "emit JSON instead of CSV");
  curve_cmd->add_option("--out", cu.out, "write output here (plus a manifest sidecar)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a theorem verification harness");
  verify_cmd->add_option("id", va.id, "t3, corollary, lacunary or equivalence")
      ->required()
      ->check(CLI::IsMember({"t3", "corollary", "lacunary", "equivalence"}));
  verify_cmd->add_option("--seed", va.seed, "corpus seed")->capture_default_str();
  verify_cmd->add_option("--corpus-size", va.corpus_size, "corpus members")->capture_default_str();
  verify_cmd->add_option("--alpha", va.alpha, "lacunary exponent")->capture_default_str();
  verify_cmd->add_option("--horizon", va.horizon, "truncation horizon N");
  verify_cmd->add_option("--corpus", va.corpus, "family specs for the equivalence diagnostics");
  verify_cmd->add_flag("--json", va.as_json, "print JSON instead of the table");
  verify_cmd->add_option("--out", va.out, "write JSON here (plus a manifest sidecar)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return run_classify(ca, std::move(manifest));
    if (curve_cmd->parsed()) return run_curve(cu, std::move(manifest));
    return run_verify(va, std::move(manifest));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
