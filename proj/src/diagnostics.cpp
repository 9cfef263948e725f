#include "cauchy/diagnostics.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/error.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

namespace cauchy
{

namespace
{
constexpr double kModerateLogRange = 2.0;
constexpr double kWideLogRange = 3.0;
constexpr int kPairGridPoints = 7;
constexpr double kInf = std::numeric_limits<double>::infinity();

SpdTensor3 diag_spd(double a, double b, double c) { return SpdTensor3::checked(SymTensor3::diag(a, b, c)); }

std::string describe(const SymTensor3& s)
{
  std::string out = "[";
  for (std::size_t k = 0; k < 6; ++k) out += (k ? " " : "") + format_double(s.component(k));
  return out + "]";
}

std::string describe(const std::array<double, 3>& v)
{
  return "(" + format_double(v[0]) + " " + format_double(v[1]) + " " + format_double(v[2]) + ")";
}

/// Smallest eigenvalue of a symmetric tensor.
double min_eigenvalue(const SymTensor3& s) { return spectral_decompose(s).eigenvalues[2]; }

/// Per-check stream so checks never share random draws.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t check)
{
  return seed ^ (0x9E3779B97F4A7C15ULL * (check + 1));
}
}  // namespace

double baker_ericksen(const IsotropicLaw& law, const std::array<double, 3>& stretches)
{
  const auto s = principal_stresses(law, stretches);
  double worst = kInf;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (stretches[i] != stretches[j])
        worst = std::min(worst, (s[i] - s[j]) * (stretches[i] - stretches[j]));
  if (worst == kInf) throw Error(ErrorCode::InvalidArgument, "baker_ericksen needs two distinct stretches");
  return worst;
}

double tension_extension(const IsotropicLaw& law, int axis, const std::array<double, 3>& stretches)
{
  if (axis < 0 || axis > 2) throw Error(ErrorCode::InvalidArgument, "axis must be 0, 1 or 2");
  const double h = 1e-5 * stretches[axis];
  auto plus = stretches, minus = stretches;
  plus[axis] += h;
  minus[axis] -= h;
  return (principal_stresses(law, plus)[axis] - principal_stresses(law, minus)[axis]) / (2.0 * h);
}

double pressure_compression(const IsotropicLaw& law, double alpha, double beta)
{
  if (!(alpha > 0.0) || !(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha, beta must be positive");
  if (alpha == beta) throw Error(ErrorCode::InvalidArgument, "pressure_compression needs alpha != beta");
  const SymTensor3 ds = law.stress(diag_spd(alpha, alpha, alpha)) - law.stress(diag_spd(beta, beta, beta));
  return (alpha - beta) * ds.trace();
}

EmpiricalResult empirical_inequalities(const IsotropicLaw& law, const SpdTensor3& b)
{
  const RichterCoefficients c = law.richter(invariants(b));
  return {c.beta1 > 0.0, c.beta_m1 <= 0.0, c};
}

double tsts_monotonicity(const IsotropicLaw& law, const SpdTensor3& b1, const SpdTensor3& b2)
{
  const SymTensor3 dh = mat_log(b1) - mat_log(b2);
  if (dh.norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "tsts_monotonicity needs B1 != B2");
  return inner(law.stress(b1) - law.stress(b2), dh);
}

double csp_value(const FourthOrderMandel& h, const SymTensor3& d)
{
  if (d.norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "csp_value needs D != 0");
  return inner(apply4(h, d), d);
}

namespace
{
/// Most negative <sigma(B1)-sigma(B2), B1-B2> over random pairs and the diagonal grid.
MonotonicityWitness b_monotonicity_minimum(
    const IsotropicLaw& law, std::uint64_t seed, std::uint64_t budget, int threads)
{
  const std::uint64_t per_side = static_cast<std::uint64_t>(kPairGridPoints) * kPairGridPoints * kPairGridPoints;
  const std::uint64_t total = budget + per_side * per_side;
  auto grid_tensor = [](std::uint64_t g) {
    double a[3];
    for (auto& x : a)
    {
      x = std::exp(-kWideLogRange + 2.0 * kWideLogRange * static_cast<double>(g % kPairGridPoints) /
                                        (kPairGridPoints - 1));
      g /= kPairGridPoints;
    }
    return SymTensor3::diag(a[0], a[1], a[2]);
  };

  std::vector<double> values(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
    {
      SymTensor3 b1, b2;
      if (i < budget)
      {
        auto rng = sample_rng(seed, i);
        b1 = random_spd(rng, kWideLogRange).sym();
        b2 = random_spd(rng, kWideLogRange).sym();
      }
      else
      {
        b1 = grid_tensor((i - budget) / per_side);
        b2 = grid_tensor((i - budget) % per_side);
      }
      values[i] = inner(law.stress(SpdTensor3::checked(b1)) - law.stress(SpdTensor3::checked(b2)), b1 - b2);
    }
  });

  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < total; ++i)
    if (values[i] < values[best]) best = i;

  MonotonicityWitness w;
  if (best < budget)
  {
    auto rng = sample_rng(seed, best);
    w.b1 = random_spd(rng, kWideLogRange).sym();
    w.b2 = random_spd(rng, kWideLogRange).sym();
  }
  else
  {
    w.b1 = grid_tensor((best - budget) / per_side);
    w.b2 = grid_tensor((best - budget) % per_side);
  }
  w.value = values[best];
  w.index = best;
  return w;
}
}  // namespace

std::optional<MonotonicityWitness> b_monotonicity_counterexample(
    const IsotropicLaw& law, std::uint64_t seed, std::uint64_t budget, int threads)
{
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  MonotonicityWitness w = b_monotonicity_minimum(law, seed, budget, threads);
  if (w.value < kWitnessThreshold) return w;
  return std::nullopt;
}

// --- audit -------------------------------------------------------------------

std::string_view to_string(CheckStatus s)
{
  switch (s)
  {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Witness: return "witness";
    case CheckStatus::MissingWitness: return "missing-witness";
    case CheckStatus::Info: return "info";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::Error: return "error";
  }
  return "unknown";
}

std::string_view to_string(Expectation e)
{
  switch (e)
  {
    case Expectation::Holds: return "holds";
    case Expectation::Violated: return "violated";
    case Expectation::None: return "none";
  }
  return "unknown";
}

bool AuditReport::passed() const
{
  for (const auto& e : entries)
  {
    if (e.status == CheckStatus::Fail || e.status == CheckStatus::MissingWitness) return false;
    if (e.status == CheckStatus::Error && e.expectation != Expectation::None) return false;
  }
  return true;
}

namespace
{
enum class Check
{
  BakerEricksen,
  TensionExtension,
  PressureCompression,
  Empirical,
  Tsts,
  Csp,
  Definiteness,
  MajorSymmetry,
  OperatorMonotonicity,
  BMonotonicity,
  Isotropy,
  Coaxiality,
};

const char* check_name(Check c)
{
  switch (c)
  {
    case Check::BakerEricksen: return "baker_ericksen";
    case Check::TensionExtension: return "tension_extension";
    case Check::PressureCompression: return "pressure_compression";
    case Check::Empirical: return "empirical_inequalities";
    case Check::Tsts: return "tsts_monotonicity";
    case Check::Csp: return "csp";
    case Check::Definiteness: return "definiteness";
    case Check::MajorSymmetry: return "major_symmetry";
    case Check::OperatorMonotonicity: return "operator_monotonicity";
    case Check::BMonotonicity: return "b_monotonicity";
    case Check::Isotropy: return "isotropy";
    case Check::Coaxiality: return "coaxiality";
  }
  return "unknown";
}

/// Which outcome is expected of each law.
Expectation expectation_for(LawTag law, Check c)
{
  if (c == Check::Isotropy || c == Check::Coaxiality) return Expectation::Holds;
  switch (law)
  {
    case LawTag::MooneyLog:
      return c == Check::BMonotonicity ? Expectation::Violated : Expectation::Holds;
    case LawTag::NeoHookeExp:
      return c == Check::Definiteness ? Expectation::Violated : Expectation::None;
    case LawTag::DetNormalizedExample:
      if (c == Check::MajorSymmetry) return Expectation::Violated;
      if (c == Check::Empirical) return Expectation::Holds;
      return Expectation::None;
    case LawTag::NeoHookeQuad:
    case LawTag::RichterCustom:
      return Expectation::None;
  }
  return Expectation::None;
}

struct Outcome
{
  /// Scaled value; the check holds at this sample when value > threshold. +inf skips.
  double value = kInf;
  std::string witness;
};

void classify(AuditEntry& e, double violation_threshold)
{
  switch (e.expectation)
  {
    case Expectation::Holds:
      e.status = e.worst_value > e.threshold ? CheckStatus::Pass : CheckStatus::Fail;
      break;
    case Expectation::Violated:
      e.threshold = violation_threshold;
      e.status = e.worst_value < violation_threshold ? CheckStatus::Witness : CheckStatus::MissingWitness;
      break;
    case Expectation::None:
      e.status = CheckStatus::Info;
      break;
  }
}

/// Evaluates `eval` on every sample index and keeps the smallest value (lowest index on ties).
AuditEntry sweep(Check check, LawTag law, std::uint64_t seed, std::uint64_t samples, int threads,
    double threshold, double violation_threshold,
    const std::function<Outcome(std::mt19937_64&, std::uint64_t)>& eval)
{
  AuditEntry e;
  e.name = check_name(check);
  e.expectation = expectation_for(law, check);
  e.samples = samples;
  e.seed = stream_seed(seed, static_cast<std::uint64_t>(check));
  e.threshold = threshold;

  std::vector<Outcome> outcomes(samples);
  std::vector<std::string> errors(samples);
  std::vector<int> not_applicable(samples, 0);
  parallel_for(samples, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
    {
      auto rng = sample_rng(e.seed, i);
      try
      {
        outcomes[i] = eval(rng, i);
      }
      catch (const Error& err)
      {
        if (err.code() == ErrorCode::NoRichterForm)
          not_applicable[i] = 1;
        else
          errors[i] = std::string(to_string(err.code())) + ": " + err.what();
      }
    }
  });

  for (std::uint64_t i = 0; i < samples; ++i)
  {
    if (not_applicable[i])
    {
      e.status = CheckStatus::NotApplicable;
      e.message = "law exposes no Richter coefficients";
      e.worst_value = 0.0;
      return e;
    }
    if (!errors[i].empty())
    {
      e.status = CheckStatus::Error;
      e.worst_index = i;
      e.message = errors[i];
      return e;
    }
  }

  e.worst_value = kInf;
  for (std::uint64_t i = 0; i < samples; ++i)
  {
    if (outcomes[i].value < e.worst_value)
    {
      e.worst_value = outcomes[i].value;
      e.worst_index = i;
      e.witness = outcomes[i].witness;
    }
  }
  classify(e, violation_threshold);
  return e;
}

std::array<double, 3> random_stretches(std::mt19937_64& rng)
{
  // Stretches l = sqrt(b) with b log-uniform in [e^-2, e^2].
  return {std::exp(uniform(rng, -1.0, 1.0)), std::exp(uniform(rng, -1.0, 1.0)), std::exp(uniform(rng, -1.0, 1.0))};
}
}  // namespace

AuditReport run_audit(const IsotropicLaw& law, std::uint64_t seed, std::uint64_t samples, int threads)
{
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 1");
  AuditReport report;
  report.law = std::string(law.name());
  report.params = law.params();
  report.seed = seed;
  report.samples = samples;
  const LawTag tag = law.tag();
  auto add = [&](Check c, double threshold, double violation_threshold,
                 const std::function<Outcome(std::mt19937_64&, std::uint64_t)>& eval) {
    report.entries.push_back(sweep(c, tag, seed, samples, threads, threshold, violation_threshold, eval));
  };

  add(Check::BakerEricksen, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const auto l = random_stretches(rng);
    const auto s = principal_stresses(law, l);
    const double scale = std::max({1.0, std::abs(s[0]), std::abs(s[1]), std::abs(s[2])});
    const double lmax = std::max({l[0], l[1], l[2]});
    Outcome o;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(l[i] - l[j]) > 1e-8 * lmax)
          o.value = std::min(o.value, (s[i] - s[j]) / (l[i] - l[j]) / scale);
    o.witness = "stretches=" + describe(l);
    return o;
  });

  add(Check::TensionExtension, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t i) {
    const auto l = random_stretches(rng);
    const int axis = static_cast<int>(i % 3);
    const double s = principal_stresses(law, l)[axis];
    return Outcome{tension_extension(law, axis, l) / std::max(1.0, std::abs(s)),
                   "axis=" + std::to_string(axis) + " stretches=" + describe(l)};
  });

  add(Check::PressureCompression, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const double alpha = std::exp(uniform(rng, -kModerateLogRange, kModerateLogRange));
    const double beta = std::exp(uniform(rng, -kModerateLogRange, kModerateLogRange));
    if (alpha == beta) return Outcome{};
    const double scale = std::max(1.0, law.stress(diag_spd(alpha, alpha, alpha)).norm() +
                                           law.stress(diag_spd(beta, beta, beta)).norm());
    return Outcome{pressure_compression(law, alpha, beta) / ((alpha - beta) * (alpha - beta) * scale),
                   "alpha=" + format_double(alpha) + " beta=" + format_double(beta)};
  });

  add(Check::Empirical, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b = random_spd(rng, kModerateLogRange);
    const EmpiricalResult r = empirical_inequalities(law, b);
    const auto& c = r.coefficients;
    const double scale = std::max({1.0, std::abs(c.beta0), std::abs(c.beta1), std::abs(c.beta_m1)});
    Outcome o{c.beta1 / scale, "B=" + describe(b.sym())};
    if (!r.beta_m1_nonpositive) o.value = std::min(o.value, -c.beta_m1 / scale);
    return o;
  });

  add(Check::Tsts, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b1 = random_spd(rng, kModerateLogRange);
    const SpdTensor3 b2 = random_spd(rng, kModerateLogRange);
    const double dh = (mat_log(b1) - mat_log(b2)).norm();
    const double scale = std::max(1.0, law.stress(b1).norm() + law.stress(b2).norm());
    return Outcome{tsts_monotonicity(law, b1, b2) / (dh * dh * scale),
                   "B1=" + describe(b1.sym()) + " B2=" + describe(b2.sym())};
  });

  add(Check::Csp, kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b = random_spd(rng, kModerateLogRange);
    const SymTensor3 d = random_sym(rng, 1.0);
    const FourthOrderMandel h = h_zj(law, b).matrix;
    return Outcome{csp_value(h, d) / (inner(d, d) * std::max(1.0, h.norm())),
                   "B=" + describe(b.sym()) + " D=" + describe(d)};
  });

  {
    // Definiteness uses the widened search (random samples plus a diagonal grid).
    AuditEntry e;
    e.name = check_name(Check::Definiteness);
    e.expectation = expectation_for(tag, Check::Definiteness);
    e.seed = stream_seed(seed, static_cast<std::uint64_t>(Check::Definiteness));
    try
    {
      const IndefinitenessWitness w = indefiniteness_search(law, e.seed, samples, threads);
      e.samples = samples;
      e.worst_index = w.index;
      e.witness = "B=" + describe(w.b);
      if (tag == LawTag::MooneyLog)
      {
        // Asserted floor 2 mu + 3 min(lambda, 0) with the 1e-9 slack of the closed-form bound.
        e.worst_value = w.min_eig - coercivity_floor(law.params());
        e.threshold = -1e-9;
      }
      else
      {
        e.worst_value = w.min_eig;
        e.threshold = 0.0;
      }
      classify(e, 0.0);
    }
    catch (const Error& err)
    {
      e.status = CheckStatus::Error;
      e.message = std::string(to_string(err.code())) + ": " + err.what();
    }
    report.entries.push_back(e);
  }

  add(Check::MajorSymmetry, -1e-11, -1e-3, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b = random_spd(rng, kModerateLogRange);
    return Outcome{-symmetry_report(h_zj(law, b)).major_defect, "B=" + describe(b.sym())};
  });

  add(Check::OperatorMonotonicity, -kStrictTolerance, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b2 = random_spd(rng, kModerateLogRange);
    SymTensor3 p = random_spd(rng, kModerateLogRange).sym();
    p *= uniform(rng, 0.01, 1.0);
    const SpdTensor3 b1 = SpdTensor3::checked(b2.sym() + p);
    const SymTensor3 s1 = law.stress(b1), s2 = law.stress(b2);
    return Outcome{min_eigenvalue(s1 - s2) / std::max(1.0, s1.norm() + s2.norm()),
                   "B1=" + describe(b1.sym()) + " B2=" + describe(b2.sym())};
  });

  {
    AuditEntry e;
    e.name = check_name(Check::BMonotonicity);
    e.expectation = expectation_for(tag, Check::BMonotonicity);
    e.seed = stream_seed(seed, static_cast<std::uint64_t>(Check::BMonotonicity));
    e.samples = samples;
    try
    {
      const MonotonicityWitness w = b_monotonicity_minimum(law, e.seed, samples, threads);
      e.worst_value = w.value;
      e.worst_index = w.index;
      e.threshold = 0.0;
      e.witness = "B1=" + describe(w.b1) + " B2=" + describe(w.b2);
      classify(e, kWitnessThreshold);
    }
    catch (const Error& err)
    {
      e.status = CheckStatus::Error;
      e.message = std::string(to_string(err.code())) + ": " + err.what();
    }
    report.entries.push_back(e);
  }

  add(Check::Isotropy, -1e-11, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b = random_spd(rng, kModerateLogRange);
    const Tensor3 q = random_rotation(rng);
    const SymTensor3 s = law.stress(b);
    const SymTensor3 rotated = law.stress(SpdTensor3::checked(rotate(q.transpose(), b.sym())));
    return Outcome{-(rotated - rotate(q.transpose(), s)).norm() / std::max(1.0, s.norm()), "B=" + describe(b.sym())};
  });

  add(Check::Coaxiality, -1e-11, 0.0, [&](std::mt19937_64& rng, std::uint64_t) {
    const SpdTensor3 b = random_spd(rng, kModerateLogRange);
    const SymTensor3 s = law.stress(b);
    const Tensor3 c = s * b.sym() - b.sym() * s;
    return Outcome{-c.norm() / std::max(1.0, s.norm() * b.sym().norm()), "B=" + describe(b.sym())};
  });

  return report;
}

void write_audit_csv(std::ostream& out, const AuditReport& report)
{
  CsvWriter csv(out, {"check", "expected", "status", "samples", "seed", "worst_value", "threshold", "worst_index",
                      "witness", "message"});
  for (const auto& e : report.entries)
  {
    csv.cell(e.name)
        .cell(to_string(e.expectation))
        .cell(to_string(e.status))
        .cell(e.samples)
        .cell(std::to_string(e.seed))
        .cell(e.worst_value)
        .cell(e.threshold)
        .cell(e.worst_index)
        .cell(e.witness)
        .cell(e.message);
    csv.end_row();
  }
}

}  // namespace cauchy
