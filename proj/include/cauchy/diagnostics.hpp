#pragma once

#include "cauchy/constitutive.hpp"
#include "cauchy/stiffness.hpp"
#include "cauchy/tensor.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy
{

/// "Positive" means greater than this multiple of the check's scale.
inline constexpr double kStrictTolerance = 1e-10;

/// min over pairs with l_i != l_j of (sigma_i - sigma_j)(l_i - l_j). Rejects equal stretches.
double baker_ericksen(const IsotropicLaw& law, const std::array<double, 3>& stretches);

/// d sigma_i / d l_i by central differences of step 1e-5 l_i.
double tension_extension(const IsotropicLaw& law, int axis, const std::array<double, 3>& stretches);

/// <sigma(alpha 1) - sigma(beta 1), (alpha - beta) 1>. Rejects alpha == beta.
double pressure_compression(const IsotropicLaw& law, double alpha, double beta);

struct EmpiricalResult
{
  bool beta1_positive = false;
  bool beta_m1_nonpositive = false;
  RichterCoefficients coefficients;
};

/// Weak empirical inequalities beta1 > 0, beta_-1 <= 0 at the invariants of B.
/// Throws NoRichterForm for laws without coefficients.
EmpiricalResult empirical_inequalities(const IsotropicLaw& law, const SpdTensor3& b);

/// <sigma^(log B1) - sigma^(log B2), log B1 - log B2>, where sigma^(log B) = sigma(B).
double tsts_monotonicity(const IsotropicLaw& law, const SpdTensor3& b1, const SpdTensor3& b2);

struct MonotonicityWitness
{
  SymTensor3 b1;
  SymTensor3 b2;
  /// <sigma(B1) - sigma(B2), B1 - B2>.
  double value = 0.0;
  std::uint64_t index = 0;
};

/// Threshold a witness must undercut.
inline constexpr double kWitnessThreshold = -1e-8;

/// Searches `budget` random pairs (eigenvalues log-uniform in [e^-3, e^3]) and then a
/// deterministic grid of commuting diagonal pairs for <sigma(B1)-sigma(B2), B1-B2> < -1e-8.
/// Returns the most negative such pair, or nullopt when none exists.
std::optional<MonotonicityWitness> b_monotonicity_counterexample(
    const IsotropicLaw& law, std::uint64_t seed, std::uint64_t budget, int threads = 1);

/// <H.D, D>. Rejects D = 0.
double csp_value(const FourthOrderMandel& h, const SymTensor3& d);

// ---------------------------------------------------------------------------
// Audit battery.

enum class CheckStatus
{
  Pass,
  Fail,
  /// An expected violation was located.
  Witness,
  /// An expected violation was not located (counts as failure).
  MissingWitness,
  /// Evaluated and reported without an asserted outcome.
  Info,
  NotApplicable,
  Error,
};

std::string_view to_string(CheckStatus s);

enum class Expectation
{
  Holds,
  Violated,
  None,
};

std::string_view to_string(Expectation e);

struct AuditEntry
{
  std::string name;
  Expectation expectation = Expectation::None;
  CheckStatus status = CheckStatus::Info;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Worst (smallest) scaled value seen; the check holds when it stays above its threshold.
  double worst_value = 0.0;
  double threshold = 0.0;
  /// Sample index of the worst value; replay with sample_rng(stream seed, index).
  std::uint64_t worst_index = 0;
  std::string witness;
  std::string message;
};

struct AuditReport
{
  std::string law;
  MaterialParams params;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<AuditEntry> entries;

  /// False when an asserted check failed, errored, or an expected witness is missing.
  bool passed() const;
};

/// Runs the battery with `samples` seeded samples per check. Results are identical for
/// any thread count.
AuditReport run_audit(const IsotropicLaw& law, std::uint64_t seed, std::uint64_t samples, int threads = 1);

/// CSV: check,expected,status,samples,seed,worst_value,threshold,worst_index,witness,message.
void write_audit_csv(std::ostream& out, const AuditReport& report);

}  // namespace cauchy
