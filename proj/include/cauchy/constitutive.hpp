#pragma once

#include "cauchy/spectral.hpp"
#include "cauchy/tensor.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cauchy
{

/// Lame-type moduli. mu > 0 and 3 lambda + 2 mu > 0; kappa > 0 when present.
struct MaterialParams
{
  double mu = 1.0;
  double lambda = 1.0;
  std::optional<double> kappa;

  /// Throws InvalidArgument on a violated modulus constraint.
  void validate() const;
};

enum class LawTag
{
  MooneyLog,
  NeoHookeExp,
  NeoHookeQuad,
  RichterCustom,
  DetNormalizedExample,
};

std::string_view to_string(LawTag tag);

/// I1 = tr B, I2 = tr Cof B, I3 = det B.
struct Invariants3
{
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;
};

Invariants3 invariants(const SpdTensor3& b);

/// sigma = beta0 1 + beta1 B + beta_m1 B^{-1}.
struct RichterCoefficients
{
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta_m1 = 0.0;
};

using RichterCallback = std::function<RichterCoefficients(const Invariants3&)>;

/// An isotropic Cauchy-elastic law B -> sigma(B).
class IsotropicLaw
{
 public:
  /// sigma = mu/2 (B - B^{-1}) + lambda/2 log det B 1.
  static IsotropicLaw mooney_log(const MaterialParams& params);
  /// Slightly compressible Neo-Hooke law with exponentiated volumetric term; needs kappa.
  static IsotropicLaw neo_hooke_exp(const MaterialParams& params);
  /// Neo-Hooke law with quadratic volumetric energy; needs kappa.
  static IsotropicLaw neo_hooke_quad(const MaterialParams& params);
  /// sigma = (det B)^{-1/3} B - 1, whose induced tangent lacks major symmetry.
  static IsotropicLaw det_normalized_example();
  /// Law given by user Richter coefficients. Coefficients are checked for finiteness
  /// at every evaluation.
  static IsotropicLaw richter_custom(RichterCallback coefficients, const MaterialParams& params = {});
  /// Config-file tag lookup (mooney_log | neo_hooke_exp | neo_hooke_quad | det_normalized_example).
  static IsotropicLaw from_name(std::string_view name, const MaterialParams& params);

  LawTag tag() const { return tag_; }
  std::string_view name() const { return to_string(tag_); }
  const MaterialParams& params() const { return params_; }

  bool has_richter_form() const;
  /// Throws NoRichterForm for laws without a Richter representation.
  RichterCoefficients richter(const Invariants3& inv) const;

  SymTensor3 stress(const SpdTensor3& b) const;

 private:
  IsotropicLaw(LawTag tag, const MaterialParams& params, RichterCallback richter = {})
      : tag_(tag), params_(params), richter_(std::move(richter))
  {
  }

  LawTag tag_;
  MaterialParams params_;
  RichterCallback richter_;
};

inline SymTensor3 stress(const IsotropicLaw& law, const SpdTensor3& b) { return law.stress(b); }

/// The principal law written in the logarithmic strain H = log B:
/// mu sinh(H) + lambda/2 tr(H) 1.
SymTensor3 stress_from_log(const MaterialParams& params, const SymTensor3& log_b);

/// Closed-form principal stresses of the principal law for principal stretches l_i:
/// sigma_i = mu/2 (l_i^2 - l_i^{-2}) + lambda log(l_1 l_2 l_3).
std::array<double, 3> principal_stresses(const MaterialParams& params, const std::array<double, 3>& stretches);

/// Principal stresses of any law, read from sigma(diag(l_i^2)) (isotropy makes it diagonal).
std::array<double, 3> principal_stresses(const IsotropicLaw& law, const std::array<double, 3>& stretches);

struct InverseLawResult
{
  SpdTensor3 b;
  int iterations = 0;
  double residual = 0.0;
};

/// Inverts the principal law: returns B with sigma(B) = sigma. Damped Newton on the
/// eigen-stretches in log coordinates; throws NewtonDivergence when the budget runs out.
InverseLawResult inverse_law_detailed(const SymTensor3& sigma, const MaterialParams& params);

inline SpdTensor3 inverse_law(const SymTensor3& sigma, const MaterialParams& params)
{
  return inverse_law_detailed(sigma, params).b;
}

}  // namespace cauchy
