#include "cauchy/constitutive.hpp"

#include "cauchy/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cauchy
{

namespace
{
constexpr int kNewtonBudget = 100;
constexpr int kMaxHalvings = 30;
constexpr double kNewtonTolerance = 1e-12;
constexpr double kInitialGuessClip = 8.0;

/// B^{-1} of a symmetric tensor through its cofactor (Cof B = det(B) B^{-T} and B is symmetric).
SymTensor3 sym_inverse(const SymTensor3& b)
{
  const Tensor3 cof = b.full().cofactor();
  SymTensor3 inv = SymTensor3::sym_of(cof);
  inv *= 1.0 / b.det();
  return inv;
}

double require_kappa(const MaterialParams& p, std::string_view law)
{
  if (!p.kappa)
    throw Error(ErrorCode::InvalidArgument, std::string(law) + " requires kappa");
  return *p.kappa;
}

void check_finite(const RichterCoefficients& c)
{
  if (!std::isfinite(c.beta0) || !std::isfinite(c.beta1) || !std::isfinite(c.beta_m1))
    throw Error(ErrorCode::InvalidArgument, "Richter callback returned a non-finite coefficient");
}
}  // namespace

void MaterialParams::validate() const
{
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw Error(ErrorCode::InvalidArgument, "mu must be positive");
  if (!(3.0 * lambda + 2.0 * mu > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::InvalidArgument, "3 lambda + 2 mu must be positive");
  if (kappa && (!(*kappa > 0.0) || !std::isfinite(*kappa)))
    throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
}

std::string_view to_string(LawTag tag)
{
  switch (tag)
  {
    case LawTag::MooneyLog: return "mooney_log";
    case LawTag::NeoHookeExp: return "neo_hooke_exp";
    case LawTag::NeoHookeQuad: return "neo_hooke_quad";
    case LawTag::RichterCustom: return "richter_custom";
    case LawTag::DetNormalizedExample: return "det_normalized_example";
  }
  return "unknown";
}

Invariants3 invariants(const SpdTensor3& b)
{
  const SymTensor3& s = b.sym();
  return {s.trace(), s.full().cofactor().trace(), s.det()};
}

IsotropicLaw IsotropicLaw::mooney_log(const MaterialParams& params)
{
  params.validate();
  return IsotropicLaw(LawTag::MooneyLog, params);
}

IsotropicLaw IsotropicLaw::neo_hooke_exp(const MaterialParams& params)
{
  params.validate();
  require_kappa(params, "neo_hooke_exp");
  return IsotropicLaw(LawTag::NeoHookeExp, params);
}

IsotropicLaw IsotropicLaw::neo_hooke_quad(const MaterialParams& params)
{
  params.validate();
  require_kappa(params, "neo_hooke_quad");
  return IsotropicLaw(LawTag::NeoHookeQuad, params);
}

IsotropicLaw IsotropicLaw::det_normalized_example()
{
  return IsotropicLaw(LawTag::DetNormalizedExample, MaterialParams{});
}

IsotropicLaw IsotropicLaw::richter_custom(RichterCallback coefficients, const MaterialParams& params)
{
  if (!coefficients) throw Error(ErrorCode::InvalidArgument, "richter_custom needs a callback");
  return IsotropicLaw(LawTag::RichterCustom, params, std::move(coefficients));
}

IsotropicLaw IsotropicLaw::from_name(std::string_view name, const MaterialParams& params)
{
  if (name == "mooney_log") return mooney_log(params);
  if (name == "neo_hooke_exp") return neo_hooke_exp(params);
  if (name == "neo_hooke_quad") return neo_hooke_quad(params);
  if (name == "det_normalized_example") return det_normalized_example();
  throw Error(ErrorCode::InvalidArgument, "unknown law '" + std::string(name) + "'");
}

bool IsotropicLaw::has_richter_form() const
{
  return tag_ == LawTag::MooneyLog || tag_ == LawTag::RichterCustom ||
         tag_ == LawTag::DetNormalizedExample;
}

RichterCoefficients IsotropicLaw::richter(const Invariants3& inv) const
{
  switch (tag_)
  {
    case LawTag::MooneyLog:
      return {0.5 * params_.lambda * std::log(inv.i3), 0.5 * params_.mu, -0.5 * params_.mu};
    case LawTag::DetNormalizedExample:
      return {-1.0, std::pow(inv.i3, -1.0 / 3.0), 0.0};
    case LawTag::RichterCustom:
    {
      const RichterCoefficients c = richter_(inv);
      check_finite(c);
      return c;
    }
    case LawTag::NeoHookeExp:
    case LawTag::NeoHookeQuad:
      break;
  }
  throw Error(ErrorCode::NoRichterForm, std::string(name()) + " exposes no Richter coefficients");
}

SymTensor3 IsotropicLaw::stress(const SpdTensor3& b) const
{
  const SymTensor3& bs = b.sym();
  const SymTensor3 one = SymTensor3::identity();
  switch (tag_)
  {
    case LawTag::MooneyLog:
    {
      const double log_det = std::log(bs.det());
      return 0.5 * params_.mu * (bs - sym_inverse(bs)) + (0.5 * params_.lambda * log_det) * one;
    }
    case LawTag::NeoHookeExp:
    {
      const double det = bs.det();
      const double log_det = std::log(det);
      const double kappa = *params_.kappa;
      const double vol = 0.5 * kappa * std::pow(det, -0.5) * log_det * std::exp(0.25 * log_det * log_det);
      return params_.mu * std::pow(det, -5.0 / 6.0) * deviator(bs) + vol * one;
    }
    case LawTag::NeoHookeQuad:
    {
      const double det = bs.det();
      const double kappa = *params_.kappa;
      return params_.mu * std::pow(det, -5.0 / 6.0) * deviator(bs) + kappa * (std::sqrt(det) - 1.0) * one;
    }
    case LawTag::DetNormalizedExample:
      return std::pow(bs.det(), -1.0 / 3.0) * bs - one;
    case LawTag::RichterCustom:
    {
      const RichterCoefficients c = richter(invariants(b));
      return c.beta0 * one + c.beta1 * bs + c.beta_m1 * sym_inverse(bs);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown law tag");
}

SymTensor3 stress_from_log(const MaterialParams& params, const SymTensor3& log_b)
{
  return params.mu * mat_sinh(log_b) + (0.5 * params.lambda * log_b.trace()) * SymTensor3::identity();
}

std::array<double, 3> principal_stresses(const MaterialParams& params, const std::array<double, 3>& stretches)
{
  for (double s : stretches)
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "stretches must be positive");
  const double log_j = std::log(stretches[0] * stretches[1] * stretches[2]);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
  {
    const double l2 = stretches[i] * stretches[i];
    out[i] = 0.5 * params.mu * (l2 - 1.0 / l2) + params.lambda * log_j;
  }
  return out;
}

std::array<double, 3> principal_stresses(const IsotropicLaw& law, const std::array<double, 3>& stretches)
{
  for (double s : stretches)
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "stretches must be positive");
  const auto b = SpdTensor3::checked(SymTensor3::diag(
      stretches[0] * stretches[0], stretches[1] * stretches[1], stretches[2] * stretches[2]));
  const SymTensor3 s = law.stress(b);
  return {s(0, 0), s(1, 1), s(2, 2)};
}

InverseLawResult inverse_law_detailed(const SymTensor3& sigma, const MaterialParams& params)
{
  params.validate();
  const Spectral3 sp = spectral_decompose(sigma);
  const auto& target = sp.eigenvalues;
  const double mu = params.mu;
  const double half_lambda = 0.5 * params.lambda;
  const double tolerance = kNewtonTolerance * std::max(1.0, sigma.norm());

  auto residual = [&](const std::array<double, 3>& u) {
    const double tr = u[0] + u[1] + u[2];
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = mu * std::sinh(u[i]) + half_lambda * tr - target[i];
    return r;
  };
  auto norm3 = [](const std::array<double, 3>& r) {
    return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  };

  std::array<double, 3> u{};
  for (int i = 0; i < 3; ++i)
    u[i] = std::clamp(target[i] / (mu + params.lambda), -kInitialGuessClip, kInitialGuessClip);
  // mu + lambda can be small or negative when lambda < 0; fall back to the shear-only guess.
  if (!(mu + params.lambda > 0.0))
    for (int i = 0; i < 3; ++i) u[i] = std::clamp(target[i] / mu, -kInitialGuessClip, kInitialGuessClip);

  std::array<double, 3> r = residual(u);
  double rnorm = norm3(r);
  int iter = 0;
  while (rnorm > tolerance)
  {
    if (++iter > kNewtonBudget)
    {
      std::ostringstream msg;
      msg << "inverse_law: residual " << rnorm << " after " << kNewtonBudget << " iterations";
      throw Error(ErrorCode::NewtonDivergence, msg.str());
    }
    // J = diag(mu cosh u_i) + (lambda/2) 1 1^T, solved by Sherman-Morrison.
    std::array<double, 3> dinv_r{}, dinv_1{};
    double sum_r = 0.0, sum_1 = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      const double d = mu * std::cosh(u[i]);
      dinv_r[i] = r[i] / d;
      dinv_1[i] = 1.0 / d;
      sum_r += dinv_r[i];
      sum_1 += dinv_1[i];
    }
    const double factor = half_lambda * sum_r / (1.0 + half_lambda * sum_1);
    std::array<double, 3> step{};
    for (int i = 0; i < 3; ++i) step[i] = -(dinv_r[i] - factor * dinv_1[i]);

    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, scale *= 0.5)
    {
      std::array<double, 3> trial{};
      for (int i = 0; i < 3; ++i) trial[i] = u[i] + scale * step[i];
      const std::array<double, 3> rt = residual(trial);
      const double rtn = norm3(rt);
      if (rtn < rnorm)
      {
        u = trial;
        r = rt;
        rnorm = rtn;
        accepted = true;
        break;
      }
    }
    if (!accepted)
    {
      std::ostringstream msg;
      msg << "inverse_law: line search stalled at residual " << rnorm;
      throw Error(ErrorCode::NewtonDivergence, msg.str());
    }
  }

  // exp is monotone, so descending stresses give descending eigen-stretches.
  Spectral3 out = sp;
  for (int i = 0; i < 3; ++i) out.eigenvalues[i] = std::exp(u[i]);
  // Repeated stresses may leave rounding-level inversions; restore the ordering.
  for (int i = 1; i < 3; ++i) out.eigenvalues[i] = std::min(out.eigenvalues[i], out.eigenvalues[i - 1]);
  return {SpdTensor3::from_spectral(out), iter, rnorm};
}

}  // namespace cauchy
