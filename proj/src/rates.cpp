#include "cauchy/rates.hpp"

#include "cauchy/error.hpp"
#include "cauchy/stiffness.hpp"

#include <cmath>
#include <limits>

namespace cauchy
{

SymTensor3 zaremba_jaumann(const StressRateSample& s)
{
  const Tensor3 sig = s.sigma.full();
  return s.sigma_dot + SymTensor3::sym_of(sig * s.w - s.w * sig);
}

SymTensor3 material_derivative_fd(const std::function<SymTensor3(double)>& sigma, double t, double h)
{
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "difference step must be positive");
  return (1.0 / (2.0 * h)) * (sigma(t + h) - sigma(t - h));
}

RateResidual rate_consistency(const IsotropicLaw& law, const MotionPath& motion, double t, double h)
{
  auto sigma_at = [&](double s) { return law.stress(finger(motion.f(s))); };
  const DeformationState state = motion.state(t);

  StressRateSample sample{sigma_at(t), material_derivative_fd(sigma_at, t, h), state.d, state.w, t};
  const SymTensor3 h_d = apply4(h_zj(law, state.b).matrix, state.d);
  return {(zaremba_jaumann(sample) - h_d).norm(), h_d.norm()};
}

std::vector<ConvergenceRow> rate_convergence(
    const IsotropicLaw& law, const MotionPath& motion, double t, double h0, int levels)
{
  std::vector<ConvergenceRow> rows;
  double h = h0;
  for (int k = 0; k < levels; ++k, h *= 0.5)
  {
    const double r = rate_consistency_residual(law, motion, t, h);
    const double order = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : std::log2(rows.back().residual / r);
    rows.push_back({h, r, order});
  }
  return rows;
}

std::string_view to_string(WeakFormVariant v)
{
  switch (v)
  {
    case WeakFormVariant::Expansion: return "expansion";
    case WeakFormVariant::Ji: return "ji";
    case WeakFormVariant::Aubram: return "aubram";
    case WeakFormVariant::Korobeynikov: return "korobeynikov";
  }
  return "unknown";
}

Tensor3 weak_form_integrand(WeakFormVariant variant, const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot)
{
  const SymSkew split = sym_skew_split(l);
  const Tensor3 s = sigma.full();
  const Tensor3 d = split.sym.full();
  const Tensor3& w = split.skew;
  const double tr_d = split.sym.trace();
  const Tensor3 zj = sigma_dot.full() + s * w - w * s;

  switch (variant)
  {
    case WeakFormVariant::Expansion:
      return zj - (d * s + s * d) + d * s + w * s + tr_d * s;
    case WeakFormVariant::Ji:
      return zj - (d * s + s * d) + l * s + tr_d * s;
    case WeakFormVariant::Aubram:
      return SymTensor3::sym_of(zj - 2.0 * (d * s) + tr_d * s).full() + l * s;
    case WeakFormVariant::Korobeynikov:
      return (zj + tr_d * s + s * l.transpose() - (d * s + s * d)).transpose();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown weak-form variant");
}

double divergence_argument_identity(
    const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot, WeakFormVariant variant)
{
  const Tensor3 target = sigma_dot.full() + sym_skew_split(l).sym.trace() * sigma.full() - sigma.full() * l.transpose();
  return (weak_form_integrand(variant, sigma, l, sigma_dot) - target).norm();
}

double identity_scale(const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot)
{
  return std::max(1.0, sigma_dot.norm() + sigma.norm() * l.norm());
}

}  // namespace cauchy
