#pragma once

#include "cauchy/constitutive.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/tensor.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace cauchy
{

struct StressRateSample
{
  SymTensor3 sigma;
  SymTensor3 sigma_dot;
  SymTensor3 d;
  Tensor3 w;
  double t = 0.0;
};

/// D^ZJ[sigma] = sigma_dot + sigma W - W sigma (symmetric for antisymmetric W).
SymTensor3 zaremba_jaumann(const StressRateSample& s);

/// (sigma(t + h) - sigma(t - h)) / 2h.
SymTensor3 material_derivative_fd(const std::function<SymTensor3(double)>& sigma, double t, double h);

/// Default difference step for the rate checks.
inline constexpr double kRateFdStep = 1e-4;

struct RateResidual
{
  /// ||ZJ(sigma, sigma_dot_fd, W) - H(B).D||.
  double residual = 0.0;
  /// ||H(B).D||.
  double h_d_norm = 0.0;
};

/// Consistency of the hypoelastic rate law along a motion, sigma(t) = stress(law, B(t)).
/// The principal law uses the analytic tangent, other laws the difference tangent.
RateResidual rate_consistency(const IsotropicLaw& law, const MotionPath& motion, double t, double h);

inline double rate_consistency_residual(const IsotropicLaw& law, const MotionPath& motion, double t, double h)
{
  return rate_consistency(law, motion, t, h).residual;
}

struct ConvergenceRow
{
  double h = 0.0;
  double residual = 0.0;
  /// log2(previous residual / residual); NaN on the first row.
  double order = 0.0;
};

/// Residuals at h0, h0/2, ... (`levels` values) with observed orders.
std::vector<ConvergenceRow> rate_convergence(
    const IsotropicLaw& law, const MotionPath& motion, double t, double h0, int levels);

/// Written expansions of the weak-form integrand that must all reduce to
/// A = sigma_dot + tr(D) sigma - sigma L^T.
enum class WeakFormVariant
{
  /// ZJ rate - (D sigma + sigma D) + D sigma + W sigma + tr(D) sigma.
  Expansion,
  /// ZJ rate - (D sigma + sigma D) + L sigma + tr(D) sigma.
  Ji,
  /// sym(ZJ rate - 2 D sigma + tr(D) sigma) + L sigma.
  Aubram,
  /// Transpose of sigma_dot + sigma W - W sigma + tr(D) sigma + sigma L^T - (D sigma + sigma D).
  Korobeynikov,
};

std::string_view to_string(WeakFormVariant v);

/// The variant's integrand as a general tensor.
Tensor3 weak_form_integrand(WeakFormVariant variant, const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot);

/// ||variant - (sigma_dot + tr(D) sigma - sigma L^T)|| with D, W split from L.
double divergence_argument_identity(const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot,
    WeakFormVariant variant = WeakFormVariant::Expansion);

/// Magnitude scale for the identity: max(1, ||sigma_dot|| + ||sigma|| ||L||).
double identity_scale(const SymTensor3& sigma, const Tensor3& l, const SymTensor3& sigma_dot);

}  // namespace cauchy
