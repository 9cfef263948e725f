#pragma once

#include "cauchy/config.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/solver.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace cauchy
{

/// Initial deformation phi0 with its analytic gradient and the derivatives of the
/// gradient, (d_j D phi0)_ik = d^2 phi0_i / d xi_k d xi_j.
struct InitialMap
{
  PointMap phi;
  TensorField gradient;
  std::function<std::array<Tensor3, 3>(const Vec3&)> gradient_derivatives;

  static InitialMap identity();
  /// phi0 = diag(stretch) xi.
  static InitialMap stretch(const Vec3& stretch);
  /// phi0 = xi + a (l0 sin(2 u1), l1 sin(3 u2), l2 u0 u1) with u = (xi - origin) / extent.
  static InitialMap smooth(const Vec3& origin, const Vec3& extent, double amplitude);
};

InitialMap initial_map(const Config& config);

/// Div sigma_0 for sigma_0 = sigma(D phi0 D phi0^T) of the principal law, evaluated by
/// the chain rule: d sigma = mu/2 (dB + B^{-1} dB B^{-1}) + lambda/2 tr(B^{-1} dB) 1.
std::function<Vec3(const Vec3&)> equilibrium_force(const InitialMap& map, const MaterialParams& params);

/// Body force of the configured preset.
BodyForce make_force(const Config& config, const InitialMap& map);

/// Nodal sigma_0 from the configured initial map, v_0 = 0.
GridFields initial_fields(const Config& config, const InitialMap& map);

struct RateCase
{
  std::string name;
  MotionPath motion;
  double t;
};

/// Motions for the rate-consistency check: an accelerating simple shear
/// gamma = e^t - 1, triaxial stretching, a rigid rotation of a prestretched state and a
/// dilation.
std::vector<RateCase> canonical_rate_cases();

}  // namespace cauchy
