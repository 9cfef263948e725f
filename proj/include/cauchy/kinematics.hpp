#pragma once

#include "cauchy/spectral.hpp"
#include "cauchy/tensor.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cauchy
{

/// Throws SingularF when |det F| <= 1e-14 ||F||^3 or det F < 0.
void require_regular(const Tensor3& f, const char* where);

/// L = Fdot F^{-1}.
Tensor3 velocity_gradient(const Tensor3& f, const Tensor3& f_dot);

/// B = F F^T.
SpdTensor3 finger(const Tensor3& f);

/// S1 = sigma Cof F.
Tensor3 first_piola(const SymTensor3& sigma, const Tensor3& f);

/// Kinematic bundle at a material point.
struct DeformationState
{
  Tensor3 f;
  SpdTensor3 b;
  double j;
  Tensor3 l;
  SymTensor3 d;
  Tensor3 w;

  static DeformationState from_motion(const Tensor3& f, const Tensor3& f_dot);
};

/// dS1/dt = (tr(D) sigma + D sigma/Dt - sigma L^T) Cof F.
Tensor3 first_piola_rate(const DeformationState& state, const SymTensor3& sigma, const SymTensor3& sigma_dot);

/// f~ = det F f.
Vec3 referential_body_force(const Vec3& f, const Tensor3& deformation_gradient);

using TensorField = std::function<Tensor3(const Vec3&)>;
using PointMap = std::function<Vec3(const Vec3&)>;

/// Central-difference gradient of a point map, (D phi)_ij = d phi_i / d xi_j.
Tensor3 fd_gradient(const PointMap& phi, const Vec3& xi, double h);

/// |Div_xi[S(phi(xi)) Cof D phi(xi)] - det D phi(xi) (div_x S)(phi(xi))| at the probe
/// point, with every derivative taken by central differences of step h. S is a
/// spatial field; divergences act on rows. Vanishes to O(h^2).
double piola_identity_residual(const TensorField& s, const PointMap& phi, const Vec3& probe, double h);

/// J(t) = J0 exp(int_0^t tr D ds) with composite Simpson on `intervals` (even) panels.
double jacobian_evolution(const std::function<double(double)>& tr_d, double t, double j0, int intervals = 64);

/// Velocity callback v(x, t) with optional analytic divergence. Without one, tr D is
/// sampled by central differences of step `fd_step`.
struct VelocityField
{
  std::function<Vec3(const Vec3&, double)> v;
  std::function<double(const Vec3&, double)> divergence;
  double fd_step = 1e-4;

  double tr_d(const Vec3& x, double t) const;
};

struct BoundingBox
{
  Vec3 lo;
  Vec3 hi;

  bool contains(const Vec3& x) const;
};

struct Trajectory
{
  std::vector<double> times;
  /// positions[k][p]: seed p at time index k.
  std::vector<std::vector<Vec3>> positions;
  /// jacobians[k][p].
  std::vector<std::vector<double>> jacobians;
};

/// Classic RK4 on d phi/dt = v(phi, t) for each seed, with J tracked per step by Simpson
/// quadrature of tr D at the step ends and the cubic-Hermite midpoint.
/// Throws LeftDomain when a point exits `box` and NonFiniteVelocity on non-finite v.
Trajectory reconstruct_deformation(const VelocityField& field, const std::vector<Vec3>& seeds, double horizon,
    double dt, const std::optional<BoundingBox>& box = {}, double j0 = 1.0, int threads = 1);

/// CSV with header t,x0_id,xi1,xi2,xi3,J.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// ---------------------------------------------------------------------------
// Analytic motions t -> F(t).

class MotionPath
{
 public:
  using Map = std::function<Tensor3(double)>;

  MotionPath(std::string label, Map f, Map f_dot);

  /// F = 1 + rate t e1 (x) e2.
  static MotionPath simple_shear(double rate);
  /// F = 1 + gamma(t) e1 (x) e2 with a caller-supplied shear schedule.
  static MotionPath simple_shear(std::function<double(double)> gamma, std::function<double(double)> gamma_dot);
  /// F = diag(e^{rate t}, 1, e^{-rate t}) (isochoric).
  static MotionPath triaxial(double rate);
  /// F = Q(t) F0 with Q(t) a rotation by omega t about `axis`.
  static MotionPath rigid_rotation(double omega, const Vec3& axis, const Tensor3& f0 = Tensor3::identity());
  /// F = e^{rate t} 1.
  static MotionPath dilation(double rate);
  /// F = F_a(t) F_b(t).
  static MotionPath composite(const MotionPath& a, const MotionPath& b);

  const std::string& label() const { return label_; }
  Tensor3 f(double t) const { return f_(t); }
  Tensor3 f_dot(double t) const { return f_dot_(t); }
  DeformationState state(double t) const { return DeformationState::from_motion(f(t), f_dot(t)); }

 private:
  std::string label_;
  Map f_;
  Map f_dot_;
};

/// Rotation by angle about a unit axis (Rodrigues).
Tensor3 axis_rotation(const Vec3& axis, double angle);

}  // namespace cauchy
