#include "cauchy/kinematics.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/error.hpp"
#include "cauchy/parallel.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace cauchy
{

void require_regular(const Tensor3& f, const char* where)
{
  const double det = f.det();
  const double n = f.norm();
  if (!std::isfinite(det) || det <= 1e-14 * n * n * n)
  {
    std::ostringstream msg;
    msg << where << ": det F = " << det;
    throw Error(ErrorCode::SingularF, msg.str());
  }
}

Tensor3 velocity_gradient(const Tensor3& f, const Tensor3& f_dot)
{
  require_regular(f, "velocity_gradient");
  return f_dot * f.inverse();
}

SpdTensor3 finger(const Tensor3& f)
{
  require_regular(f, "finger");
  return SpdTensor3::checked(SymTensor3::sym_of(f * f.transpose()));
}

Tensor3 first_piola(const SymTensor3& sigma, const Tensor3& f)
{
  require_regular(f, "first_piola");
  return sigma.full() * f.cofactor();
}

DeformationState DeformationState::from_motion(const Tensor3& f, const Tensor3& f_dot)
{
  const Tensor3 l = velocity_gradient(f, f_dot);
  const SymSkew split = sym_skew_split(l);
  return {f, finger(f), f.det(), l, split.sym, split.skew};
}

Tensor3 first_piola_rate(const DeformationState& state, const SymTensor3& sigma, const SymTensor3& sigma_dot)
{
  require_regular(state.f, "first_piola_rate");
  const Tensor3 a = state.d.trace() * sigma.full() + sigma_dot.full() - sigma.full() * state.l.transpose();
  return a * state.f.cofactor();
}

Vec3 referential_body_force(const Vec3& f, const Tensor3& deformation_gradient)
{
  require_regular(deformation_gradient, "referential_body_force");
  return deformation_gradient.det() * f;
}

Tensor3 fd_gradient(const PointMap& phi, const Vec3& xi, double h)
{
  Tensor3 g;
  for (int j = 0; j < 3; ++j)
  {
    Vec3 p = xi, m = xi;
    p[j] += h;
    m[j] -= h;
    const Vec3 d = (1.0 / (2.0 * h)) * (phi(p) - phi(m));
    for (int i = 0; i < 3; ++i) g(i, j) = d[i];
  }
  return g;
}

namespace
{
/// Row divergence (div T)_i = d T_ij / d x_j by central differences.
Vec3 fd_divergence(const TensorField& t, const Vec3& x, double h)
{
  Vec3 out{0.0, 0.0, 0.0};
  for (int j = 0; j < 3; ++j)
  {
    Vec3 p = x, m = x;
    p[j] += h;
    m[j] -= h;
    const Tensor3 d = (1.0 / (2.0 * h)) * (t(p) - t(m));
    for (int i = 0; i < 3; ++i) out[i] += d(i, j);
  }
  return out;
}
}  // namespace

double piola_identity_residual(const TensorField& s, const PointMap& phi, const Vec3& probe, double h)
{
  const TensorField pulled_back = [&](const Vec3& xi) {
    return s(phi(xi)) * fd_gradient(phi, xi, h).cofactor();
  };
  const Vec3 lhs = fd_divergence(pulled_back, probe, h);
  const Vec3 rhs = fd_gradient(phi, probe, h).det() * fd_divergence(s, phi(probe), h);
  return norm(lhs - rhs);
}

double jacobian_evolution(const std::function<double(double)>& tr_d, double t, double j0, int intervals)
{
  if (!(j0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "J0 must be positive");
  if (intervals < 2 || intervals % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "Simpson needs an even panel count");
  const double h = t / intervals;
  double sum = tr_d(0.0) + tr_d(t);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * tr_d(k * h);
  return j0 * std::exp(sum * h / 3.0);
}

double VelocityField::tr_d(const Vec3& x, double t) const
{
  if (divergence) return divergence(x, t);
  double div = 0.0;
  for (int j = 0; j < 3; ++j)
  {
    Vec3 p = x, m = x;
    p[j] += fd_step;
    m[j] -= fd_step;
    div += (v(p, t)[j] - v(m, t)[j]) / (2.0 * fd_step);
  }
  return div;
}

bool BoundingBox::contains(const Vec3& x) const
{
  for (int i = 0; i < 3; ++i)
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
  return true;
}

Trajectory reconstruct_deformation(const VelocityField& field, const std::vector<Vec3>& seeds, double horizon,
    double dt, const std::optional<BoundingBox>& box, double j0, int threads)
{
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(horizon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon must be non-negative");
  if (!(j0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "J0 must be positive");

  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(horizon / dt - 1e-9)));
  const double step = steps ? horizon / static_cast<double>(steps) : 0.0;

  Trajectory out;
  out.times.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) out.times[k] = static_cast<double>(k) * step;
  out.positions.assign(steps + 1, std::vector<Vec3>(seeds.size()));
  out.jacobians.assign(steps + 1, std::vector<double>(seeds.size()));

  auto velocity = [&](const Vec3& x, double t) {
    const Vec3 v = field.v(x, t);
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]))
      throw Error(ErrorCode::NonFiniteVelocity, "non-finite velocity sample");
    return v;
  };
  auto check_inside = [&](const Vec3& x, std::size_t seed, double t) {
    if (box && !box->contains(x))
    {
      std::ostringstream msg;
      msg << "seed " << seed << " left the domain at t = " << t;
      throw Error(ErrorCode::LeftDomain, msg.str());
    }
  };

  parallel_for(seeds.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p)
    {
      Vec3 x = seeds[p];
      double j = j0;
      check_inside(x, p, 0.0);
      out.positions[0][p] = x;
      out.jacobians[0][p] = j;
      for (std::size_t k = 0; k < steps; ++k)
      {
        const double t = out.times[k];
        const Vec3 k1 = velocity(x, t);
        const Vec3 k2 = velocity(x + (0.5 * step) * k1, t + 0.5 * step);
        const Vec3 k3 = velocity(x + (0.5 * step) * k2, t + 0.5 * step);
        const Vec3 k4 = velocity(x + step * k3, t + step);
        const Vec3 x1 = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_inside(x1, p, t + step);

        const Vec3 v1 = velocity(x1, t + step);
        const Vec3 x_mid = 0.5 * (x + x1) + (step / 8.0) * (k1 - v1);
        const double integral = step / 6.0 *
            (field.tr_d(x, t) + 4.0 * field.tr_d(x_mid, t + 0.5 * step) + field.tr_d(x1, t + step));
        j *= std::exp(integral);

        x = x1;
        out.positions[k + 1][p] = x;
        out.jacobians[k + 1][p] = j;
      }
    }
  });
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory)
{
  CsvWriter csv(out, {"t", "x0_id", "xi1", "xi2", "xi3", "J"});
  for (std::size_t k = 0; k < trajectory.times.size(); ++k)
  {
    for (std::size_t p = 0; p < trajectory.positions[k].size(); ++p)
    {
      const Vec3& x = trajectory.positions[k][p];
      csv.cell(trajectory.times[k]).cell(p).cell(x[0]).cell(x[1]).cell(x[2]).cell(trajectory.jacobians[k][p]);
      csv.end_row();
    }
  }
}

// --- motions ---------------------------------------------------------------

MotionPath::MotionPath(std::string label, Map f, Map f_dot)
    : label_(std::move(label)), f_(std::move(f)), f_dot_(std::move(f_dot))
{
}

MotionPath MotionPath::simple_shear(double rate)
{
  return simple_shear([rate](double t) { return rate * t; }, [rate](double) { return rate; });
}

MotionPath MotionPath::simple_shear(std::function<double(double)> gamma, std::function<double(double)> gamma_dot)
{
  return MotionPath(
      "simple-shear",
      [gamma](double t) {
        Tensor3 f = Tensor3::identity();
        f(0, 1) = gamma(t);
        return f;
      },
      [gamma_dot](double t) {
        Tensor3 f;
        f(0, 1) = gamma_dot(t);
        return f;
      });
}

MotionPath MotionPath::triaxial(double rate)
{
  return MotionPath(
      "triaxial",
      [rate](double t) { return Tensor3::diag(std::exp(rate * t), 1.0, std::exp(-rate * t)); },
      [rate](double t) { return Tensor3::diag(rate * std::exp(rate * t), 0.0, -rate * std::exp(-rate * t)); });
}

Tensor3 axis_rotation(const Vec3& axis, double angle)
{
  const Vec3 n = (1.0 / norm(axis)) * axis;
  const Tensor3 k({0.0, -n[2], n[1], n[2], 0.0, -n[0], -n[1], n[0], 0.0});
  return Tensor3::identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

MotionPath MotionPath::rigid_rotation(double omega, const Vec3& axis, const Tensor3& f0)
{
  const Vec3 n = (1.0 / norm(axis)) * axis;
  const Tensor3 k({0.0, -n[2], n[1], n[2], 0.0, -n[0], -n[1], n[0], 0.0});
  return MotionPath(
      "rigid-rotation",
      [=](double t) { return axis_rotation(n, omega * t) * f0; },
      [=](double t) { return omega * (k * axis_rotation(n, omega * t) * f0); });
}

MotionPath MotionPath::dilation(double rate)
{
  return MotionPath(
      "dilation",
      [rate](double t) { return std::exp(rate * t) * Tensor3::identity(); },
      [rate](double t) { return rate * std::exp(rate * t) * Tensor3::identity(); });
}

MotionPath MotionPath::composite(const MotionPath& a, const MotionPath& b)
{
  return MotionPath(
      "composite",
      [a, b](double t) { return a.f(t) * b.f(t); },
      [a, b](double t) { return a.f_dot(t) * b.f(t) + a.f(t) * b.f_dot(t); });
}

}  // namespace cauchy
