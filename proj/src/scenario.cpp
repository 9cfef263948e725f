#include "cauchy/scenario.hpp"

#include "cauchy/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cauchy
{

InitialMap InitialMap::identity() { return stretch({1.0, 1.0, 1.0}); }

InitialMap InitialMap::stretch(const Vec3& s)
{
  return {[s](const Vec3& x) { return Vec3{s[0] * x[0], s[1] * x[1], s[2] * x[2]}; },
          [s](const Vec3&) { return Tensor3::diag(s[0], s[1], s[2]); },
          [](const Vec3&) { return std::array<Tensor3, 3>{}; }};
}

InitialMap InitialMap::smooth(const Vec3& o, const Vec3& l, double a)
{
  auto u = [o, l](const Vec3& x) { return Vec3{(x[0] - o[0]) / l[0], (x[1] - o[1]) / l[1], (x[2] - o[2]) / l[2]}; };
  InitialMap m;
  m.phi = [=](const Vec3& x) {
    const Vec3 r = u(x);
    return Vec3{x[0] + a * l[0] * std::sin(2.0 * r[1]), x[1] + a * l[1] * std::sin(3.0 * r[2]),
                x[2] + a * l[2] * r[0] * r[1]};
  };
  m.gradient = [=](const Vec3& x) {
    const Vec3 r = u(x);
    Tensor3 f = Tensor3::identity();
    f(0, 1) = 2.0 * a * l[0] / l[1] * std::cos(2.0 * r[1]);
    f(1, 2) = 3.0 * a * l[1] / l[2] * std::cos(3.0 * r[2]);
    f(2, 0) = a * l[2] / l[0] * r[1];
    f(2, 1) = a * l[2] / l[1] * r[0];
    return f;
  };
  m.gradient_derivatives = [=](const Vec3& x) {
    const Vec3 r = u(x);
    std::array<Tensor3, 3> d{};
    // d/dxi_0: only F(2,1) depends on u0.
    d[0](2, 1) = a * l[2] / (l[0] * l[1]);
    // d/dxi_1: F(0,1) and F(2,0).
    d[1](0, 1) = -4.0 * a * l[0] / (l[1] * l[1]) * std::sin(2.0 * r[1]);
    d[1](2, 0) = a * l[2] / (l[0] * l[1]);
    // d/dxi_2: F(1,2).
    d[2](1, 2) = -9.0 * a * l[1] / (l[2] * l[2]) * std::sin(3.0 * r[2]);
    return d;
  };
  return m;
}

InitialMap initial_map(const Config& config)
{
  switch (config.scenario.initial)
  {
    case InitialPreset::Identity: return InitialMap::identity();
    case InitialPreset::Stretch: return InitialMap::stretch(config.scenario.stretch);
    case InitialPreset::Smooth: return InitialMap::smooth(config.grid.origin, config.grid.extent, config.scenario.amplitude);
  }
  return InitialMap::identity();
}

std::function<Vec3(const Vec3&)> equilibrium_force(const InitialMap& map, const MaterialParams& params)
{
  return [map, params](const Vec3& x) {
    const Tensor3 f = map.gradient(x);
    const Tensor3 b = f * f.transpose();
    const Tensor3 b_inv = b.inverse();
    const auto df = map.gradient_derivatives(x);
    Vec3 div{0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j)
    {
      const Tensor3 db = df[j] * f.transpose() + f * df[j].transpose();
      const Tensor3 ds = (0.5 * params.mu) * (db + b_inv * db * b_inv) +
                         (0.5 * params.lambda * inner(b_inv.transpose(), db)) * Tensor3::identity();
      for (int i = 0; i < 3; ++i) div[i] += ds(i, j);
    }
    return div;
  };
}

BodyForce make_force(const Config& config, const InitialMap& map)
{
  BodyForce force = BodyForce::zero();
  if (config.forcing.preset == ForcingPreset::None) return force;

  const auto f_eq = equilibrium_force(map, config.material.params);
  const double h = 1e-5 * std::max({config.grid.extent[0], config.grid.extent[1], config.grid.extent[2]});
  auto grad_eq = [f_eq, h](const Vec3& x) {
    Tensor3 g;
    for (int j = 0; j < 3; ++j)
    {
      Vec3 p = x, m = x;
      p[j] += h;
      m[j] -= h;
      const Vec3 d = (1.0 / (2.0 * h)) * (f_eq(p) - f_eq(m));
      for (int i = 0; i < 3; ++i) g(i, j) = d[i];
    }
    return g;
  };

  if (config.forcing.preset == ForcingPreset::Equilibrium)
  {
    force.f = [f_eq](const Vec3& x, double) { return f_eq(x); };
    force.grad = [grad_eq](const Vec3& x, double) { return grad_eq(x); };
    return force;
  }

  // Ramp: f = f_eq + a t sin(pi u1) e1.
  const double a = config.forcing.amplitude;
  const double y0 = config.grid.origin[1], ly = config.grid.extent[1];
  const double pi = std::numbers::pi;
  force.f = [=](const Vec3& x, double t) {
    Vec3 f = f_eq(x);
    f[0] += a * t * std::sin(pi * (x[1] - y0) / ly);
    return f;
  };
  force.df_dt = [=](const Vec3& x, double) { return Vec3{a * std::sin(pi * (x[1] - y0) / ly), 0.0, 0.0}; };
  force.grad = [=](const Vec3& x, double t) {
    Tensor3 g = grad_eq(x);
    g(0, 1) += a * t * pi / ly * std::cos(pi * (x[1] - y0) / ly);
    return g;
  };
  return force;
}

GridFields initial_fields(const Config& config, const InitialMap& map)
{
  if (config.material.law != "mooney_log")
    throw Error(ErrorCode::InvalidArgument, "the field solver supports material.law = mooney_log only");
  return initial_compatibility(config.grid.make(), map.phi, config.material.params);
}

std::vector<RateCase> canonical_rate_cases()
{
  // Under a linear shear schedule the principal-law stress is a quadratic polynomial in
  // t and central differences are exact, so the shear case uses gamma = e^t - 1.
  return {{"simple_shear",
              MotionPath::simple_shear([](double t) { return std::expm1(t); }, [](double t) { return std::exp(t); }),
              1.0},
      {"triaxial", MotionPath::triaxial(1.0), 0.3},
      {"rigid_rotation", MotionPath::rigid_rotation(1.0, {1.0, 1.0, 1.0}, Tensor3::diag(1.4, 0.8, 1.1)), 0.5},
      {"dilation", MotionPath::dilation(0.5), 0.4}};
}

}  // namespace cauchy
