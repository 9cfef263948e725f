#include "cauchy/error.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace cauchy;

TEST(VelocityGradient, Examples)
{
  auto rng = sample_rng(300, 0);
  const Tensor3 a = random_tensor(rng, 1.0);
  EXPECT_LE((velocity_gradient(Tensor3::identity(), a) - a).norm(), 1e-15);

  const double rate = 0.4, t = 1.3;
  const Tensor3 f = std::exp(rate * t) * Tensor3::identity();
  const Tensor3 l = velocity_gradient(f, rate * f);
  EXPECT_LE((l - rate * Tensor3::identity()).norm(), 1e-14);
}

TEST(VelocityGradient, RigidRotationHasNoStretching)
{
  const MotionPath m = MotionPath::rigid_rotation(0.9, {1.0, 2.0, 3.0});
  for (double t : {0.0, 0.3, 1.7})
  {
    const DeformationState s = m.state(t);
    EXPECT_LE(s.d.norm(), 1e-14);
    EXPECT_LE((s.b.sym() - SymTensor3::identity()).norm(), 1e-14);
    EXPECT_LE((s.w + s.w.transpose()).norm(), 1e-15);
    EXPECT_NEAR(s.j, 1.0, 1e-14);
  }
}

TEST(VelocityGradient, SingularRejected)
{
  try
  {
    velocity_gradient(Tensor3::diag(1.0, 1.0, 0.0), Tensor3::identity());
    FAIL();
  }
  catch (const Error& e)
  {
    EXPECT_EQ(e.code(), ErrorCode::SingularF);
  }
  EXPECT_THROW(finger(Tensor3::diag(1.0, 1.0, -1.0)), Error);
}

TEST(Finger, Examples)
{
  EXPECT_LE((finger(Tensor3::identity()).sym() - SymTensor3::identity()).norm(), 1e-15);
  EXPECT_LE((finger(Tensor3::diag(2.0, 1.0, 1.0)).sym() - SymTensor3::diag(4.0, 1.0, 1.0)).norm(), 1e-15);
  auto rng = sample_rng(301, 0);
  EXPECT_LE((finger(random_rotation(rng)).sym() - SymTensor3::identity()).norm(), 1e-14);
}

TEST(FirstPiola, Examples)
{
  auto rng = sample_rng(302, 0);
  const SymTensor3 sigma = random_sym(rng, 2.0);
  EXPECT_LE((first_piola(sigma, Tensor3::identity()) - sigma.full()).norm(), 1e-15);
  EXPECT_LE((first_piola(SymTensor3::identity(), Tensor3::diag(2.0, 1.0, 1.0)) - Tensor3::diag(1.0, 2.0, 2.0)).norm(),
      1e-15);
  EXPECT_EQ(first_piola(SymTensor3::zero(), Tensor3::diag(2.0, 1.0, 1.0)).norm(), 0.0);
}

TEST(FirstPiola, RecoversCauchyStress)
{
  for (std::uint64_t n = 0; n < 200; ++n)
  {
    auto rng = sample_rng(303, n);
    const SymTensor3 sigma = random_sym(rng, 2.0);
    const Tensor3 f = random_rotation(rng) * mat_sqrt(random_spd(rng, 1.0)).full();
    const Tensor3 s1 = first_piola(sigma, f);
    const Tensor3 back = (1.0 / f.det()) * (s1 * f.transpose());
    EXPECT_LE((back - sigma.full()).norm(), 1e-12 * std::max(1.0, sigma.norm()));
  }
}

TEST(FirstPiolaRate, Examples)
{
  const DeformationState still = DeformationState::from_motion(Tensor3::identity(), Tensor3::zero());
  auto rng = sample_rng(304, 0);
  const SymTensor3 sigma = random_sym(rng, 1.0);
  EXPECT_EQ(first_piola_rate(still, sigma, SymTensor3::zero()).norm(), 0.0);

  const SymTensor3 x = random_sym(rng, 1.0);
  EXPECT_LE((first_piola_rate(still, sigma, x) - x.full()).norm(), 1e-15);

  const double a = 0.3, p = 1.7;
  const Tensor3 f = Tensor3::diag(1.2, 0.9, 1.1);
  const DeformationState dil = DeformationState::from_motion(f, a * f);
  const Tensor3 r = first_piola_rate(dil, p * SymTensor3::identity(), SymTensor3::zero());
  EXPECT_LE((r - (2.0 * a * p) * f.cofactor()).norm(), 1e-14);
}

TEST(FirstPiolaRate, MatchesDifferenceOfFirstPiola)
{
  // d/dt (sigma(t) Cof F(t)) along a composite motion with a prescribed stress history.
  const MotionPath m = MotionPath::composite(MotionPath::simple_shear(0.4), MotionPath::triaxial(0.3));
  auto sigma_at = [](double t) { return SymTensor3(1.0 + t, 0.5 * t * t, -0.3, 0.2 * t, 0.1, -t); };
  const double t = 0.7, h = 1e-5;
  const Tensor3 fd = (1.0 / (2.0 * h)) * (first_piola(sigma_at(t + h), m.f(t + h)) - first_piola(sigma_at(t - h), m.f(t - h)));
  const SymTensor3 sigma_dot = (1.0 / (2.0 * h)) * (sigma_at(t + h) - sigma_at(t - h));
  const Tensor3 analytic = first_piola_rate(m.state(t), sigma_at(t), sigma_dot);
  EXPECT_LE((fd - analytic).norm(), 1e-8);
}

TEST(ReferentialBodyForce, Examples)
{
  const Vec3 f{1.0, -2.0, 0.5};
  EXPECT_EQ(referential_body_force(f, Tensor3::identity()), f);
  const Vec3 r = referential_body_force({1.0, 0.0, 0.0}, Tensor3::diag(2.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(r[0], 2.0);
  EXPECT_EQ(norm(referential_body_force({0.0, 0.0, 0.0}, Tensor3::diag(2.0, 1.0, 1.0))), 0.0);
}

TEST(PiolaIdentity, ConstantFieldAffineMap)
{
  const Tensor3 s({1.0, 0.2, -0.3, 0.2, 2.0, 0.1, -0.3, 0.1, 0.5});
  const Tensor3 a({1.2, 0.1, 0.0, -0.2, 0.9, 0.3, 0.05, 0.0, 1.1});
  const double r = piola_identity_residual([&](const Vec3&) { return s; }, [&](const Vec3& x) { return a * x; },
      {0.3, -0.2, 0.5}, 1e-3);
  EXPECT_LE(r, 1e-10);
}

TEST(PiolaIdentity, LinearFieldAffineMap)
{
  const Tensor3 a({1.2, 0.1, 0.0, -0.2, 0.9, 0.3, 0.05, 0.0, 1.1});
  auto s = [](const Vec3& x) {
    return Tensor3({x[0], 2 * x[1], x[2], x[1] - x[0], 0.5, 3 * x[2], x[0] + x[2], x[1], -x[0]});
  };
  const double r = piola_identity_residual(s, [&](const Vec3& x) { return a * x; }, {0.3, -0.2, 0.5}, 1e-3);
  EXPECT_LE(r, 1e-8);
}

TEST(PiolaIdentity, SecondOrderDecay)
{
  auto s = [](const Vec3& x) {
    return Tensor3({x[0] * x[0], x[1] * x[2], x[2], x[0] * x[1], 1.0 + x[1] * x[1], x[0] * x[2], x[2] * x[2],
                    x[0], x[1] * x[0]});
  };
  auto phi = [](const Vec3& x) {
    return Vec3{x[0] + 0.1 * std::sin(x[1]), x[1] + 0.1 * std::sin(x[2]), x[2] + 0.1 * std::sin(x[0])};
  };
  const Vec3 probe{0.4, 0.7, -0.3};
  const double r1 = piola_identity_residual(s, phi, probe, 2e-2);
  const double r2 = piola_identity_residual(s, phi, probe, 1e-2);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.3);
}

TEST(JacobianEvolution, Examples)
{
  EXPECT_DOUBLE_EQ(jacobian_evolution([](double) { return 0.0; }, 2.0, 1.7), 1.7);
  EXPECT_NEAR(jacobian_evolution([](double) { return 0.3; }, 2.0, 1.0), 1.8221188, 1e-7);
  EXPECT_NEAR(jacobian_evolution([](double s) { return s; }, 1.0, 1.0), std::exp(0.5), 1e-14);
  EXPECT_GT(jacobian_evolution([](double s) { return -50.0 * s; }, 3.0, 1.0), 0.0);
}

TEST(Reconstruct, ConstantVelocityIsExact)
{
  const Vec3 c{0.3, -0.1, 0.2};
  VelocityField field{[&](const Vec3&, double) { return c; }, {}, 1e-4};
  const Trajectory tr = reconstruct_deformation(field, {{0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}}, 2.0, 0.1);
  const Vec3 end = tr.positions.back()[1];
  EXPECT_LE(norm(end - (Vec3{1.0, 2.0, 3.0} + 2.0 * c)), 1e-13);
  EXPECT_NEAR(tr.jacobians.back()[1], 1.0, 1e-12);
}

TEST(Reconstruct, ZeroVelocityStaysPut)
{
  VelocityField field{[](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; }, {}, 1e-4};
  const Trajectory tr = reconstruct_deformation(field, {{0.5, 0.5, 0.5}}, 1.0, 0.25);
  for (std::size_t k = 0; k < tr.times.size(); ++k)
  {
    EXPECT_EQ(tr.positions[k][0], (Vec3{0.5, 0.5, 0.5}));
    EXPECT_EQ(tr.jacobians[k][0], 1.0);
  }
}

TEST(Reconstruct, LinearFieldFourthOrder)
{
  const double a = 0.8, horizon = 1.0;
  VelocityField field{[a](const Vec3& x, double) { return a * x; },
                      [a](const Vec3&, double) { return 3.0 * a; }, 1e-4};
  const Vec3 x0{0.4, -0.3, 0.7};
  auto error = [&](double dt) {
    const Trajectory tr = reconstruct_deformation(field, {x0}, horizon, dt);
    return norm(tr.positions.back()[0] - std::exp(a * horizon) * x0);
  };
  EXPECT_NEAR(std::log2(error(0.1) / error(0.05)), 4.0, 0.5);
}

TEST(Reconstruct, NonlinearJacobianFourthOrder)
{
  // v = (c xi1^2, 0, 0): xi1(t) = xi10 / (1 - c xi10 t) and J = (1 - c xi10 t)^-2.
  const double c = 0.5, horizon = 1.0;
  VelocityField field{[c](const Vec3& x, double) { return Vec3{c * x[0] * x[0], 0.0, 0.0}; },
                      [c](const Vec3& x, double) { return 2.0 * c * x[0]; }, 1e-4};
  const Vec3 x0{0.6, 0.0, 0.0};
  const double exact = std::pow(1.0 - c * x0[0] * horizon, -2.0);
  auto error = [&](double dt) {
    return std::abs(reconstruct_deformation(field, {x0}, horizon, dt).jacobians.back()[0] - exact);
  };
  EXPECT_NEAR(std::log2(error(0.1) / error(0.05)), 4.0, 0.5);
}

TEST(Reconstruct, FiniteDifferenceDivergence)
{
  const double a = 0.2;
  VelocityField field{[a](const Vec3& x, double) { return a * x; }, {}, 1e-3};
  const Trajectory tr = reconstruct_deformation(field, {{0.1, 0.2, 0.3}}, 1.0, 0.05);
  EXPECT_NEAR(tr.jacobians.back()[0], std::exp(3.0 * a), 1e-10);
}

TEST(Reconstruct, Errors)
{
  VelocityField fast{[](const Vec3&, double) { return Vec3{1.0, 0.0, 0.0}; }, {}, 1e-4};
  try
  {
    reconstruct_deformation(fast, {{0.5, 0.5, 0.5}}, 1.0, 0.1, BoundingBox{{0, 0, 0}, {1, 1, 1}});
    FAIL();
  }
  catch (const Error& e)
  {
    EXPECT_EQ(e.code(), ErrorCode::LeftDomain);
  }
  VelocityField bad{[](const Vec3&, double) { return Vec3{NAN, 0.0, 0.0}; }, {}, 1e-4};
  try
  {
    reconstruct_deformation(bad, {{0.5, 0.5, 0.5}}, 1.0, 0.1);
    FAIL();
  }
  catch (const Error& e)
  {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteVelocity);
  }
}

TEST(Reconstruct, CsvExport)
{
  VelocityField field{[](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; }, {}, 1e-4};
  const Trajectory tr = reconstruct_deformation(field, {{0.5, 0.25, 0.0}}, 0.5, 0.5);
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  EXPECT_EQ(out.str(), "t,x0_id,xi1,xi2,xi3,J\n0,0,0.5,0.25,0,1\n0.5,0,0.5,0.25,0,1\n");
}

TEST(MotionPath, RateIdentityForFinger)
{
  // B_dot = L B + B L^T along every canonical motion.
  const std::vector<MotionPath> motions{MotionPath::simple_shear(1.0), MotionPath::triaxial(1.0),
      MotionPath::rigid_rotation(0.8, {0.0, 0.0, 1.0}, Tensor3::diag(1.3, 0.9, 1.0)), MotionPath::dilation(0.2)};
  for (const auto& m : motions)
  {
    const double t = 0.3;
    auto err = [&](double h) {
      const SymTensor3 fd = (1.0 / (2.0 * h)) * (finger(m.f(t + h)).sym() - finger(m.f(t - h)).sym());
      const DeformationState s = m.state(t);
      const Tensor3 exact = s.l * s.b.sym().full() + s.b.sym().full() * s.l.transpose();
      return (fd.full() - exact).norm();
    };
    const double e1 = err(1e-2), e2 = err(5e-3);
    if (e1 < 1e-12) continue;  // exact for motions linear in t
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.3) << m.label();
  }
}
