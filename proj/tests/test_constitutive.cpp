#include "cauchy/constitutive.hpp"
#include "cauchy/error.hpp"
#include "cauchy/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cauchy;

namespace
{
MaterialParams params(double mu, double lambda, std::optional<double> kappa = {})
{
  return MaterialParams{mu, lambda, kappa};
}

std::vector<IsotropicLaw> all_laws()
{
  const MaterialParams p = params(1.0, 3.0, 1.0);
  return {IsotropicLaw::mooney_log(p), IsotropicLaw::neo_hooke_exp(p), IsotropicLaw::neo_hooke_quad(p),
          IsotropicLaw::det_normalized_example(),
          IsotropicLaw::richter_custom([](const Invariants3& inv) {
            return RichterCoefficients{0.1 * std::log(inv.i3), 0.7 + 0.01 * inv.i1, -0.2};
          })};
}
}  // namespace

TEST(MaterialParams, Validation)
{
  EXPECT_NO_THROW(params(1.0, -0.5).validate());
  EXPECT_THROW(params(-1.0, 1.0).validate(), Error);
  EXPECT_THROW(params(1.0, -0.7).validate(), Error);
  EXPECT_THROW(params(1.0, 1.0, -2.0).validate(), Error);
  EXPECT_THROW(IsotropicLaw::neo_hooke_exp(params(1.0, 1.0)), Error);
}

TEST(Stress, MooneyReferenceIsStressFree)
{
  const IsotropicLaw law = IsotropicLaw::mooney_log(params(2.0, 1.0));
  EXPECT_LE(law.stress(SpdTensor3::identity()).norm(), 1e-15);
}

TEST(Stress, MooneyDiagonalExample)
{
  const IsotropicLaw law = IsotropicLaw::mooney_log(params(2.0, 1.0));
  const SymTensor3 s = law.stress(SpdTensor3::checked(SymTensor3::diag(4.0, 1.0, 1.0)));
  EXPECT_NEAR(s(0, 0), 4.443147, 1e-6);
  EXPECT_NEAR(s(1, 1), 0.693147, 1e-6);
  EXPECT_NEAR(s(2, 2), 0.693147, 1e-6);
  EXPECT_NEAR(s(0, 0), 3.75 + std::log(2.0), 1e-14);
}

TEST(Stress, DetNormalizedReferenceIsStressFree)
{
  EXPECT_LE(IsotropicLaw::det_normalized_example().stress(SpdTensor3::identity()).norm(), 1e-15);
}

TEST(Stress, EveryLawIsStressFreeAtReference)
{
  for (const auto& law : all_laws())
  {
    if (law.tag() == LawTag::RichterCustom) continue;
    EXPECT_LE(law.stress(SpdTensor3::identity()).norm(), 1e-15) << law.name();
  }
}

TEST(Stress, MooneyEqualsLogForm)
{
  const MaterialParams p = params(1.3, 0.8);
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  for (std::uint64_t n = 0; n < 500; ++n)
  {
    auto rng = sample_rng(100, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const SymTensor3 direct = law.stress(b);
    const SymTensor3 via_log = stress_from_log(p, mat_log(b));
    ASSERT_LE((direct - via_log).norm(), 1e-10 * std::max(1.0, direct.norm()));
  }
}

TEST(StressFromLog, ZeroAndDiagonal)
{
  EXPECT_EQ(stress_from_log(params(1.0, 1.0), SymTensor3::zero()).norm(), 0.0);
  const SymTensor3 s = stress_from_log(params(1.0, 0.0), SymTensor3::diag(2.0, 0.0, -2.0));
  EXPECT_LE((s - SymTensor3::diag(std::sinh(2.0), 0.0, -std::sinh(2.0))).norm(), 1e-14);
}

TEST(StressFromLog, TensionCompressionOddness)
{
  const MaterialParams p = params(1.0, 2.0);
  for (std::uint64_t n = 0; n < 200; ++n)
  {
    auto rng = sample_rng(101, n);
    const SymTensor3 h = random_sym(rng, 1.5);
    EXPECT_LE((stress_from_log(p, -1.0 * h) + stress_from_log(p, h)).norm(), 1e-12 * stress_from_log(p, h).norm());
  }
}

TEST(StressFromLog, NormGrowsAlongRays)
{
  const MaterialParams p = params(1.0, 3.0);
  for (std::uint64_t n = 0; n < 100; ++n)
  {
    auto rng = sample_rng(102, n);
    SymTensor3 h = random_sym(rng, 1.0);
    h *= 1.0 / h.norm();
    double previous = 0.0;
    for (int k = 1; k <= 40; ++k)
    {
      const double value = stress_from_log(p, (0.1 * k) * h).norm();
      ASSERT_GT(value, previous);
      previous = value;
    }
  }
}

TEST(Invariants, Examples)
{
  const Invariants3 a = invariants(SpdTensor3::identity());
  EXPECT_DOUBLE_EQ(a.i1, 3.0);
  EXPECT_DOUBLE_EQ(a.i2, 3.0);
  EXPECT_DOUBLE_EQ(a.i3, 1.0);
  const Invariants3 b = invariants(SpdTensor3::checked(SymTensor3::diag(4.0, 1.0, 1.0)));
  EXPECT_DOUBLE_EQ(b.i1, 6.0);
  EXPECT_DOUBLE_EQ(b.i2, 9.0);
  EXPECT_DOUBLE_EQ(b.i3, 4.0);
}

TEST(Invariants, SymmetricFunctionsOfEigenvalues)
{
  for (std::uint64_t n = 0; n < 200; ++n)
  {
    auto rng = sample_rng(103, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const auto& a = b.spectral().eigenvalues;
    const Invariants3 inv = invariants(b);
    EXPECT_NEAR(inv.i1, a[0] + a[1] + a[2], 1e-12 * inv.i1);
    EXPECT_NEAR(inv.i2, a[0] * a[1] + a[1] * a[2] + a[2] * a[0], 1e-12 * inv.i2);
    EXPECT_NEAR(inv.i3, a[0] * a[1] * a[2], 1e-12 * inv.i3);
  }
}

TEST(PrincipalStresses, Examples)
{
  const auto zero = principal_stresses(params(1.0, 1.0), {1.0, 1.0, 1.0});
  for (double s : zero) EXPECT_EQ(s, 0.0);

  const auto eq = principal_stresses(params(1.0, 1.0), {2.0, 2.0, 2.0});
  for (double s : eq) EXPECT_NEAR(s, 3.954442, 1e-6);

  const auto uni = principal_stresses(params(1.0, 0.0), {2.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(uni[0], 1.875);
  EXPECT_DOUBLE_EQ(uni[1], 0.0);
  EXPECT_DOUBLE_EQ(uni[2], 0.0);
}

TEST(PrincipalStresses, AgreesWithTensorEvaluation)
{
  const MaterialParams p = params(1.7, 0.6);
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  for (std::uint64_t n = 0; n < 200; ++n)
  {
    auto rng = sample_rng(104, n);
    const std::array<double, 3> l{std::exp(uniform(rng, -1, 1)), std::exp(uniform(rng, -1, 1)),
                                  std::exp(uniform(rng, -1, 1))};
    const auto closed = principal_stresses(p, l);
    const auto tensor = principal_stresses(law, l);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(closed[i], tensor[i], 1e-12 * std::max(1.0, std::abs(closed[i])));
  }
}

TEST(Isotropy, AllLawsCommuteWithRotations)
{
  for (const auto& law : all_laws())
  {
    for (std::uint64_t n = 0; n < 1000; ++n)
    {
      auto rng = sample_rng(105, n);
      const SpdTensor3 b = random_spd(rng, 2.0);
      const Tensor3 q = random_rotation(rng);
      const SymTensor3 s = law.stress(b);
      const SymTensor3 rotated = law.stress(SpdTensor3::checked(rotate(q.transpose(), b.sym())));
      ASSERT_LE((rotated - rotate(q.transpose(), s)).norm(), 1e-11 * std::max(1.0, s.norm()))
          << law.name() << " sample " << n;
    }
  }
}

TEST(Coaxiality, StressCommutesWithB)
{
  for (const auto& law : all_laws())
  {
    for (std::uint64_t n = 0; n < 1000; ++n)
    {
      auto rng = sample_rng(106, n);
      const SpdTensor3 b = random_spd(rng, 2.0);
      const SymTensor3 s = law.stress(b);
      const Tensor3 commutator = s * b.sym() - b.sym() * s;
      ASSERT_LE(commutator.norm(), 1e-11 * std::max(1.0, s.norm() * b.sym().norm())) << law.name();
    }
  }
}

TEST(TensionCompression, MooneyIsOddInB)
{
  const IsotropicLaw law = IsotropicLaw::mooney_log(params(1.0, 3.0));
  for (std::uint64_t n = 0; n < 500; ++n)
  {
    auto rng = sample_rng(107, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const SymTensor3 s = law.stress(b);
    const SymTensor3 s_inv = law.stress(SpdTensor3::checked(mat_inv(b)));
    ASSERT_LE((s + s_inv).norm(), 1e-11 * std::max(1.0, s.norm()));
  }
}

TEST(Richter, CustomReproducesMooney)
{
  const MaterialParams p = params(1.4, 0.9);
  const IsotropicLaw mooney = IsotropicLaw::mooney_log(p);
  const IsotropicLaw custom = IsotropicLaw::richter_custom([p](const Invariants3& inv) {
    return RichterCoefficients{0.5 * p.lambda * std::log(inv.i3), 0.5 * p.mu, -0.5 * p.mu};
  });
  for (std::uint64_t n = 0; n < 500; ++n)
  {
    auto rng = sample_rng(108, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const SymTensor3 s = mooney.stress(b);
    ASSERT_LE((custom.stress(b) - s).norm(), 1e-13 * std::max(1.0, s.norm()));
  }
}

TEST(Richter, CoefficientsOfBuiltInLaws)
{
  const Invariants3 inv{6.0, 9.0, 4.0};
  const auto m = IsotropicLaw::mooney_log(params(2.0, 1.0)).richter(inv);
  EXPECT_DOUBLE_EQ(m.beta1, 1.0);
  EXPECT_DOUBLE_EQ(m.beta_m1, -1.0);
  EXPECT_DOUBLE_EQ(m.beta0, 0.5 * std::log(4.0));
  const auto d = IsotropicLaw::det_normalized_example().richter(inv);
  EXPECT_NEAR(d.beta1, std::pow(4.0, -1.0 / 3.0), 1e-15);
  EXPECT_EQ(d.beta_m1, 0.0);
  try
  {
    IsotropicLaw::neo_hooke_exp(params(1.0, 1.0, 1.0)).richter(inv);
    FAIL();
  }
  catch (const Error& e)
  {
    EXPECT_EQ(e.code(), ErrorCode::NoRichterForm);
  }
}

TEST(Richter, NonFiniteCallbackRejected)
{
  const IsotropicLaw law = IsotropicLaw::richter_custom([](const Invariants3&) {
    return RichterCoefficients{NAN, 1.0, 0.0};
  });
  EXPECT_THROW(law.stress(SpdTensor3::identity()), Error);
}

TEST(LawLookup, ByName)
{
  const MaterialParams p = params(1.0, 1.0, 1.0);
  EXPECT_EQ(IsotropicLaw::from_name("mooney_log", p).tag(), LawTag::MooneyLog);
  EXPECT_EQ(IsotropicLaw::from_name("neo_hooke_exp", p).tag(), LawTag::NeoHookeExp);
  EXPECT_EQ(IsotropicLaw::from_name("neo_hooke_quad", p).tag(), LawTag::NeoHookeQuad);
  EXPECT_EQ(IsotropicLaw::from_name("det_normalized_example", p).tag(), LawTag::DetNormalizedExample);
  EXPECT_THROW(IsotropicLaw::from_name("bogus", p), Error);
}

TEST(InverseLaw, ZeroStressGivesIdentity)
{
  const auto r = inverse_law_detailed(SymTensor3::zero(), params(1.0, 1.0));
  EXPECT_LE((r.b.sym() - SymTensor3::identity()).norm(), 1e-14);
}

TEST(InverseLaw, DiagonalExampleRoundTrip)
{
  const SymTensor3 s = SymTensor3::diag(3.75 + std::log(2.0), std::log(2.0), std::log(2.0));
  const SpdTensor3 b = inverse_law(s, params(2.0, 1.0));
  EXPECT_LE((b.sym() - SymTensor3::diag(4.0, 1.0, 1.0)).norm(), 1e-12);
}

TEST(InverseLaw, PurePressureMatchesScalarNewton)
{
  // 0.5 (a^2 - a^-2) + 3 ln a = 1 solved by scalar Newton.
  double a = 1.0;
  for (int k = 0; k < 50; ++k)
  {
    const double f = 0.5 * (a * a - 1.0 / (a * a)) + 3.0 * std::log(a) - 1.0;
    const double df = a + 1.0 / (a * a * a) + 3.0 / a;
    a -= f / df;
  }
  const SpdTensor3 b = inverse_law(SymTensor3::identity(), params(1.0, 1.0));
  EXPECT_LE((b.sym() - (a * a) * SymTensor3::identity()).norm(), 1e-12);
}

TEST(InverseLaw, RandomRoundTrip)
{
  const MaterialParams p = params(1.0, 3.0);
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  for (std::uint64_t n = 0; n < 2000; ++n)
  {
    auto rng = sample_rng(109, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const auto r = inverse_law_detailed(law.stress(b), p);
    ASSERT_LE((r.b.sym() - b.sym()).norm(), 1e-10 * b.sym().norm()) << n;
    ASSERT_LE(r.iterations, 30);
  }
}

TEST(InverseLaw, NegativeLambda)
{
  const MaterialParams p = params(1.0, -0.6);
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  for (std::uint64_t n = 0; n < 500; ++n)
  {
    auto rng = sample_rng(110, n);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const auto r = inverse_law_detailed(law.stress(b), p);
    ASSERT_LE((r.b.sym() - b.sym()).norm(), 1e-10 * b.sym().norm()) << n;
  }
}
