#include "cauchy/stiffness.hpp"

#include "cauchy/error.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/sampling.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace cauchy
{

namespace
{
constexpr double kMaxCondition = 1e12;
constexpr double kSearchLogRange = 3.0;
constexpr int kSearchGridPoints = 13;

FourthOrderMandel fd_columns(const IsotropicLaw& law, const SpdTensor3& b, double h)
{
  FourthOrderMandel m;
  for (int k = 0; k < 6; ++k)
  {
    const SymTensor3 p = sym_product(b.sym(), mandel_basis(k));
    const SymTensor3 plus = law.stress(SpdTensor3::checked(b.sym() + h * p));
    const SymTensor3 minus = law.stress(SpdTensor3::checked(b.sym() - h * p));
    m.col(k) = to_mandel((1.0 / (2.0 * h)) * (plus - minus));
  }
  return m;
}
}  // namespace

double coercivity_floor(const MaterialParams& params)
{
  return 2.0 * params.mu + 3.0 * std::min(params.lambda, 0.0);
}

TangentStiffness h_zj_mooney(const SpdTensor3& b, const MaterialParams& params)
{
  const SymTensor3& bs = b.sym();
  const SymTensor3 b_inv = mat_inv(b);
  const double half_mu = 0.5 * params.mu;
  const FourthOrderMandel m = mandel_matrix_of([&](const SymTensor3& d) {
    return half_mu * (sym_product(bs, d) + sym_product(b_inv, d)) +
           (params.lambda * d.trace()) * SymTensor3::identity();
  });
  return {m, StiffnessSource::Analytic, bs};
}

TangentStiffness h_zj_of_sigma(const SymTensor3& sigma, const MaterialParams& params)
{
  return h_zj_mooney(inverse_law(sigma, params), params);
}

double default_fd_step(const SpdTensor3& b) { return 1e-5 * std::max(1.0, b.sym().norm()); }

TangentStiffness h_zj_generic(const IsotropicLaw& law, const SpdTensor3& b, std::optional<double> h_fd)
{
  const double h = h_fd.value_or(default_fd_step(b));
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h_fd must be positive");
  try
  {
    return {fd_columns(law, b, h), StiffnessSource::FdGeneric, b.sym()};
  }
  catch (const Error& e)
  {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
  }
  return {fd_columns(law, b, 0.1 * h), StiffnessSource::FdGeneric, b.sym()};
}

TangentStiffness h_zj(const IsotropicLaw& law, const SpdTensor3& b)
{
  if (law.tag() == LawTag::MooneyLog) return h_zj_mooney(b, law.params());
  return h_zj_generic(law, b);
}

ComplianceTensor compliance(const TangentStiffness& h)
{
  Eigen::JacobiSVD<FourthOrderMandel> svd(h.matrix);
  const auto& sv = svd.singularValues();
  const double condition = sv[5] > 0.0 ? sv[0] / sv[5] : INFINITY;
  if (!(condition <= kMaxCondition))
  {
    std::ostringstream msg;
    msg << "compliance: condition estimate " << condition;
    throw Error(ErrorCode::NearSingular, msg.str());
  }
  return {h.matrix.inverse()};
}

SymmetryReport symmetry_report(const FourthOrderMandel& h)
{
  SymmetryReport r;
  r.major_defect = (h - h.transpose()).norm() / std::max(1.0, h.norm());
  r.min_eig = min_eig_66(h).value;
  return r;
}

IndefinitenessWitness indefiniteness_search(
    const IsotropicLaw& law, std::uint64_t seed, std::uint64_t samples, int threads)
{
  const std::uint64_t grid = static_cast<std::uint64_t>(kSearchGridPoints) * kSearchGridPoints * kSearchGridPoints;
  const std::uint64_t total = samples + grid;
  std::vector<double> values(total);
  std::vector<SymTensor3> bs(total);

  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
    {
      SymTensor3 b;
      if (i < samples)
      {
        auto rng = sample_rng(seed, i);
        b = random_spd(rng, kSearchLogRange).sym();
      }
      else
      {
        std::size_t g = i - samples;
        double u[3];
        for (auto& x : u)
        {
          x = -kSearchLogRange + 2.0 * kSearchLogRange * static_cast<double>(g % kSearchGridPoints) /
                                     (kSearchGridPoints - 1);
          g /= kSearchGridPoints;
        }
        b = SymTensor3::diag(std::exp(u[0]), std::exp(u[1]), std::exp(u[2]));
      }
      bs[i] = b;
      values[i] = min_eig_66(h_zj(law, SpdTensor3::checked(b)).matrix).value;
    }
  });

  IndefinitenessWitness w{values[0], bs[0], 0};
  for (std::uint64_t i = 1; i < total; ++i)
    if (values[i] < w.min_eig) w = {values[i], bs[i], i};
  return w;
}

}  // namespace cauchy
