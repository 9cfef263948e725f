#include "cauchy/spectral.hpp"

#include "cauchy/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cauchy
{

namespace
{
constexpr int kMaxSweeps = 50;
constexpr double kOffDiagonalTolerance = 1e-14;

double off_diagonal_norm(const double a[3][3])
{
  return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}
}  // namespace

SymTensor3 Spectral3::reconstruct() const
{
  return rotate(rotation, SymTensor3::diag(eigenvalues[0], eigenvalues[1], eigenvalues[2]));
}

Spectral3 spectral_decompose(const SymTensor3& s)
{
  if (!s.is_finite()) throw Error(ErrorCode::InvalidArgument, "spectral_decompose: non-finite entry");

  double a[3][3];
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = s(i, j);

  const double scale = s.norm();
  int sweep = 0;
  while (off_diagonal_norm(a) > kOffDiagonalTolerance * scale)
  {
    if (++sweep > kMaxSweeps)
      throw Error(ErrorCode::NonConvergence, "Jacobi sweep budget exhausted");

    for (int p = 0; p < 2; ++p)
    {
      for (int q = p + 1; q < 3; ++q)
      {
        if (a[p][q] == 0.0) continue;
        // Rutishauser's rotation: t = tan(angle) of the smaller root.
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);
        const double apq = a[p][q];

        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 3; ++r)
        {
          if (r == p || r == q) continue;
          const double arp = a[r][p];
          const double arq = a[r][q];
          a[r][p] = a[p][r] = arp - sn * (arq + tau * arp);
          a[r][q] = a[q][r] = arq + sn * (arp - tau * arq);
        }
        for (int r = 0; r < 3; ++r)
        {
          const double vrp = v[r][p];
          const double vrq = v[r][q];
          v[r][p] = vrp - sn * (vrq + tau * vrp);
          v[r][q] = vrq + sn * (vrp - tau * vrq);
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });

  Spectral3 out;
  for (int k = 0; k < 3; ++k)
  {
    out.eigenvalues[k] = a[order[k]][order[k]];
    for (int r = 0; r < 3; ++r) out.rotation(r, k) = v[r][order[k]];
  }
  if (out.rotation.det() < 0.0)
    for (int r = 0; r < 3; ++r) out.rotation(r, 2) = -out.rotation(r, 2);
  return out;
}

SymTensor3 apply_function(const Spectral3& spectral, const std::function<double(double)>& f)
{
  const auto& a = spectral.eigenvalues;
  return rotate(spectral.rotation, SymTensor3::diag(f(a[0]), f(a[1]), f(a[2])));
}

double spd_threshold(double largest_eigenvalue) { return 1e-12 * std::max(1.0, largest_eigenvalue); }

SpdTensor3 SpdTensor3::checked(const SymTensor3& s)
{
  Spectral3 sp = spectral_decompose(s);
  if (sp.eigenvalues[2] <= spd_threshold(sp.eigenvalues[0]))
  {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << sp.eigenvalues[2] << " (largest " << sp.eigenvalues[0] << ")";
    throw Error(ErrorCode::NotPositiveDefinite, msg.str());
  }
  return SpdTensor3(s, sp);
}

SpdTensor3 SpdTensor3::from_spectral(const Spectral3& spectral)
{
  const auto& a = spectral.eigenvalues;
  if (!(a[0] >= a[1] && a[1] >= a[2]))
    throw Error(ErrorCode::InvalidArgument, "eigenvalues must be sorted descending");
  if (a[2] <= spd_threshold(a[0]))
    throw Error(ErrorCode::NotPositiveDefinite, "non-positive eigenvalue in spectral input");
  return SpdTensor3(spectral.reconstruct(), spectral);
}

SpdTensor3 SpdTensor3::identity() { return checked(SymTensor3::identity()); }

SymTensor3 mat_log(const SpdTensor3& b)
{
  return apply_function(b.spectral(), [](double x) { return std::log(x); });
}

SymTensor3 mat_inv(const SpdTensor3& b)
{
  return apply_function(b.spectral(), [](double x) { return 1.0 / x; });
}

SymTensor3 mat_sqrt(const SpdTensor3& b)
{
  return apply_function(b.spectral(), [](double x) { return std::sqrt(x); });
}

SymTensor3 mat_exp(const SymTensor3& s)
{
  return apply_function(spectral_decompose(s), [](double x) { return std::exp(x); });
}

SymTensor3 mat_sinh(const SymTensor3& s)
{
  return apply_function(spectral_decompose(s), [](double x) { return std::sinh(x); });
}

SymTensor3 mat_func(const SymTensor3& s, MatFunc f)
{
  switch (f)
  {
    case MatFunc::Log: return mat_log(SpdTensor3::checked(s));
    case MatFunc::Inv: return mat_inv(SpdTensor3::checked(s));
    case MatFunc::Sqrt: return mat_sqrt(SpdTensor3::checked(s));
    case MatFunc::Exp: return mat_exp(s);
    case MatFunc::Sinh: return mat_sinh(s);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown matrix function");
}

}  // namespace cauchy
