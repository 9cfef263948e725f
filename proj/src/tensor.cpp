#include "cauchy/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace cauchy
{

// --- Tensor3 ---------------------------------------------------------------

Tensor3& Tensor3::operator+=(const Tensor3& o)
{
  for (std::size_t k = 0; k < 9; ++k) a_[k] += o.a_[k];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o)
{
  for (std::size_t k = 0; k < 9; ++k) a_[k] -= o.a_[k];
  return *this;
}

Tensor3& Tensor3::operator*=(double s)
{
  for (auto& x : a_) x *= s;
  return *this;
}

Tensor3 Tensor3::transpose() const
{
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

double Tensor3::det() const
{
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Tensor3 Tensor3::cofactor() const
{
  const auto& m = *this;
  Tensor3 c;
  c(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  c(0, 1) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  c(0, 2) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  c(1, 0) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  c(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  c(1, 2) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  c(2, 0) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  c(2, 1) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  c(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return c;
}

Tensor3 Tensor3::inverse() const
{
  Tensor3 inv = cofactor().transpose();
  inv *= 1.0 / det();
  return inv;
}

double Tensor3::norm() const
{
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator-(const Tensor3& a) { return -1.0 * a; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Tensor3 operator*(const Tensor3& a, const Tensor3& b)
{
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

Vec3 operator*(const Tensor3& a, const Vec3& v)
{
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
          a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

double inner(const Tensor3& a, const Tensor3& b)
{
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a.data()[k] * b.data()[k];
  return s;
}

// --- SymTensor3 ------------------------------------------------------------

namespace
{
constexpr int kSymIndex[3][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}};
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

SymTensor3 SymTensor3::sym_of(const Tensor3& x)
{
  return SymTensor3(x(0, 0), x(1, 1), x(2, 2), 0.5 * (x(0, 1) + x(1, 0)),
      0.5 * (x(1, 2) + x(2, 1)), 0.5 * (x(2, 0) + x(0, 2)));
}

double SymTensor3::operator()(int i, int j) const { return v_[kSymIndex[i][j]]; }

SymTensor3& SymTensor3::operator+=(const SymTensor3& o)
{
  for (std::size_t k = 0; k < 6; ++k) v_[k] += o.v_[k];
  return *this;
}

SymTensor3& SymTensor3::operator-=(const SymTensor3& o)
{
  for (std::size_t k = 0; k < 6; ++k) v_[k] -= o.v_[k];
  return *this;
}

SymTensor3& SymTensor3::operator*=(double s)
{
  for (auto& x : v_) x *= s;
  return *this;
}

Tensor3 SymTensor3::full() const
{
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(i, j);
  return t;
}

double SymTensor3::det() const { return full().det(); }

double SymTensor3::norm() const
{
  const auto& v = v_;
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] +
                   2.0 * (v[3] * v[3] + v[4] * v[4] + v[5] * v[5]));
}

bool SymTensor3::is_finite() const
{
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
SymTensor3 operator-(const SymTensor3& a) { return -1.0 * a; }
SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }
Tensor3 operator*(const SymTensor3& a, const SymTensor3& b) { return a.full() * b.full(); }

double inner(const SymTensor3& a, const SymTensor3& b)
{
  const auto& x = a.data();
  const auto& y = b.data();
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + 2.0 * (x[3] * y[3] + x[4] * y[4] + x[5] * y[5]);
}

SymTensor3 rotate(const Tensor3& q, const SymTensor3& s)
{
  return SymTensor3::sym_of(q * s.full() * q.transpose());
}

SymTensor3 sym_product(const SymTensor3& a, const SymTensor3& b)
{
  const Tensor3 ab = a * b;
  return 2.0 * SymTensor3::sym_of(ab);
}

SymTensor3 deviator(const SymTensor3& s) { return s - (s.trace() / 3.0) * SymTensor3::identity(); }

SymSkew sym_skew_split(const Tensor3& x)
{
  SymSkew out{SymTensor3::sym_of(x), Tensor3{}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.skew(i, j) = 0.5 * (x(i, j) - x(j, i));
  return out;
}

// --- Mandel ----------------------------------------------------------------

Mandel6 to_mandel(const SymTensor3& s)
{
  const auto& v = s.data();
  Mandel6 m;
  m << v[0], v[1], v[2], kSqrt2 * v[3], kSqrt2 * v[4], kSqrt2 * v[5];
  return m;
}

SymTensor3 from_mandel(const Mandel6& m)
{
  return SymTensor3(m[0], m[1], m[2], m[3] / kSqrt2, m[4] / kSqrt2, m[5] / kSqrt2);
}

SymTensor3 mandel_basis(int k)
{
  Mandel6 e = Mandel6::Zero();
  e[k] = 1.0;
  return from_mandel(e);
}

SymTensor3 apply4(const FourthOrderMandel& h, const SymTensor3& d)
{
  return from_mandel(h * to_mandel(d));
}

FourthOrderMandel isotropic_stiffness(double mu, double lambda)
{
  FourthOrderMandel c = 2.0 * mu * FourthOrderMandel::Identity();
  c.topLeftCorner<3, 3>().array() += lambda;
  return c;
}

double fourth_order_component(const FourthOrderMandel& h, int i, int j, int k, int l)
{
  constexpr int kMandel[3][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}};
  const double wij = (i == j) ? 1.0 : 1.0 / kSqrt2;
  const double wkl = (k == l) ? 1.0 : 1.0 / kSqrt2;
  return wij * wkl * h(kMandel[i][j], kMandel[k][l]);
}

SymmetricMinEig min_eig_66(const FourthOrderMandel& h)
{
  const double defect = (h - h.transpose()).norm();
  const bool symmetrized = defect > 1e-10 * std::max(1.0, h.norm());
  const FourthOrderMandel s = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<FourthOrderMandel> solver(s, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()[0], symmetrized};
}

}  // namespace cauchy
