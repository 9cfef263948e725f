#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

namespace cauchy
{

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// General 3x3 tensor, row-major.
class Tensor3
{
 public:
  constexpr Tensor3() = default;
  constexpr explicit Tensor3(const std::array<double, 9>& entries) : a_(entries) {}

  static constexpr Tensor3 zero() { return Tensor3{}; }
  static constexpr Tensor3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Tensor3 diag(double d0, double d1, double d2)
  {
    return Tensor3({d0, 0.0, 0.0, 0.0, d1, 0.0, 0.0, 0.0, d2});
  }

  constexpr double operator()(int i, int j) const { return a_[3 * i + j]; }
  constexpr double& operator()(int i, int j) { return a_[3 * i + j]; }
  const std::array<double, 9>& data() const { return a_; }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

  Tensor3 transpose() const;
  double trace() const { return a_[0] + a_[4] + a_[8]; }
  double det() const;
  /// Cof X = det(X) X^{-T}, computed from signed minors (defined for singular X too).
  Tensor3 cofactor() const;
  /// Inverse via the cofactor; the caller guarantees det != 0.
  Tensor3 inverse() const;
  double norm() const;

 private:
  std::array<double, 9> a_{};
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a);
Tensor3 operator*(double s, Tensor3 a);
Tensor3 operator*(const Tensor3& a, const Tensor3& b);
Vec3 operator*(const Tensor3& a, const Vec3& v);
double inner(const Tensor3& a, const Tensor3& b);

/// Symmetric 3x3 tensor storing (xx, yy, zz, xy, yz, zx).
class SymTensor3
{
 public:
  constexpr SymTensor3() = default;
  constexpr SymTensor3(double xx, double yy, double zz, double xy, double yz, double zx)
      : v_{xx, yy, zz, xy, yz, zx}
  {
  }

  static constexpr SymTensor3 zero() { return SymTensor3{}; }
  static constexpr SymTensor3 identity() { return SymTensor3(1.0, 1.0, 1.0, 0.0, 0.0, 0.0); }
  static constexpr SymTensor3 diag(double d0, double d1, double d2)
  {
    return SymTensor3(d0, d1, d2, 0.0, 0.0, 0.0);
  }
  /// Symmetric part of a general tensor.
  static SymTensor3 sym_of(const Tensor3& x);

  double operator()(int i, int j) const;
  double& component(std::size_t k) { return v_[k]; }
  double component(std::size_t k) const { return v_[k]; }
  const std::array<double, 6>& data() const { return v_; }

  SymTensor3& operator+=(const SymTensor3& o);
  SymTensor3& operator-=(const SymTensor3& o);
  SymTensor3& operator*=(double s);

  Tensor3 full() const;
  double trace() const { return v_[0] + v_[1] + v_[2]; }
  double det() const;
  double norm() const;
  bool is_finite() const;

 private:
  std::array<double, 6> v_{};
};

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(const SymTensor3& a);
SymTensor3 operator*(double s, SymTensor3 a);
Tensor3 operator*(const SymTensor3& a, const SymTensor3& b);
double inner(const SymTensor3& a, const SymTensor3& b);
/// Q S Q^T.
SymTensor3 rotate(const Tensor3& q, const SymTensor3& s);
/// a b + b a, which is symmetric for symmetric a, b.
SymTensor3 sym_product(const SymTensor3& a, const SymTensor3& b);
/// dev_3 X = X - tr(X)/3 * 1.
SymTensor3 deviator(const SymTensor3& s);

struct SymSkew
{
  SymTensor3 sym;
  Tensor3 skew;
};

/// X = sym X + skew X.
SymSkew sym_skew_split(const Tensor3& x);

// ---------------------------------------------------------------------------
// Mandel embedding Sym(3) -> R^6: (S11, S22, S33, sqrt2 S12, sqrt2 S23, sqrt2 S31).

using Mandel6 = Eigen::Matrix<double, 6, 1>;
/// Minor-symmetric fourth-order tensor acting on Sym(3).
using FourthOrderMandel = Eigen::Matrix<double, 6, 6>;

Mandel6 to_mandel(const SymTensor3& s);
SymTensor3 from_mandel(const Mandel6& v);

/// Orthonormal basis tensor E_k with to_mandel(E_k) = e_k.
SymTensor3 mandel_basis(int k);

SymTensor3 apply4(const FourthOrderMandel& h, const SymTensor3& d);

/// Mandel matrix of a linear map Sym(3) -> Sym(3).
template <typename Map>
FourthOrderMandel mandel_matrix_of(Map&& map)
{
  FourthOrderMandel m;
  for (int k = 0; k < 6; ++k) m.col(k) = to_mandel(map(mandel_basis(k)));
  return m;
}

/// C_iso.D = 2 mu D + lambda tr(D) 1.
FourthOrderMandel isotropic_stiffness(double mu, double lambda);

/// Full-index component H_ijkl of a minor-symmetric Mandel matrix.
double fourth_order_component(const FourthOrderMandel& h, int i, int j, int k, int l);

struct SymmetricMinEig
{
  double value;
  /// True when the input was not symmetric to 1e-10 and was symmetrized first.
  bool symmetrized;
};

/// Smallest eigenvalue of the symmetric part of a Mandel matrix.
SymmetricMinEig min_eig_66(const FourthOrderMandel& h);

}  // namespace cauchy
