#pragma once

#include "cauchy/tensor.hpp"

#include <array>
#include <functional>

namespace cauchy
{

/// S = Q diag(a) Q^T with a sorted descending and det Q = +1.
struct Spectral3
{
  Tensor3 rotation;
  std::array<double, 3> eigenvalues{};

  SymTensor3 reconstruct() const;
};

/// Cyclic Jacobi sweeps (at most 50), stopping once the off-diagonal norm drops below
/// 1e-14 ||S||. Throws NonConvergence when the sweep budget is exhausted.
Spectral3 spectral_decompose(const SymTensor3& s);

/// Q diag(f(a_i)) Q^T.
SymTensor3 apply_function(const Spectral3& spectral, const std::function<double(double)>& f);

/// Eigenvalue threshold below which a matrix does not count as positive definite.
double spd_threshold(double largest_eigenvalue);

/// Symmetric positive-definite tensor. Construction validates the spectrum and keeps
/// the decomposition for the matrix functions below.
class SpdTensor3
{
 public:
  /// Throws NotPositiveDefinite if an eigenvalue is <= spd_threshold(max eigenvalue).
  static SpdTensor3 checked(const SymTensor3& s);
  /// Builds Q diag(a) Q^T from a decomposition, applying the same eigenvalue gate.
  static SpdTensor3 from_spectral(const Spectral3& spectral);
  static SpdTensor3 identity();

  const SymTensor3& sym() const { return sym_; }
  const Spectral3& spectral() const { return spectral_; }

 private:
  SpdTensor3(const SymTensor3& s, const Spectral3& sp) : sym_(s), spectral_(sp) {}

  SymTensor3 sym_;
  Spectral3 spectral_;
};

enum class MatFunc
{
  Log,
  Exp,
  Sinh,
  Inv,
  Sqrt,
};

/// Primary matrix function. Log, Inv and Sqrt require an SPD argument and throw
/// NotPositiveDefinite otherwise; Exp and Sinh accept any symmetric tensor.
SymTensor3 mat_func(const SymTensor3& s, MatFunc f);

SymTensor3 mat_log(const SpdTensor3& b);
SymTensor3 mat_inv(const SpdTensor3& b);
SymTensor3 mat_sqrt(const SpdTensor3& b);
SymTensor3 mat_exp(const SymTensor3& s);
SymTensor3 mat_sinh(const SymTensor3& s);

}  // namespace cauchy
