#pragma once

#include "cauchy/constitutive.hpp"
#include "cauchy/spectral.hpp"
#include "cauchy/tensor.hpp"

#include <cstdint>
#include <optional>

namespace cauchy
{

enum class StiffnessSource
{
  Analytic,
  FdGeneric,
};

/// Induced Zaremba-Jaumann tangent: D^ZJ[sigma] = H.D.
struct TangentStiffness
{
  FourthOrderMandel matrix;
  StiffnessSource source;
  SymTensor3 b;
};

struct ComplianceTensor
{
  FourthOrderMandel matrix;
};

/// Lower bound 2 mu + 3 min(lambda, 0) for the smallest eigenvalue of the principal-law
/// tangent; a module constant derived from the closed form, used as the coercivity floor.
double coercivity_floor(const MaterialParams& params);

/// H.D = mu/2 (BD + DB + B^{-1}D + DB^{-1}) + lambda tr(D) 1.
TangentStiffness h_zj_mooney(const SpdTensor3& b, const MaterialParams& params);

/// h_zj_mooney(inverse_law(sigma)).
TangentStiffness h_zj_of_sigma(const SymTensor3& sigma, const MaterialParams& params);

/// Default central-difference step 1e-5 max(1, ||B||).
double default_fd_step(const SpdTensor3& b);

/// Column k = vec([sigma(B + h P_k) - sigma(B - h P_k)] / 2h) with P_k = B E_k + E_k B.
/// A perturbation that leaves SPD triggers one retry at h/10, then NotPositiveDefinite.
TangentStiffness h_zj_generic(const IsotropicLaw& law, const SpdTensor3& b, std::optional<double> h_fd = {});

/// Analytic tangent for the principal law, difference tangent (default step) otherwise.
TangentStiffness h_zj(const IsotropicLaw& law, const SpdTensor3& b);

/// 6x6 inverse. Throws NearSingular when the 2-norm condition estimate exceeds 1e12.
ComplianceTensor compliance(const TangentStiffness& h);

struct SymmetryReport
{
  bool minor = true;
  /// ||H - H^T|| / max(1, ||H||).
  double major_defect = 0.0;
  double min_eig = 0.0;
};

SymmetryReport symmetry_report(const FourthOrderMandel& h);
inline SymmetryReport symmetry_report(const TangentStiffness& h) { return symmetry_report(h.matrix); }

struct IndefinitenessWitness
{
  double min_eig = 0.0;
  SymTensor3 b;
  /// Sample index; grid points follow the random samples.
  std::uint64_t index = 0;
};

/// Worst min_eig of h_zj(law, B) over `samples` random SPD B (eigenvalues
/// log-uniform in [e^-3, e^3]) followed by a coarse grid of diagonal stretches.
/// Deterministic for a given seed regardless of `threads`.
IndefinitenessWitness indefiniteness_search(
    const IsotropicLaw& law, std::uint64_t seed, std::uint64_t samples, int threads = 1);

}  // namespace cauchy
