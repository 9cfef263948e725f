#pragma once

#include "cauchy/constitutive.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/tensor.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cauchy
{

/// Uniform box grid of nodes. Every axis carries at least three nodes, so at least one
/// interior node.
class StructuredGrid
{
 public:
  StructuredGrid(const Vec3& origin, const Vec3& extent, const std::array<int, 3>& nodes);

  /// Unit cube [0,1]^3 with n nodes per axis.
  static StructuredGrid unit_cube(int n) { return StructuredGrid({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {n, n, n}); }

  const Vec3& origin() const { return origin_; }
  const Vec3& extent() const { return extent_; }
  const std::array<int, 3>& nodes() const { return n_; }
  const Vec3& spacing() const { return h_; }
  double min_spacing() const;
  /// Volume of one element.
  double cell_volume() const { return h_[0] * h_[1] * h_[2]; }

  std::size_t node_count() const { return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2]; }
  std::size_t element_count() const { return static_cast<std::size_t>(n_[0] - 1) * (n_[1] - 1) * (n_[2] - 1); }
  std::size_t index(int i, int j, int k) const { return static_cast<std::size_t>(i) + n_[0] * (j + static_cast<std::size_t>(n_[1]) * k); }
  std::array<int, 3> ijk(std::size_t index) const;
  Vec3 position(std::size_t index) const;
  bool on_boundary(std::size_t index) const;

 private:
  Vec3 origin_;
  Vec3 extent_;
  std::array<int, 3> n_;
  Vec3 h_;
};

/// Body force f(xi, t) with its analytic time derivative and spatial gradient
/// (grad_ij = d f_i / d xi_j).
struct BodyForce
{
  std::function<Vec3(const Vec3&, double)> f;
  std::function<Vec3(const Vec3&, double)> df_dt;
  std::function<Tensor3(const Vec3&, double)> grad;

  static BodyForce zero();
};

/// Nodal stress and velocity on a grid.
struct GridFields
{
  StructuredGrid grid;
  std::vector<SymTensor3> sigma;
  std::vector<Vec3> v;
  double t = 0.0;

  explicit GridFields(const StructuredGrid& g)
      : grid(g), sigma(g.node_count()), v(g.node_count(), Vec3{0.0, 0.0, 0.0})
  {
  }
};

/// Tangent used by the velocity subproblem and the stress update.
enum class StiffnessMode
{
  /// H^ZJ(sigma) induced by the principal law.
  Induced,
  /// Constant C^iso (hypoelasticity of grade zero).
  ZeroGrade,
};

struct SolverConfig
{
  double cg_tolerance = 1e-10;
  /// 0 selects 10x the number of unknowns.
  std::size_t cg_max_iterations = 0;
  double dt = 1e-3;
  double t_end = 0.1;
  double cfl = 0.5;
  int picard_sweeps = 2;
  StiffnessMode mode = StiffnessMode::Induced;
  int threads = 1;

  /// Throws InvalidArgument unless every quantity is positive and cfl <= 1.
  void validate() const;
};

/// sigma_0(xi) = stress(mooney_log, D phi0 D phi0^T) at every node, with D phi0 from
/// central differences of step 1e-6 max(1, extent). v_0 defaults to zero.
/// Throws SingularF when det D phi0 is not positive at some node.
GridFields initial_compatibility(const StructuredGrid& grid, const PointMap& phi0, const MaterialParams& params,
    const std::function<Vec3(const Vec3&)>& v0 = {});

/// Interleaved nodal vector (x, y, z per node).
using NodalVector = std::vector<double>;

/// Matrix-free u -> -Div[H(sigma) sym Du] on trilinear hexahedra with 2x2x2 Gauss
/// quadrature; rows and columns of boundary nodes are eliminated (v = 0 there).
class ElasticityOperator
{
 public:
  /// Interpolates sigma to every quadrature point and builds H there. Throws
  /// NewtonDivergence naming the element when the inverse law fails.
  static ElasticityOperator assemble(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
      const MaterialParams& params, StiffnessMode mode = StiffnessMode::Induced, int threads = 1);

  const StructuredGrid& grid() const { return grid_; }

  /// A u; boundary entries of the result are zero and boundary entries of u are ignored.
  NodalVector apply(const NodalVector& u) const;
  /// Diagonal of A on interior unknowns (one on boundary unknowns).
  const NodalVector& diagonal() const { return diagonal_; }
  /// sum_q w_q ||sym grad u||^2, the discrete energy seminorm squared.
  double sym_gradient_norm2(const NodalVector& u) const;
  std::size_t unknowns() const;

 private:
  ElasticityOperator(const StructuredGrid& grid, int threads) : grid_(grid), threads_(threads) {}

  StructuredGrid grid_;
  int threads_;
  /// Quadrature-point tangents, 8 per element.
  std::vector<FourthOrderMandel> tangents_;
  NodalVector diagonal_;
};

/// The solve uses A v = kRhsSign r: the assembled r is the right-hand side of
/// Div[H.D] = r, and A carries the minus sign of -Div.
inline constexpr double kRhsSign = -1.0;

/// Weak form (against trilinear test functions) of
/// r = Div[sigma Dv^T - (div v) sigma + sigma W - W sigma] + (div v) f + (D f) v + df/dt,
/// with the divergence integrated by parts. Entries on boundary nodes are zero.
NodalVector assemble_rhs(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma, const std::vector<Vec3>& v,
    const BodyForce& force, double t, int threads = 1);

struct CgResult
{
  std::vector<Vec3> v;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned CG for A v = kRhsSign r. Throws CgNonConvergence with the
/// final residual when the budget runs out.
CgResult solve_subproblem(const ElasticityOperator& op, const NodalVector& r, const SolverConfig& config);

/// Nodal tangents for the stress update and the report's eigenvalue column.
struct NodalTangents
{
  std::vector<FourthOrderMandel> h;
  double min_eig = 0.0;
};

NodalTangents nodal_tangents(const std::vector<SymTensor3>& sigma, const MaterialParams& params, StiffnessMode mode,
    int threads = 1);

/// Explicit Euler step of d sigma/dt = -(D sigma).v - sigma W + W sigma + H.sym Dv with
/// component-wise first-order upwind advection. Dv uses central differences inside and
/// second-order one-sided differences on boundary nodes. Throws CflViolation when
/// dt > cfl h_min / max ||v||.
std::vector<SymTensor3> step_stress(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
    const std::vector<Vec3>& v, double dt, const NodalTangents& tangents, double cfl);

/// Convenience overload computing the tangents.
std::vector<SymTensor3> step_stress(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
    const std::vector<Vec3>& v, double dt, const MaterialParams& params, double cfl = 0.5,
    StiffnessMode mode = StiffnessMode::Induced, int threads = 1);

/// Largest interior-node entry of the weak residual of Div sigma - f, divided by the
/// element volume.
double equilibrium_residual(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma, const BodyForce& force,
    double t, int threads = 1);

struct StepRow
{
  double t = 0.0;
  double max_v = 0.0;
  std::size_t cg_iterations = 0;
  double min_h_eig = 0.0;
  double equilibrium_residual = 0.0;
};

struct EvolveResult
{
  /// Row 0 describes the initial state.
  std::vector<StepRow> rows;
  GridFields final_fields;
  bool completed = true;
  std::string error;
};

/// Runs the staggered scheme: per step, Picard sweeps assemble r with the lagged
/// velocity and solve for v^{n+1}, then sigma advances by step_stress. Errors stop
/// the run and are returned with the partial series. `on_step` sees every new state.
EvolveResult evolve(const GridFields& initial, const BodyForce& force, const SolverConfig& config,
    const MaterialParams& params, const std::function<void(std::size_t, const GridFields&)>& on_step = {});

/// CSV: t,max_v,cg_iterations,min_h_eig,equilibrium_residual.
void write_summary_csv(std::ostream& out, const std::vector<StepRow>& rows);

/// |<Au, w> - <Aw, u>| / max(||Au|| ||w||, ||Aw|| ||u||) for seeded random interior fields.
double operator_symmetry_probe(const ElasticityOperator& op, std::uint64_t seed);

struct ManufacturedResult
{
  double l2_error = 0.0;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// sigma = 0 on the unit cube with n nodes per axis and the smooth field
/// v* = sin(pi x) sin(pi y) sin(pi z) (1, -1/2, 3/4); the load is the weak form of the
/// continuous -Div[C^iso sym Dv*]. Returns the L2 error of the discrete solution.
ManufacturedResult manufactured_solution(int n, const MaterialParams& params, const SolverConfig& config);

}  // namespace cauchy
