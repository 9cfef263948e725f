#include "cauchy/solver.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/error.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/sampling.hpp"
#include "cauchy/stiffness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cauchy
{

// --- grid --------------------------------------------------------------------

StructuredGrid::StructuredGrid(const Vec3& origin, const Vec3& extent, const std::array<int, 3>& nodes)
    : origin_(origin), extent_(extent), n_(nodes)
{
  for (int d = 0; d < 3; ++d)
  {
    if (n_[d] < 3) throw Error(ErrorCode::InvalidArgument, "every axis needs at least 3 nodes");
    if (!(extent_[d] > 0.0) || !std::isfinite(extent_[d]))
      throw Error(ErrorCode::InvalidArgument, "grid extents must be positive");
    h_[d] = extent_[d] / (n_[d] - 1);
  }
}

double StructuredGrid::min_spacing() const { return std::min({h_[0], h_[1], h_[2]}); }

std::array<int, 3> StructuredGrid::ijk(std::size_t index) const
{
  const int i = static_cast<int>(index % n_[0]);
  index /= n_[0];
  const int j = static_cast<int>(index % n_[1]);
  return {i, j, static_cast<int>(index / n_[1])};
}

Vec3 StructuredGrid::position(std::size_t index) const
{
  const auto c = ijk(index);
  return {origin_[0] + c[0] * h_[0], origin_[1] + c[1] * h_[1], origin_[2] + c[2] * h_[2]};
}

bool StructuredGrid::on_boundary(std::size_t index) const
{
  const auto c = ijk(index);
  for (int d = 0; d < 3; ++d)
    if (c[d] == 0 || c[d] == n_[d] - 1) return true;
  return false;
}

BodyForce BodyForce::zero()
{
  const Vec3 zero{0.0, 0.0, 0.0};
  return {[zero](const Vec3&, double) { return zero; }, [zero](const Vec3&, double) { return zero; },
          [](const Vec3&, double) { return Tensor3::zero(); }};
}

void SolverConfig::validate() const
{
  if (!(cg_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "cg tolerance must be positive");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be positive");
  if (!(cfl > 0.0) || cfl > 1.0) throw Error(ErrorCode::InvalidArgument, "cfl factor must lie in (0, 1]");
  if (picard_sweeps < 1) throw Error(ErrorCode::InvalidArgument, "picard sweeps must be at least 1");
}

// --- element machinery -------------------------------------------------------

namespace
{
constexpr int kElementNodes = 8;

/// Tensor-product Gauss rule on one element with trilinear shape values and gradients.
struct ElementRule
{
  std::vector<std::array<double, kElementNodes>> n;
  std::vector<std::array<Vec3, kElementNodes>> dn;
  std::vector<Vec3> local;
  std::vector<double> w;

  std::size_t size() const { return w.size(); }
};

ElementRule element_rule(const Vec3& h, int points)
{
  std::vector<double> x, wx;
  if (points == 2)
  {
    x = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    wx = {0.5, 0.5};
  }
  else
  {
    const double a = 0.5 * std::sqrt(0.6);
    x = {0.5 - a, 0.5, 0.5 + a};
    wx = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  }
  ElementRule rule;
  const double volume = h[0] * h[1] * h[2];
  for (int qz = 0; qz < points; ++qz)
    for (int qy = 0; qy < points; ++qy)
      for (int qx = 0; qx < points; ++qx)
      {
        const Vec3 p{x[qx], x[qy], x[qz]};
        std::array<double, kElementNodes> n{};
        std::array<Vec3, kElementNodes> dn{};
        for (int a = 0; a < kElementNodes; ++a)
        {
          const int ax = a & 1, ay = (a >> 1) & 1, az = (a >> 2) & 1;
          const double fx = ax ? p[0] : 1.0 - p[0];
          const double fy = ay ? p[1] : 1.0 - p[1];
          const double fz = az ? p[2] : 1.0 - p[2];
          const double sx = ax ? 1.0 : -1.0, sy = ay ? 1.0 : -1.0, sz = az ? 1.0 : -1.0;
          n[a] = fx * fy * fz;
          dn[a] = {sx * fy * fz / h[0], fx * sy * fz / h[1], fx * fy * sz / h[2]};
        }
        rule.n.push_back(n);
        rule.dn.push_back(dn);
        rule.local.push_back(p);
        rule.w.push_back(volume * wx[qx] * wx[qy] * wx[qz]);
      }
  return rule;
}

std::array<int, 3> element_ijk(const StructuredGrid& g, std::size_t e)
{
  const int ex = g.nodes()[0] - 1, ey = g.nodes()[1] - 1;
  const int i = static_cast<int>(e % ex);
  e /= ex;
  return {i, static_cast<int>(e % ey), static_cast<int>(e / ey)};
}

std::array<std::size_t, kElementNodes> element_nodes(const StructuredGrid& g, std::size_t e)
{
  const auto c = element_ijk(g, e);
  std::array<std::size_t, kElementNodes> out{};
  for (int a = 0; a < kElementNodes; ++a) out[a] = g.index(c[0] + (a & 1), c[1] + ((a >> 1) & 1), c[2] + ((a >> 2) & 1));
  return out;
}

Vec3 quadrature_position(const StructuredGrid& g, std::size_t e, const Vec3& local)
{
  const auto c = element_ijk(g, e);
  const Vec3& h = g.spacing();
  return {g.origin()[0] + (c[0] + local[0]) * h[0], g.origin()[1] + (c[1] + local[1]) * h[1],
          g.origin()[2] + (c[2] + local[2]) * h[2]};
}

/// Sums per-element nodal contributions (24 per element) into a nodal vector. Each node
/// reads its neighbouring elements in a fixed order, so the sum is independent of the
/// worker count. Boundary entries stay zero.
NodalVector gather(const StructuredGrid& g, const std::vector<double>& element_values, int threads)
{
  NodalVector out(3 * g.node_count(), 0.0);
  const auto& n = g.nodes();
  parallel_for(g.node_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t node = begin; node < end; ++node)
    {
      if (g.on_boundary(node)) continue;
      const auto c = g.ijk(node);
      for (int dz = 1; dz >= 0; --dz)
        for (int dy = 1; dy >= 0; --dy)
          for (int dx = 1; dx >= 0; --dx)
          {
            const int ei = c[0] - dx, ej = c[1] - dy, ek = c[2] - dz;
            const std::size_t e = static_cast<std::size_t>(ei) + (n[0] - 1) * (ej + static_cast<std::size_t>(n[1] - 1) * ek);
            const int a = dx + 2 * dy + 4 * dz;
            for (int i = 0; i < 3; ++i) out[3 * node + i] += element_values[24 * e + 3 * a + i];
          }
    }
  });
  return out;
}

Mandel6 mandel_of_gradient(const double grad[3][3])
{
  const double r = std::sqrt(0.5);
  Mandel6 m;
  m << grad[0][0], grad[1][1], grad[2][2], r * (grad[0][1] + grad[1][0]), r * (grad[1][2] + grad[2][1]),
      r * (grad[2][0] + grad[0][2]);
  return m;
}

double dot(const NodalVector& a, const NodalVector& b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

FourthOrderMandel tangent_at(const SymTensor3& sigma, const MaterialParams& params, StiffnessMode mode)
{
  if (mode == StiffnessMode::ZeroGrade) return isotropic_stiffness(params.mu, params.lambda);
  return h_zj_of_sigma(sigma, params).matrix;
}
}  // namespace

// --- initial state -----------------------------------------------------------

GridFields initial_compatibility(const StructuredGrid& grid, const PointMap& phi0, const MaterialParams& params,
    const std::function<Vec3(const Vec3&)>& v0)
{
  params.validate();
  const auto law = IsotropicLaw::mooney_log(params);
  const double h = 1e-6 * std::max({1.0, grid.extent()[0], grid.extent()[1], grid.extent()[2]});
  GridFields fields(grid);
  for (std::size_t node = 0; node < grid.node_count(); ++node)
  {
    const Vec3 xi = grid.position(node);
    const Tensor3 f = fd_gradient(phi0, xi, h);
    try
    {
      fields.sigma[node] = law.stress(finger(f));
    }
    catch (const Error& e)
    {
      if (e.code() != ErrorCode::SingularF) throw;
      std::ostringstream msg;
      msg << "det D phi0 = " << f.det() << " at node " << node << " (" << xi[0] << ", " << xi[1] << ", " << xi[2]
          << ")";
      throw Error(ErrorCode::SingularF, msg.str());
    }
    if (v0 && !grid.on_boundary(node)) fields.v[node] = v0(xi);
  }
  return fields;
}

// --- operator ----------------------------------------------------------------

ElasticityOperator ElasticityOperator::assemble(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
    const MaterialParams& params, StiffnessMode mode, int threads)
{
  params.validate();
  if (sigma.size() != grid.node_count()) throw Error(ErrorCode::InvalidArgument, "sigma field size mismatch");
  ElasticityOperator op(grid, threads);
  const ElementRule rule = element_rule(grid.spacing(), 2);
  const std::size_t ne = grid.element_count();
  op.tangents_.resize(ne * rule.size());

  std::vector<std::string> failures(ne);
  parallel_for(ne, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
    {
      const auto nodes = element_nodes(grid, e);
      for (std::size_t q = 0; q < rule.size(); ++q)
      {
        SymTensor3 s;
        for (int a = 0; a < kElementNodes; ++a) s += rule.n[q][a] * sigma[nodes[a]];
        try
        {
          op.tangents_[e * rule.size() + q] = tangent_at(s, params, mode);
        }
        catch (const Error& err)
        {
          const Vec3 x = quadrature_position(grid, e, rule.local[q]);
          std::ostringstream msg;
          msg << "element " << e << " quadrature point (" << x[0] << ", " << x[1] << ", " << x[2]
              << "): " << err.what();
          failures[e] = msg.str();
          break;
        }
      }
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error(ErrorCode::NewtonDivergence, f);

  // Jacobi diagonal: e_q^T H e_q for every unit nodal displacement.
  std::vector<double> element_diag(24 * ne, 0.0);
  parallel_for(ne, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
      for (std::size_t q = 0; q < rule.size(); ++q)
      {
        const FourthOrderMandel& h = op.tangents_[e * rule.size() + q];
        for (int a = 0; a < kElementNodes; ++a)
          for (int i = 0; i < 3; ++i)
          {
            double grad[3][3] = {};
            for (int j = 0; j < 3; ++j) grad[i][j] = rule.dn[q][a][j];
            const Mandel6 m = mandel_of_gradient(grad);
            element_diag[24 * e + 3 * a + i] += rule.w[q] * m.dot(h * m);
          }
      }
  });
  op.diagonal_ = gather(grid, element_diag, threads);
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    if (grid.on_boundary(node))
      for (int i = 0; i < 3; ++i) op.diagonal_[3 * node + i] = 1.0;
  return op;
}

std::size_t ElasticityOperator::unknowns() const
{
  const auto& n = grid_.nodes();
  return 3 * static_cast<std::size_t>(n[0] - 2) * (n[1] - 2) * (n[2] - 2);
}

NodalVector ElasticityOperator::apply(const NodalVector& u) const
{
  if (u.size() != 3 * grid_.node_count()) throw Error(ErrorCode::InvalidArgument, "nodal vector size mismatch");
  const ElementRule rule = element_rule(grid_.spacing(), 2);
  const std::size_t ne = grid_.element_count();
  std::vector<double> element_out(24 * ne, 0.0);
  parallel_for(ne, threads_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
    {
      const auto nodes = element_nodes(grid_, e);
      double ue[kElementNodes][3];
      for (int a = 0; a < kElementNodes; ++a)
        for (int i = 0; i < 3; ++i) ue[a][i] = grid_.on_boundary(nodes[a]) ? 0.0 : u[3 * nodes[a] + i];
      for (std::size_t q = 0; q < rule.size(); ++q)
      {
        double grad[3][3] = {};
        for (int a = 0; a < kElementNodes; ++a)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) grad[i][j] += ue[a][i] * rule.dn[q][a][j];
        const Tensor3 s = from_mandel(tangents_[e * rule.size() + q] * mandel_of_gradient(grad)).full();
        for (int a = 0; a < kElementNodes; ++a)
          for (int i = 0; i < 3; ++i)
          {
            double acc = 0.0;
            for (int j = 0; j < 3; ++j) acc += s(i, j) * rule.dn[q][a][j];
            element_out[24 * e + 3 * a + i] += rule.w[q] * acc;
          }
      }
    }
  });
  return gather(grid_, element_out, threads_);
}

double ElasticityOperator::sym_gradient_norm2(const NodalVector& u) const
{
  const ElementRule rule = element_rule(grid_.spacing(), 2);
  double total = 0.0;
  for (std::size_t e = 0; e < grid_.element_count(); ++e)
  {
    const auto nodes = element_nodes(grid_, e);
    for (std::size_t q = 0; q < rule.size(); ++q)
    {
      double grad[3][3] = {};
      for (int a = 0; a < kElementNodes; ++a)
      {
        if (grid_.on_boundary(nodes[a])) continue;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) grad[i][j] += u[3 * nodes[a] + i] * rule.dn[q][a][j];
      }
      total += rule.w[q] * mandel_of_gradient(grad).squaredNorm();
    }
  }
  return total;
}

// --- right-hand side ---------------------------------------------------------

NodalVector assemble_rhs(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma, const std::vector<Vec3>& v,
    const BodyForce& force, double t, int threads)
{
  if (sigma.size() != grid.node_count() || v.size() != grid.node_count())
    throw Error(ErrorCode::InvalidArgument, "field size mismatch");
  const ElementRule rule = element_rule(grid.spacing(), 2);
  const std::size_t ne = grid.element_count();
  std::vector<double> element_out(24 * ne, 0.0);
  parallel_for(ne, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
    {
      const auto nodes = element_nodes(grid, e);
      for (std::size_t q = 0; q < rule.size(); ++q)
      {
        SymTensor3 s;
        Vec3 vq{0.0, 0.0, 0.0};
        Tensor3 l;
        for (int a = 0; a < kElementNodes; ++a)
        {
          s += rule.n[q][a] * sigma[nodes[a]];
          vq = vq + rule.n[q][a] * v[nodes[a]];
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) l(i, j) += v[nodes[a]][i] * rule.dn[q][a][j];
        }
        const SymSkew split = sym_skew_split(l);
        const double div = l.trace();
        const Tensor3 sf = s.full();
        const Tensor3 g = sf * l.transpose() - div * sf + sf * split.skew - split.skew * sf;

        Vec3 src{0.0, 0.0, 0.0};
        const Vec3 x = quadrature_position(grid, e, rule.local[q]);
        if (force.f) src = src + div * force.f(x, t);
        if (force.grad) src = src + force.grad(x, t) * vq;
        if (force.df_dt) src = src + force.df_dt(x, t);

        for (int a = 0; a < kElementNodes; ++a)
          for (int i = 0; i < 3; ++i)
          {
            double flux = 0.0;
            for (int j = 0; j < 3; ++j) flux += g(i, j) * rule.dn[q][a][j];
            element_out[24 * e + 3 * a + i] += rule.w[q] * (src[i] * rule.n[q][a] - flux);
          }
      }
    }
  });
  return gather(grid, element_out, threads);
}

// --- linear solve ------------------------------------------------------------

CgResult solve_subproblem(const ElasticityOperator& op, const NodalVector& r, const SolverConfig& config)
{
  const StructuredGrid& grid = op.grid();
  if (r.size() != 3 * grid.node_count()) throw Error(ErrorCode::InvalidArgument, "load vector size mismatch");
  const std::size_t n = r.size();
  NodalVector b(n, 0.0);
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    if (!grid.on_boundary(node))
      for (int i = 0; i < 3; ++i) b[3 * node + i] = kRhsSign * r[3 * node + i];

  CgResult out;
  out.v.assign(grid.node_count(), Vec3{0.0, 0.0, 0.0});
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) return out;

  const std::size_t budget = config.cg_max_iterations ? config.cg_max_iterations : 10 * op.unknowns();
  const NodalVector& diag = op.diagonal();
  NodalVector x(n, 0.0), res = b, z(n), p(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = res[i] / diag[i];
  p = z;
  double rz = dot(res, z);
  double rel = 1.0;
  std::size_t k = 0;
  while (k < budget)
  {
    const NodalVector ap = op.apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0))
    {
      std::ostringstream msg;
      msg << "non-positive curvature " << pap << " at iteration " << k;
      throw Error(ErrorCode::CgNonConvergence, msg.str());
    }
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i)
    {
      x[i] += alpha * p[i];
      res[i] -= alpha * ap[i];
    }
    ++k;
    rel = std::sqrt(dot(res, res)) / b_norm;
    if (rel <= config.cg_tolerance) break;
    for (std::size_t i = 0; i < n; ++i) z[i] = res[i] / diag[i];
    const double rz_new = dot(res, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (rel > config.cg_tolerance)
  {
    std::ostringstream msg;
    msg << "relative residual " << rel << " after " << k << " iterations";
    throw Error(ErrorCode::CgNonConvergence, msg.str());
  }
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    if (!grid.on_boundary(node)) out.v[node] = {x[3 * node], x[3 * node + 1], x[3 * node + 2]};
  out.iterations = k;
  out.relative_residual = rel;
  return out;
}

// --- stress update -----------------------------------------------------------

NodalTangents nodal_tangents(const std::vector<SymTensor3>& sigma, const MaterialParams& params, StiffnessMode mode,
    int threads)
{
  params.validate();
  NodalTangents out;
  out.h.resize(sigma.size());
  std::vector<double> eig(sigma.size());
  parallel_for(sigma.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
    {
      out.h[i] = tangent_at(sigma[i], params, mode);
      eig[i] = min_eig_66(out.h[i]).value;
    }
  });
  out.min_eig = sigma.empty() ? 0.0 : *std::min_element(eig.begin(), eig.end());
  return out;
}

namespace
{
/// d g / d xi_axis at a node: central inside, second-order one-sided on the faces.
template <typename Get>
auto nodal_derivative(const StructuredGrid& g, const std::array<int, 3>& c, int axis, Get get)
{
  const double h = g.spacing()[axis];
  auto at = [&](int offset) {
    auto p = c;
    p[axis] += offset;
    return get(g.index(p[0], p[1], p[2]));
  };
  const int last = g.nodes()[axis] - 1;
  if (c[axis] == 0) return (1.0 / (2.0 * h)) * (-3.0 * at(0) + 4.0 * at(1) - at(2));
  if (c[axis] == last) return (1.0 / (2.0 * h)) * (3.0 * at(0) - 4.0 * at(-1) + at(-2));
  return (1.0 / (2.0 * h)) * (at(1) - at(-1));
}
}  // namespace

std::vector<SymTensor3> step_stress(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
    const std::vector<Vec3>& v, double dt, const NodalTangents& tangents, double cfl)
{
  if (sigma.size() != grid.node_count() || v.size() != grid.node_count() || tangents.h.size() != grid.node_count())
    throw Error(ErrorCode::InvalidArgument, "field size mismatch");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  double v_max = 0.0;
  for (const Vec3& x : v) v_max = std::max(v_max, norm(x));
  if (v_max > 0.0 && dt > cfl * grid.min_spacing() / v_max)
  {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds " << cfl << " h / max|v| = " << cfl * grid.min_spacing() / v_max;
    throw Error(ErrorCode::CflViolation, msg.str());
  }

  std::vector<SymTensor3> out(sigma.size());
  for (std::size_t node = 0; node < grid.node_count(); ++node)
  {
    const auto c = grid.ijk(node);
    Tensor3 l;
    for (int j = 0; j < 3; ++j)
    {
      const Vec3 dv = nodal_derivative(grid, c, j, [&](std::size_t k) { return v[k]; });
      for (int i = 0; i < 3; ++i) l(i, j) = dv[i];
    }
    const SymSkew split = sym_skew_split(l);

    // First-order upwind (D sigma).v; a face node falls back to its only neighbour.
    SymTensor3 advection;
    for (int d = 0; d < 3; ++d)
    {
      const double vd = v[node][d];
      if (vd == 0.0) continue;
      const int last = grid.nodes()[d] - 1;
      const bool backward = vd > 0.0 ? c[d] > 0 : c[d] == last;
      auto neighbour = c;
      neighbour[d] += backward ? -1 : 1;
      const SymTensor3& s_n = sigma[grid.index(neighbour[0], neighbour[1], neighbour[2])];
      const SymTensor3 diff = backward ? sigma[node] - s_n : s_n - sigma[node];
      advection += (vd / grid.spacing()[d]) * diff;
    }

    const Tensor3 s = sigma[node].full();
    const SymTensor3 spin = SymTensor3::sym_of(split.skew * s - s * split.skew);
    const SymTensor3 stiff = apply4(tangents.h[node], split.sym);
    out[node] = sigma[node] + dt * (spin + stiff - advection);
  }
  return out;
}

std::vector<SymTensor3> step_stress(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma,
    const std::vector<Vec3>& v, double dt, const MaterialParams& params, double cfl, StiffnessMode mode, int threads)
{
  return step_stress(grid, sigma, v, dt, nodal_tangents(sigma, params, mode, threads), cfl);
}

double equilibrium_residual(const StructuredGrid& grid, const std::vector<SymTensor3>& sigma, const BodyForce& force,
    double t, int threads)
{
  const ElementRule rule = element_rule(grid.spacing(), 2);
  const std::size_t ne = grid.element_count();
  std::vector<double> element_out(24 * ne, 0.0);
  parallel_for(ne, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e)
    {
      const auto nodes = element_nodes(grid, e);
      for (std::size_t q = 0; q < rule.size(); ++q)
      {
        SymTensor3 s;
        for (int a = 0; a < kElementNodes; ++a) s += rule.n[q][a] * sigma[nodes[a]];
        const Vec3 f = force.f ? force.f(quadrature_position(grid, e, rule.local[q]), t) : Vec3{0.0, 0.0, 0.0};
        for (int a = 0; a < kElementNodes; ++a)
          for (int i = 0; i < 3; ++i)
          {
            double flux = 0.0;
            for (int j = 0; j < 3; ++j) flux += s(i, j) * rule.dn[q][a][j];
            element_out[24 * e + 3 * a + i] -= rule.w[q] * (flux + f[i] * rule.n[q][a]);
          }
      }
    }
  });
  const NodalVector r = gather(grid, element_out, threads);
  double worst = 0.0;
  for (double x : r) worst = std::max(worst, std::abs(x));
  return worst / grid.cell_volume();
}

// --- time loop ---------------------------------------------------------------

EvolveResult evolve(const GridFields& initial, const BodyForce& force, const SolverConfig& config,
    const MaterialParams& params, const std::function<void(std::size_t, const GridFields&)>& on_step)
{
  config.validate();
  params.validate();
  const StructuredGrid& grid = initial.grid;
  const int threads = config.threads;
  EvolveResult result{{}, initial, true, {}};
  GridFields& fields = result.final_fields;

  auto max_speed = [](const std::vector<Vec3>& v) {
    double m = 0.0;
    for (const Vec3& x : v) m = std::max(m, norm(x));
    return m;
  };

  try
  {
    NodalTangents tangents = nodal_tangents(fields.sigma, params, config.mode, threads);
    result.rows.push_back(
        {fields.t, max_speed(fields.v), 0, tangents.min_eig, equilibrium_residual(grid, fields.sigma, force, fields.t, threads)});
    if (on_step) on_step(0, fields);

    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(config.t_end / config.dt - 1e-9)));
    for (std::size_t n = 0; n < steps; ++n)
    {
      std::vector<Vec3> v = fields.v;
      std::size_t iterations = 0;
      std::optional<ElasticityOperator> op;
      for (int sweep = 0; sweep < config.picard_sweeps; ++sweep)
      {
        const NodalVector r = assemble_rhs(grid, fields.sigma, v, force, fields.t, threads);
        if (std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; }))
        {
          // A is SPD, so a zero load has the unique solution v = 0.
          std::fill(v.begin(), v.end(), Vec3{0.0, 0.0, 0.0});
          continue;
        }
        if (!op) op = ElasticityOperator::assemble(grid, fields.sigma, params, config.mode, threads);
        CgResult cg = solve_subproblem(*op, r, config);
        iterations += cg.iterations;
        v = std::move(cg.v);
      }
      fields.sigma = step_stress(grid, fields.sigma, v, config.dt, tangents, config.cfl);
      fields.v = std::move(v);
      fields.t += config.dt;
      tangents = nodal_tangents(fields.sigma, params, config.mode, threads);
      result.rows.push_back({fields.t, max_speed(fields.v), iterations, tangents.min_eig,
                             equilibrium_residual(grid, fields.sigma, force, fields.t, threads)});
      if (on_step) on_step(n + 1, fields);
    }
  }
  catch (const Error& e)
  {
    result.completed = false;
    result.error = e.what();
  }
  return result;
}

void write_summary_csv(std::ostream& out, const std::vector<StepRow>& rows)
{
  CsvWriter csv(out, {"t", "max_v", "cg_iterations", "min_h_eig", "equilibrium_residual"});
  for (const auto& r : rows)
  {
    csv.cell(r.t).cell(r.max_v).cell(r.cg_iterations).cell(r.min_h_eig).cell(r.equilibrium_residual);
    csv.end_row();
  }
}

// --- verification helpers ----------------------------------------------------

double operator_symmetry_probe(const ElasticityOperator& op, std::uint64_t seed)
{
  const StructuredGrid& grid = op.grid();
  auto random_field = [&](std::uint64_t stream) {
    auto rng = sample_rng(seed, stream);
    NodalVector u(3 * grid.node_count(), 0.0);
    for (std::size_t node = 0; node < grid.node_count(); ++node)
      for (int i = 0; i < 3; ++i)
      {
        const double x = uniform(rng, -1.0, 1.0);
        if (!grid.on_boundary(node)) u[3 * node + i] = x;
      }
    return u;
  };
  const NodalVector u = random_field(0), w = random_field(1);
  const NodalVector au = op.apply(u), aw = op.apply(w);
  auto nrm = [](const NodalVector& x) { return std::sqrt(dot(x, x)); };
  const double scale = std::max(nrm(au) * nrm(w), nrm(aw) * nrm(u));
  return std::abs(dot(au, w) - dot(aw, u)) / scale;
}

ManufacturedResult manufactured_solution(int n, const MaterialParams& params, const SolverConfig& config)
{
  params.validate();
  const StructuredGrid grid = StructuredGrid::unit_cube(n);
  const double pi = std::numbers::pi;
  const Vec3 amp{1.0, -0.5, 0.75};
  auto exact = [&](const Vec3& x) {
    const double s = std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]);
    return s * amp;
  };
  // f* = -Div[C^iso sym Dv*] = -mu lap v* - (mu + lambda) grad div v*.
  auto load = [&](const Vec3& x) {
    const double sx = std::sin(pi * x[0]), sy = std::sin(pi * x[1]), sz = std::sin(pi * x[2]);
    const double cx = std::cos(pi * x[0]), cy = std::cos(pi * x[1]), cz = std::cos(pi * x[2]);
    const double s = sx * sy * sz, p2 = pi * pi;
    const double hess[3][3] = {{-p2 * s, p2 * cx * cy * sz, p2 * cx * sy * cz},
                               {p2 * cx * cy * sz, -p2 * s, p2 * sx * cy * cz},
                               {p2 * cx * sy * cz, p2 * sx * cy * cz, -p2 * s}};
    Vec3 f;
    for (int i = 0; i < 3; ++i)
    {
      double grad_div = 0.0;
      for (int j = 0; j < 3; ++j) grad_div += amp[j] * hess[i][j];
      f[i] = 3.0 * params.mu * p2 * amp[i] * s - (params.mu + params.lambda) * grad_div;
    }
    return f;
  };

  const ElementRule fine = element_rule(grid.spacing(), 3);
  const std::size_t ne = grid.element_count();
  std::vector<double> element_load(24 * ne, 0.0);
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t q = 0; q < fine.size(); ++q)
    {
      const Vec3 f = load(quadrature_position(grid, e, fine.local[q]));
      for (int a = 0; a < kElementNodes; ++a)
        for (int i = 0; i < 3; ++i) element_load[24 * e + 3 * a + i] += fine.w[q] * f[i] * fine.n[q][a];
    }
  NodalVector r = gather(grid, element_load, config.threads);
  // The load solves A v = f*, i.e. r = -f* in the Div[H.D] = r convention.
  for (double& x : r) x *= kRhsSign;

  const std::vector<SymTensor3> sigma(grid.node_count());
  const ElasticityOperator op = ElasticityOperator::assemble(grid, sigma, params, config.mode, config.threads);
  const CgResult cg = solve_subproblem(op, r, config);

  double err2 = 0.0;
  for (std::size_t e = 0; e < ne; ++e)
  {
    const auto nodes = element_nodes(grid, e);
    for (std::size_t q = 0; q < fine.size(); ++q)
    {
      Vec3 vh{0.0, 0.0, 0.0};
      for (int a = 0; a < kElementNodes; ++a) vh = vh + fine.n[q][a] * cg.v[nodes[a]];
      const Vec3 d = vh - exact(quadrature_position(grid, e, fine.local[q]));
      err2 += fine.w[q] * dot(d, d);
    }
  }
  return {std::sqrt(err2), cg.iterations, cg.relative_residual};
}

}  // namespace cauchy
