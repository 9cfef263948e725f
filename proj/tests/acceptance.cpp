// Acceptance battery: one line per criterion, exit status 0 only when all pass.

#include "cauchy/cli.hpp"
#include "cauchy/constitutive.hpp"
#include "cauchy/diagnostics.hpp"
#include "cauchy/error.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/rates.hpp"
#include "cauchy/sampling.hpp"
#include "cauchy/scenario.hpp"
#include "cauchy/solver.hpp"
#include "cauchy/stiffness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cauchy;
namespace fs = std::filesystem;

namespace
{
struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

/// Random admissible (mu, lambda): mu in [0.1, 10], lambda in (-2mu/3, 10].
MaterialParams random_params(std::uint64_t seed, std::uint64_t i)
{
  auto rng = sample_rng(seed, i);
  const double mu = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
  const double lambda = uniform(rng, -0.6 * mu, 10.0);
  return {mu, lambda};
}

Outcome linearization()
{
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i)
  {
    const MaterialParams p = random_params(1001, i);
    const FourthOrderMandel h = h_zj_mooney(SpdTensor3::identity(), p).matrix;
    worst = std::max(worst, (h - isotropic_stiffness(p.mu, p.lambda)).norm());
  }
  return {worst <= 1e-13, "max ||H(1) - C_iso|| = " + fmt("%.3e", worst)};
}

Outcome symmetry_definiteness()
{
  const std::vector<MaterialParams> sets{{1.0, 3.0}, {1.0, 1.0}, {2.0, -1.0}, {0.5, 10.0}};
  double worst_defect = 0.0, worst_margin = INFINITY;
  for (std::size_t s = 0; s < sets.size(); ++s)
  {
    const MaterialParams& p = sets[s];
    const double floor = coercivity_floor(p);
    for (std::uint64_t i = 0; i < 10000; ++i)
    {
      auto rng = sample_rng(2002 + s, i);
      const SymmetryReport r = symmetry_report(h_zj_mooney(random_spd(rng, 2.0), p));
      worst_defect = std::max(worst_defect, r.major_defect);
      worst_margin = std::min(worst_margin, r.min_eig - floor);
    }
  }
  return {worst_defect <= 1e-11 && worst_margin >= -1e-9,
          "4 x 10^4 B: max major_defect = " + fmt("%.3e", worst_defect) +
              ", min(min_eig - floor) = " + fmt("%.3e", worst_margin)};
}

Outcome fd_tangent_order()
{
  const MaterialParams p{1.0, 3.0};
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  double lo = INFINITY, hi = -INFINITY;
  for (std::uint64_t i = 0; i < 10; ++i)
  {
    auto rng = sample_rng(3003, i);
    const SpdTensor3 b = random_spd(rng, 1.0);
    const FourthOrderMandel exact = h_zj_mooney(b, p).matrix;
    const double e1 = (h_zj_generic(law, b, 1e-4).matrix - exact).norm();
    const double e2 = (h_zj_generic(law, b, 5e-5).matrix - exact).norm();
    const double e3 = (h_zj_generic(law, b, 2.5e-5).matrix - exact).norm();
    for (double order : {std::log2(e1 / e2), std::log2(e2 / e3)})
    {
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
  }
  return {lo >= 1.7 && hi <= 2.3, "observed orders in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]"};
}

Outcome inverse_round_trip()
{
  const MaterialParams p{1.0, 3.0};
  const IsotropicLaw law = IsotropicLaw::mooney_log(p);
  double worst = 0.0;
  int max_iterations = 0;
  for (std::uint64_t i = 0; i < 10000; ++i)
  {
    auto rng = sample_rng(4004, i);
    const SpdTensor3 b = random_spd(rng, 2.0);
    const InverseLawResult r = inverse_law_detailed(law.stress(b), p);
    worst = std::max(worst, (r.b.sym() - b.sym()).norm() / b.sym().norm());
    max_iterations = std::max(max_iterations, r.iterations);
  }
  return {worst <= 1e-10 && max_iterations <= 30,
          "max relative error = " + fmt("%.3e", worst) + ", max iterations = " + std::to_string(max_iterations)};
}

Outcome rate_consistency_order()
{
  const IsotropicLaw law = IsotropicLaw::mooney_log({1.0, 3.0});
  bool ok = true;
  std::string detail;
  for (const RateCase& c : canonical_rate_cases())
  {
    if (c.name == "dilation") continue;
    const auto rows = rate_convergence(law, c.motion, c.t, 1e-2, 3);
    const double order = rows.back().order;
    ok = ok && std::abs(order - 2.0) <= 0.3;
    detail += c.name + " order " + fmt("%.4f", order) + "; ";
    if (c.name == "rigid_rotation")
    {
      const double hd = rate_consistency(law, c.motion, c.t, 1e-2).h_d_norm;
      ok = ok && hd <= 1e-12;
      detail += "||H.D|| = " + fmt("%.3e", hd) + "; ";
    }
  }
  return {ok, detail};
}

const AuditEntry* find_entry(const AuditReport& r, const std::string& name)
{
  for (const auto& e : r.entries)
    if (e.name == name) return &e;
  return nullptr;
}

Outcome inequality_battery()
{
  const IsotropicLaw mooney = IsotropicLaw::mooney_log({1.0, 3.0});
  const AuditReport audit = run_audit(mooney, 42, 10000, 0);
  bool ok = audit.passed();
  std::string detail;
  for (const char* name :
       {"baker_ericksen", "tension_extension", "pressure_compression", "empirical_inequalities", "tsts_monotonicity", "csp"})
  {
    const AuditEntry* e = find_entry(audit, name);
    const bool held = e && e->status == CheckStatus::Pass;
    ok = ok && held;
    if (!held) detail += std::string(name) + " not held; ";
  }
  if (detail.empty()) detail = "BE/TE/PC/empirical/TSTS/CSP: 0 violations in 10^4 samples; ";

  const auto witness = b_monotonicity_counterexample(mooney, 42, 10000, 0);
  ok = ok && witness && witness->value < -1e-8;
  detail += "B-monotonicity witness " + (witness ? fmt("%.4e", witness->value) : std::string("none")) + "; ";

  const IndefinitenessWitness neg = indefiniteness_search(IsotropicLaw::neo_hooke_exp({1.0, 3.0, 1.0}), 42, 10000, 0);
  ok = ok && neg.min_eig < 0.0;
  detail += "neo_hooke_exp min_eig " + fmt("%.4e", neg.min_eig);
  return {ok, detail};
}

Outcome weak_form_equivalence()
{
  double worst = 0.0;
  for (auto variant : {WeakFormVariant::Expansion, WeakFormVariant::Ji, WeakFormVariant::Aubram,
                       WeakFormVariant::Korobeynikov})
  {
    for (std::uint64_t i = 0; i < 1000; ++i)
    {
      auto rng = sample_rng(7007, i);
      const double amp = std::exp(uniform(rng, -3.0, 3.0));
      const SymTensor3 sigma = random_sym(rng, amp);
      const Tensor3 l = random_tensor(rng, 2.0);
      const SymTensor3 sigma_dot = random_sym(rng, amp);
      const double r = divergence_argument_identity(sigma, l, sigma_dot, variant);
      worst = std::max(worst, r / identity_scale(sigma, l, sigma_dot));
    }
  }
  return {worst <= 1e-13, "4 x 10^3 inputs: max residual / scale = " + fmt("%.3e", worst)};
}

Outcome subproblem_solver()
{
  const MaterialParams p{1.0, 3.0};
  SolverConfig config;

  Config c = default_config();
  const InitialMap map = initial_map(c);
  const GridFields fields = initial_fields(c, map);
  const ElasticityOperator op =
      ElasticityOperator::assemble(fields.grid, fields.sigma, p, StiffnessMode::Induced, 0);
  double probe = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) probe = std::max(probe, operator_symmetry_probe(op, s));

  const ManufacturedResult coarse = manufactured_solution(8, p, config);
  const ManufacturedResult fine = manufactured_solution(16, p, config);
  const double ratio = coarse.l2_error / fine.l2_error;
  const bool converged =
      coarse.relative_residual <= config.cg_tolerance && fine.relative_residual <= config.cg_tolerance;
  return {probe <= 1e-11 && ratio >= 3.0 && converged,
          "symmetry probe " + fmt("%.3e", probe) + ", L2 error ratio 8^3/16^3 = " + fmt("%.3f", ratio) +
              ", CG iterations " + std::to_string(coarse.iterations) + "/" + std::to_string(fine.iterations)};
}

Outcome equilibrium_preservation()
{
  Config c = default_config();
  c.grid.nodes = {8, 8, 8};
  c.solver.dt = 1e-3;
  c.solver.t_end = 0.1;
  c.forcing.preset = ForcingPreset::Equilibrium;
  const InitialMap map = initial_map(c);
  const EvolveResult r = evolve(initial_fields(c, map), make_force(c, map), c.solver, c.material.params);
  double max_v = 0.0;
  for (const auto& row : r.rows) max_v = std::max(max_v, row.max_v);
  const std::size_t steps = r.rows.empty() ? 0 : r.rows.size() - 1;
  return {r.completed && steps == 100 && max_v <= 1e-8,
          std::to_string(steps) + " steps on 8^3, max ||v|| = " + fmt("%.3e", max_v)};
}

Outcome reconstruction()
{
  // Linear field v = a xi: positions follow e^{at} xi0 and tr D = 3a is constant, so the
  // J update is exact up to roundoff.
  const double a = 0.8, horizon = 1.0;
  VelocityField linear{[a](const Vec3& x, double) { return a * x; }, [a](const Vec3&, double) { return 3.0 * a; },
                       1e-4};
  const std::vector<Vec3> seeds{{0.4, -0.3, 0.7}, {1.0, 0.5, -0.2}};
  const double j_linear = std::exp(3.0 * a * horizon);
  std::vector<double> ex;
  double ej_linear = 0.0;
  bool positive = true;
  for (double dt : {0.1, 0.05, 0.025})
  {
    const Trajectory tr = reconstruct_deformation(linear, seeds, horizon, dt);
    double e_x = 0.0;
    for (std::size_t s = 0; s < seeds.size(); ++s)
    {
      e_x = std::max(e_x, norm(tr.positions.back()[s] - std::exp(a * horizon) * seeds[s]));
      ej_linear = std::max(ej_linear, std::abs(tr.jacobians.back()[s] - j_linear) / j_linear);
    }
    for (const auto& js : tr.jacobians)
      for (double j : js) positive = positive && j > 0.0;
    ex.push_back(e_x);
  }
  const double ox = std::log2(ex[1] / ex[2]);

  // Field with non-constant divergence, v = (c xi1^2, 0, 0): J = (1 - c xi10 t)^-2.
  const double c = 0.5;
  VelocityField quadratic{[c](const Vec3& x, double) { return Vec3{c * x[0] * x[0], 0.0, 0.0}; },
                          [c](const Vec3& x, double) { return 2.0 * c * x[0]; }, 1e-4};
  const Vec3 x0{0.6, 0.2, -0.1};
  const double j_quadratic = std::pow(1.0 - c * x0[0] * horizon, -2.0);
  std::vector<double> ej;
  for (double dt : {0.1, 0.05})
  {
    const Trajectory tr = reconstruct_deformation(quadratic, {x0}, horizon, dt);
    for (const auto& js : tr.jacobians) positive = positive && js[0] > 0.0;
    ej.push_back(std::abs(tr.jacobians.back()[0] - j_quadratic));
  }
  const double oj = std::log2(ej[0] / ej[1]);

  return {std::abs(ox - 4.0) <= 0.5 && std::abs(oj - 4.0) <= 0.5 && ej_linear <= 1e-12 && positive,
          "position order " + fmt("%.4f", ox) + ", J order " + fmt("%.4f", oj) + " (quadratic field), linear-field J error " +
              fmt("%.1e", ej_linear) + (positive ? ", J > 0 throughout" : ", J <= 0 encountered")};
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism()
{
  const fs::path root = fs::temp_directory_path() / "cauchy_acceptance_determinism";
  fs::remove_all(root);
  bool ok = true;
  std::string detail;
  for (auto [tag, csv] : {std::pair{ScenarioTag::Audit, "audit.csv"}, std::pair{ScenarioTag::Evolve, "summary.csv"}})
  {
    std::vector<std::string> outputs;
    for (int threads : {1, 4})
    {
      ScenarioSpec spec;
      spec.tag = tag;
      spec.seed = 7;
      spec.threads = threads;
      spec.out_dir = (root / (std::string(to_string(tag)) + "_" + std::to_string(threads))).string();
      const RunReport r = run_scenario(spec);
      ok = ok && r.exit_code() == 0;
      outputs.push_back(slurp(fs::path(spec.out_dir) / csv));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    ok = ok && same;
    detail += std::string(to_string(tag)) + (same ? " identical" : " DIFFERS") + " (1 vs 4 threads); ";
  }
  fs::remove_all(root);
  return {ok, detail};
}
}  // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"linearization", linearization},
      {"symmetry and definiteness", symmetry_definiteness},
      {"analytic vs FD tangent", fd_tangent_order},
      {"inverse round trip", inverse_round_trip},
      {"rate consistency", rate_consistency_order},
      {"inequality battery", inequality_battery},
      {"weak-form equivalence", weak_form_equivalence},
      {"subproblem solver", subproblem_solver},
      {"equilibrium preservation", equilibrium_preservation},
      {"reconstruction", reconstruction},
      {"determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch (const std::exception& e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %-26s %s  %s [%.2f s]\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
