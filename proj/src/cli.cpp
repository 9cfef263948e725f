#include "cauchy/cli.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/diagnostics.hpp"
#include "cauchy/error.hpp"
#include "cauchy/kinematics.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/rates.hpp"
#include "cauchy/scenario.hpp"
#include "cauchy/solver.hpp"
#include "cauchy/stiffness.hpp"
#include "cauchy/vtk.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cauchy
{

std::string_view to_string(ScenarioTag tag)
{
  switch (tag)
  {
    case ScenarioTag::Audit: return "audit";
    case ScenarioTag::Stiffness: return "stiffness";
    case ScenarioTag::VerifyRate: return "verify-rate";
    case ScenarioTag::Solve: return "solve";
    case ScenarioTag::Evolve: return "evolve";
    case ScenarioTag::Reconstruct: return "reconstruct";
  }
  return "unknown";
}

Config default_config()
{
  Config c;
  c.material.params = {1.0, 3.0, std::nullopt};
  return c;
}

namespace
{
/// Bound on the rigid-rotation tangent response |H.D| (D = 0 exactly).
constexpr double kSpinTolerance = 1e-12;
constexpr double kOrderTarget = 2.0;
constexpr double kOrderSlack = 0.3;
/// Discrete symmetry probe bound for the assembled operator.
constexpr double kSymmetryTolerance = 1e-11;
/// Discrete equilibrium preservation bound on max |v|.
constexpr double kEquilibriumVelocity = 1e-8;

std::ofstream open_artifact(const std::filesystem::path& dir, const std::string& name)
{
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + (dir / name).string() + "'");
  return out;
}

std::string sym_text(const SymTensor3& s)
{
  std::string out;
  for (std::size_t k = 0; k < 6; ++k) out += (k ? " " : "") + format_double(s.component(k));
  return out;
}

struct Context
{
  const ScenarioSpec& spec;
  Config config;
  std::filesystem::path dir;
  int threads;
  RunReport& report;

  void row(const std::string& key, const std::string& value) { report.rows.emplace_back(key, value); }
  void row(const std::string& key, double value) { row(key, format_double(value)); }
  /// Records an asserted property.
  void check(const std::string& key, bool ok, const std::string& detail)
  {
    row(key, std::string(ok ? "pass" : "fail") + " (" + detail + ")");
    report.passed = report.passed && ok;
  }

  IsotropicLaw law() const { return IsotropicLaw::from_name(config.material.law, config.material.params); }
};

void run_audit_scenario(Context& ctx)
{
  const IsotropicLaw law = ctx.law();
  const AuditReport audit = run_audit(law, ctx.spec.seed, ctx.config.scenario.samples, ctx.threads);
  auto out = open_artifact(ctx.dir, "audit.csv");
  write_audit_csv(out, audit);
  for (const auto& e : audit.entries) ctx.row("check." + e.name, std::string(to_string(e.status)));
  ctx.check("audit", audit.passed(), "asserted checks and expected witnesses");
}

void run_stiffness_scenario(Context& ctx)
{
  const IsotropicLaw law = ctx.law();
  TangentStiffness h;
  if (ctx.spec.sigma)
  {
    if (law.tag() != LawTag::MooneyLog)
      throw Error(ErrorCode::InvalidArgument, "--sigma needs the principal law (inverse law)");
    const auto& s = *ctx.spec.sigma;
    h = h_zj_of_sigma(SymTensor3(s[0], s[1], s[2], s[3], s[4], s[5]), law.params());
  }
  else
  {
    const auto b = ctx.spec.b.value_or(std::array<double, 6>{2.0, 1.0, 0.5, 0.0, 0.0, 0.0});
    h = h_zj(law, SpdTensor3::checked(SymTensor3(b[0], b[1], b[2], b[3], b[4], b[5])));
  }

  auto write_matrix = [&](const std::string& name, const FourthOrderMandel& m) {
    auto out = open_artifact(ctx.dir, name);
    CsvWriter csv(out, {"row", "c0", "c1", "c2", "c3", "c4", "c5"});
    for (int i = 0; i < 6; ++i)
    {
      csv.cell(i);
      for (int j = 0; j < 6; ++j) csv.cell(m(i, j));
      csv.end_row();
    }
  };
  write_matrix("stiffness.csv", h.matrix);
  const SymmetryReport sym = symmetry_report(h);
  ctx.row("b", sym_text(h.b));
  ctx.row("source", h.source == StiffnessSource::Analytic ? "analytic" : "fd_generic");
  ctx.row("minor_symmetry", sym.minor ? "true" : "false");
  ctx.row("major_defect", sym.major_defect);
  ctx.row("min_eig", sym.min_eig);
  try
  {
    write_matrix("compliance.csv", compliance(h).matrix);
    ctx.row("compliance", "compliance.csv");
  }
  catch (const Error& e)
  {
    if (e.code() != ErrorCode::NearSingular) throw;
    ctx.row("compliance", e.what());
  }
}

void run_verify_rate_scenario(Context& ctx)
{
  const IsotropicLaw law = ctx.law();
  const bool asserted = law.tag() == LawTag::MooneyLog;
  auto out = open_artifact(ctx.dir, "rates.csv");
  CsvWriter csv(out, {"motion", "h", "residual", "order"});
  for (const auto& c : canonical_rate_cases())
  {
    const auto rows = rate_convergence(law, c.motion, c.t, 1e-2, 3);
    for (const auto& r : rows)
    {
      csv.cell(c.name).cell(r.h).cell(r.residual).cell(r.order);
      csv.end_row();
    }
    const double order = rows.back().order;
    if (asserted)
      ctx.check(c.name + ".order", std::abs(order - kOrderTarget) <= kOrderSlack, format_double(order));
    else
      ctx.row(c.name + ".order", order);
    if (c.name == "rigid_rotation")
    {
      const double hd = rate_consistency(law, c.motion, c.t, 1e-2).h_d_norm;
      if (asserted)
        ctx.check("rigid_rotation.h_d_norm", hd <= kSpinTolerance, format_double(hd));
      else
        ctx.row("rigid_rotation.h_d_norm", hd);
    }
  }
}

void write_snapshot(const std::filesystem::path& dir, const std::string& name, const GridFields& fields)
{
  auto out = open_artifact(dir, name);
  write_vtk(out, snapshot_dataset(fields, "t = " + format_double(fields.t)));
}

void run_solve_scenario(Context& ctx)
{
  SolverConfig solver = ctx.config.solver;
  solver.threads = ctx.threads;
  const InitialMap map = initial_map(ctx.config);
  GridFields fields = initial_fields(ctx.config, map);
  const BodyForce force = make_force(ctx.config, map);
  const MaterialParams& params = ctx.config.material.params;

  const ElasticityOperator op = ElasticityOperator::assemble(fields.grid, fields.sigma, params, solver.mode, ctx.threads);
  const NodalVector r = assemble_rhs(fields.grid, fields.sigma, fields.v, force, 0.0, ctx.threads);
  const CgResult cg = solve_subproblem(op, r, solver);
  const double probe = operator_symmetry_probe(op, ctx.spec.seed);
  fields.v = cg.v;
  double max_v = 0.0;
  for (const Vec3& v : fields.v) max_v = std::max(max_v, norm(v));
  const double min_eig = nodal_tangents(fields.sigma, params, solver.mode, ctx.threads).min_eig;
  const double eq = equilibrium_residual(fields.grid, fields.sigma, force, 0.0, ctx.threads);

  auto out = open_artifact(ctx.dir, "solve.csv");
  CsvWriter csv(out, {"unknowns", "cg_iterations", "relative_residual", "max_v", "symmetry_probe", "min_h_eig",
                      "equilibrium_residual"});
  csv.cell(op.unknowns()).cell(cg.iterations).cell(cg.relative_residual).cell(max_v).cell(probe).cell(min_eig).cell(eq);
  csv.end_row();
  write_snapshot(ctx.dir, "solve.vtk", fields);

  ctx.row("cg_iterations", std::to_string(cg.iterations));
  ctx.row("max_v", max_v);
  ctx.row("equilibrium_residual", eq);
  ctx.check("symmetry_probe", probe <= kSymmetryTolerance, format_double(probe));
}

void run_evolve_scenario(Context& ctx)
{
  SolverConfig solver = ctx.config.solver;
  solver.threads = ctx.threads;
  const InitialMap map = initial_map(ctx.config);
  const GridFields initial = initial_fields(ctx.config, map);
  const BodyForce force = make_force(ctx.config, map);
  const MaterialParams& params = ctx.config.material.params;
  const std::size_t every = ctx.config.scenario.snapshot_every;

  char name[64];
  const EvolveResult result = evolve(initial, force, solver, params, [&](std::size_t step, const GridFields& f) {
    if ((every > 0 && step % every == 0) || (every == 0 && step == 0))
    {
      std::snprintf(name, sizeof name, "snapshot_%05zu.vtk", step);
      write_snapshot(ctx.dir, name, f);
    }
  });
  {
    auto out = open_artifact(ctx.dir, "summary.csv");
    write_summary_csv(out, result.rows);
  }
  write_snapshot(ctx.dir, "final.vtk", result.final_fields);

  double max_v = 0.0;
  for (const auto& r : result.rows) max_v = std::max(max_v, r.max_v);
  ctx.row("steps", std::to_string(result.rows.empty() ? 0 : result.rows.size() - 1));
  ctx.row("max_v", max_v);
  if (!result.rows.empty())
  {
    ctx.row("initial_equilibrium_residual", result.rows.front().equilibrium_residual);
    ctx.row("final_equilibrium_residual", result.rows.back().equilibrium_residual);
  }
  ctx.check("completed", result.completed, result.completed ? "all steps" : result.error);
  if (ctx.config.forcing.preset == ForcingPreset::Equilibrium)
    ctx.check("equilibrium_max_v", max_v <= kEquilibriumVelocity, format_double(max_v));

  if (ctx.config.scenario.compare_zero_grade && solver.mode == StiffnessMode::Induced)
  {
    SolverConfig zero = solver;
    zero.mode = StiffnessMode::ZeroGrade;
    const EvolveResult other = evolve(initial, force, zero, params);
    auto out = open_artifact(ctx.dir, "summary_zero_grade.csv");
    write_summary_csv(out, other.rows);
    double gap = 0.0;
    for (std::size_t n = 0; n < initial.grid.node_count(); ++n)
      gap = std::max(gap, (result.final_fields.sigma[n] - other.final_fields.sigma[n]).norm());
    ctx.row("zero_grade_completed", other.completed ? "true" : other.error);
    ctx.row("zero_grade_stress_discrepancy", gap);
  }
}

void run_reconstruct_scenario(Context& ctx)
{
  const StructuredGrid grid = ctx.config.grid.make();
  const Tensor3 a = ctx.config.scenario.velocity_gradient;
  VelocityField field;
  field.v = [a](const Vec3& x, double) { return a * x; };
  field.divergence = [a](const Vec3&, double) { return a.trace(); };
  std::vector<Vec3> seeds(grid.node_count());
  for (std::size_t n = 0; n < grid.node_count(); ++n) seeds[n] = grid.position(n);

  const Trajectory traj =
      reconstruct_deformation(field, seeds, ctx.config.solver.t_end, ctx.config.solver.dt, std::nullopt, 1.0, ctx.threads);
  auto out = open_artifact(ctx.dir, "trajectory.csv");
  write_trajectory_csv(out, traj);

  double min_j = INFINITY, j_error = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k)
  {
    const double exact = std::exp(a.trace() * traj.times[k]);
    for (double j : traj.jacobians[k])
    {
      min_j = std::min(min_j, j);
      j_error = std::max(j_error, std::abs(j - exact) / exact);
    }
  }
  ctx.row("steps", std::to_string(traj.times.size() - 1));
  ctx.row("max_relative_j_error", j_error);
  ctx.check("j_positive", min_j > 0.0, format_double(min_j));
}
}  // namespace

RunReport run_scenario(const ScenarioSpec& spec)
{
  RunReport report;
  report.scenario = std::string(to_string(spec.tag));
  report.seed = spec.seed;
  try
  {
    Config config = spec.config_path ? load_config(*spec.config_path) : default_config();
    if (spec.law) config.material.law = *spec.law;
    if (spec.mu) config.material.params.mu = *spec.mu;
    if (spec.lambda) config.material.params.lambda = *spec.lambda;
    if (spec.kappa) config.material.params.kappa = *spec.kappa;
    if (spec.samples) config.scenario.samples = *spec.samples;
    config.material.params.validate();
    if (config.scenario.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be at least 1");
    report.config_echo = echo_config(config);

    const std::filesystem::path dir(spec.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + spec.out_dir + "'");

    Context ctx{spec, config, dir, resolve_threads(spec.threads), report};
    switch (spec.tag)
    {
      case ScenarioTag::Audit: run_audit_scenario(ctx); break;
      case ScenarioTag::Stiffness: run_stiffness_scenario(ctx); break;
      case ScenarioTag::VerifyRate: run_verify_rate_scenario(ctx); break;
      case ScenarioTag::Solve: run_solve_scenario(ctx); break;
      case ScenarioTag::Evolve: run_evolve_scenario(ctx); break;
      case ScenarioTag::Reconstruct: run_reconstruct_scenario(ctx); break;
    }
  }
  catch (const Error& e)
  {
    report.rows.emplace_back("error", e.what());
    report.passed = false;
    report.errored = true;
  }

  std::error_code ec;
  if (std::filesystem::is_directory(spec.out_dir, ec))
  {
    std::ofstream out(std::filesystem::path(spec.out_dir) / "report.txt", std::ios::binary);
    if (out) write_report(out, report);
  }
  return report;
}

void write_report(std::ostream& out, const RunReport& report)
{
  out << "tool_version = " << report.version << "\n"
      << "scenario = " << report.scenario << "\n"
      << "seed = " << report.seed << "\n"
      << "status = " << (report.errored ? "error" : report.passed ? "pass" : "fail") << "\n";
  for (const auto& [key, value] : report.rows) out << key << " = " << value << "\n";
  if (!report.config_echo.empty()) out << "\n# effective configuration\n" << report.config_echo;
}

int run_cli(int argc, char** argv)
{
  CLI::App app{"Cauchy-elastic constitutive audit, rate verification and field solver"};
  app.require_subcommand(1);
  app.fallthrough();

  ScenarioSpec spec;
  std::string config_path;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", spec.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", spec.seed, "random seed")->capture_default_str();
  app.add_option("--threads", spec.threads, "worker threads (0 = auto)")->capture_default_str()->check(CLI::NonNegativeNumber);

  auto material_flags = [&spec](CLI::App* sub) {
    sub->add_option_function<std::string>("--law", [&spec](const std::string& v) { spec.law = v; },
        "mooney_log | neo_hooke_exp | neo_hooke_quad | det_normalized_example");
    sub->add_option_function<double>("--mu", [&spec](double v) { spec.mu = v; }, "shear modulus");
    sub->add_option_function<double>("--lambda", [&spec](double v) { spec.lambda = v; }, "Lame lambda");
    sub->add_option_function<double>("--kappa", [&spec](double v) { spec.kappa = v; }, "bulk modulus (Neo-Hooke laws)");
  };

  auto* audit = app.add_subcommand("audit", "constitutive-inequality battery");
  material_flags(audit);
  audit->add_option_function<std::size_t>("--samples", [&spec](std::size_t v) { spec.samples = v; }, "samples per check");

  auto* stiffness = app.add_subcommand("stiffness", "dump the induced tangent stiffness");
  material_flags(stiffness);
  std::vector<double> b_values, sigma_values;
  auto* b_opt = stiffness->add_option("--b", b_values, "B as xx yy zz xy yz zx")->expected(6);
  stiffness->add_option("--sigma", sigma_values, "sigma as xx yy zz xy yz zx (principal law)")->expected(6)->excludes(b_opt);

  auto* rate = app.add_subcommand("verify-rate", "rate-consistency convergence on canonical motions");
  material_flags(rate);
  auto* solve = app.add_subcommand("solve", "velocity subproblem at the initial state");
  auto* evolve_cmd = app.add_subcommand("evolve", "staggered stress-velocity evolution");
  auto* reconstruct = app.add_subcommand("reconstruct", "deformation from a linear velocity field");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    // Help and version requests exit 0; usage errors share the error exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) spec.config_path = config_path;
  auto to6 = [](const std::vector<double>& v) {
    std::array<double, 6> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return a;
  };
  if (b_values.size() == 6) spec.b = to6(b_values);
  if (sigma_values.size() == 6) spec.sigma = to6(sigma_values);

  if (audit->parsed())
    spec.tag = ScenarioTag::Audit;
  else if (stiffness->parsed())
    spec.tag = ScenarioTag::Stiffness;
  else if (rate->parsed())
    spec.tag = ScenarioTag::VerifyRate;
  else if (solve->parsed())
    spec.tag = ScenarioTag::Solve;
  else if (evolve_cmd->parsed())
    spec.tag = ScenarioTag::Evolve;
  else if (reconstruct->parsed())
    spec.tag = ScenarioTag::Reconstruct;

  const RunReport report = run_scenario(spec);
  for (const auto& [key, value] : report.rows)
    if (key == "error") std::cerr << "error: " << value << "\n";
  std::cout << report.scenario << ": " << (report.errored ? "error" : report.passed ? "pass" : "fail") << " ("
            << (std::filesystem::path(spec.out_dir) / "report.txt").string() << ")\n";
  return report.exit_code();
}

}  // namespace cauchy
