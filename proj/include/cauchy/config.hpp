#pragma once

#include "cauchy/constitutive.hpp"
#include "cauchy/solver.hpp"
#include "cauchy/tensor.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace cauchy
{

struct GridSection
{
  std::array<int, 3> nodes{8, 8, 8};
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 extent{1.0, 1.0, 1.0};

  StructuredGrid make() const { return StructuredGrid(origin, extent, nodes); }
};

struct MaterialSection
{
  std::string law = "mooney_log";
  /// mu and lambda are required keys; kappa is optional.
  MaterialParams params;
};

enum class ForcingPreset
{
  /// f = 0.
  None,
  /// f = Div sigma_0, so the initial state is in equilibrium.
  Equilibrium,
  /// Equilibrium force plus amplitude * t * sin(pi y/Ly) e1.
  Ramp,
};

struct ForcingSection
{
  ForcingPreset preset = ForcingPreset::Equilibrium;
  double amplitude = 0.1;
};

enum class InitialPreset
{
  Identity,
  /// Smooth non-affine map scaled by `amplitude`.
  Smooth,
  /// Affine map diag(stretch).
  Stretch,
};

struct ScenarioSection
{
  InitialPreset initial = InitialPreset::Smooth;
  double amplitude = 0.1;
  Vec3 stretch{1.0, 1.0, 1.0};
  /// Audit samples per check.
  std::size_t samples = 10000;
  /// VTK snapshot cadence in steps; 0 writes only the initial and final states.
  std::size_t snapshot_every = 0;
  /// Repeat an evolve run with the zero-grade tangent and report the stress discrepancy.
  bool compare_zero_grade = false;
  /// Velocity gradient A of the reconstruct preset v(xi) = A xi.
  Tensor3 velocity_gradient = Tensor3::diag(0.2, 0.1, -0.15);
};

struct Config
{
  GridSection grid;
  MaterialSection material;
  SolverConfig solver;
  ForcingSection forcing;
  ScenarioSection scenario;
};

/// Parses the INI-style configuration: [section] headers, `key = value` lines, `#`
/// comments. Sections: grid, material, solver, forcing, scenario.
/// Throws ParseError (with line number) on malformed lines, bad numbers and duplicate
/// keys, UnknownKey on unknown sections or keys, MissingRequired when material.mu or
/// material.lambda is absent, and InvalidArgument when a value violates an invariant.
Config parse_config(std::string_view text);

/// Reads and parses a file; Io when it cannot be read.
Config load_config(const std::string& path);

/// Every effective value in canonical INI form; parse_config(echo_config(c)) reproduces c.
std::string echo_config(const Config& config);

std::string_view to_string(ForcingPreset p);
std::string_view to_string(InitialPreset p);
std::string_view to_string(StiffnessMode m);

}  // namespace cauchy
