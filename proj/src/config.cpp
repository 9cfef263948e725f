#include "cauchy/config.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace cauchy
{

std::string_view to_string(ForcingPreset p)
{
  switch (p)
  {
    case ForcingPreset::None: return "none";
    case ForcingPreset::Equilibrium: return "equilibrium";
    case ForcingPreset::Ramp: return "ramp";
  }
  return "unknown";
}

std::string_view to_string(InitialPreset p)
{
  switch (p)
  {
    case InitialPreset::Identity: return "identity";
    case InitialPreset::Smooth: return "smooth";
    case InitialPreset::Stretch: return "stretch";
  }
  return "unknown";
}

std::string_view to_string(StiffnessMode m)
{
  return m == StiffnessMode::Induced ? "induced" : "zero_grade";
}

namespace
{
std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(int line, const std::string& what)
{
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> words(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size())
  {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

double to_double(std::string_view s, int line)
{
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
    parse_error(line, "expected a number, got '" + std::string(s) + "'");
  return x;
}

long long to_integer(std::string_view s, int line)
{
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    parse_error(line, "expected an integer, got '" + std::string(s) + "'");
  return x;
}

std::size_t to_count(std::string_view s, int line)
{
  const long long x = to_integer(s, line);
  if (x < 0) parse_error(line, "expected a non-negative integer, got '" + std::string(s) + "'");
  return static_cast<std::size_t>(x);
}

template <std::size_t N>
std::array<double, N> to_doubles(std::string_view s, int line)
{
  const auto w = words(s);
  if (w.size() != N) parse_error(line, "expected " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = to_double(w[i], line);
  return out;
}

bool to_bool(std::string_view s, int line)
{
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  parse_error(line, "expected true or false, got '" + std::string(s) + "'");
}

using Setter = std::function<void(Config&, std::string_view, int)>;

const std::map<std::string, std::map<std::string, Setter>>& schema()
{
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"grid",
       {
           {"nodes",
            [](Config& c, std::string_view v, int line) {
              const auto w = words(v);
              if (w.size() == 1)
              {
                const int n = static_cast<int>(to_integer(w[0], line));
                c.grid.nodes = {n, n, n};
              }
              else if (w.size() == 3)
              {
                for (int i = 0; i < 3; ++i) c.grid.nodes[i] = static_cast<int>(to_integer(w[i], line));
              }
              else
                parse_error(line, "nodes takes one or three integers");
            }},
           {"origin", [](Config& c, std::string_view v, int line) { c.grid.origin = to_doubles<3>(v, line); }},
           {"extent", [](Config& c, std::string_view v, int line) { c.grid.extent = to_doubles<3>(v, line); }},
       }},
      {"material",
       {
           {"law", [](Config& c, std::string_view v, int) { c.material.law = std::string(v); }},
           {"mu", [](Config& c, std::string_view v, int line) { c.material.params.mu = to_double(v, line); }},
           {"lambda", [](Config& c, std::string_view v, int line) { c.material.params.lambda = to_double(v, line); }},
           {"kappa", [](Config& c, std::string_view v, int line) { c.material.params.kappa = to_double(v, line); }},
       }},
      {"solver",
       {
           {"cg_tolerance", [](Config& c, std::string_view v, int line) { c.solver.cg_tolerance = to_double(v, line); }},
           {"cg_max_iterations",
            [](Config& c, std::string_view v, int line) { c.solver.cg_max_iterations = to_count(v, line); }},
           {"dt", [](Config& c, std::string_view v, int line) { c.solver.dt = to_double(v, line); }},
           {"t_end", [](Config& c, std::string_view v, int line) { c.solver.t_end = to_double(v, line); }},
           {"cfl", [](Config& c, std::string_view v, int line) { c.solver.cfl = to_double(v, line); }},
           {"picard_sweeps",
            [](Config& c, std::string_view v, int line) {
              c.solver.picard_sweeps = static_cast<int>(to_integer(v, line));
            }},
           {"mode",
            [](Config& c, std::string_view v, int line) {
              if (v == "induced")
                c.solver.mode = StiffnessMode::Induced;
              else if (v == "zero_grade")
                c.solver.mode = StiffnessMode::ZeroGrade;
              else
                parse_error(line, "mode must be induced or zero_grade");
            }},
       }},
      {"forcing",
       {
           {"preset",
            [](Config& c, std::string_view v, int line) {
              if (v == "none")
                c.forcing.preset = ForcingPreset::None;
              else if (v == "equilibrium")
                c.forcing.preset = ForcingPreset::Equilibrium;
              else if (v == "ramp")
                c.forcing.preset = ForcingPreset::Ramp;
              else
                parse_error(line, "preset must be none, equilibrium or ramp");
            }},
           {"amplitude", [](Config& c, std::string_view v, int line) { c.forcing.amplitude = to_double(v, line); }},
       }},
      {"scenario",
       {
           {"initial",
            [](Config& c, std::string_view v, int line) {
              if (v == "identity")
                c.scenario.initial = InitialPreset::Identity;
              else if (v == "smooth")
                c.scenario.initial = InitialPreset::Smooth;
              else if (v == "stretch")
                c.scenario.initial = InitialPreset::Stretch;
              else
                parse_error(line, "initial must be identity, smooth or stretch");
            }},
           {"amplitude", [](Config& c, std::string_view v, int line) { c.scenario.amplitude = to_double(v, line); }},
           {"stretch", [](Config& c, std::string_view v, int line) { c.scenario.stretch = to_doubles<3>(v, line); }},
           {"samples", [](Config& c, std::string_view v, int line) { c.scenario.samples = to_count(v, line); }},
           {"snapshot_every",
            [](Config& c, std::string_view v, int line) { c.scenario.snapshot_every = to_count(v, line); }},
           {"compare_zero_grade",
            [](Config& c, std::string_view v, int line) { c.scenario.compare_zero_grade = to_bool(v, line); }},
           {"velocity_gradient",
            [](Config& c, std::string_view v, int line) {
              c.scenario.velocity_gradient = Tensor3(to_doubles<9>(v, line));
            }},
       }},
  };
  return table;
}
}  // namespace

Config parse_config(std::string_view text)
{
  Config config;
  const auto& table = schema();
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size())
  {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[')
    {
      if (line.back() != ']') parse_error(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!table.count(section))
        throw Error(ErrorCode::UnknownKey, "line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected 'key = value'");
    if (section.empty()) parse_error(line_no, "key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parse_error(line_no, "empty key");
    if (value.empty()) parse_error(line_no, "empty value for '" + key + "'");

    const auto& keys = table.at(section);
    const auto it = keys.find(key);
    if (it == keys.end())
      throw Error(ErrorCode::UnknownKey,
          "line " + std::to_string(line_no) + ": unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second)
      parse_error(line_no, "duplicate key '" + key + "' in [" + section + "]");
    it->second(config, value, line_no);
  }

  for (const char* key : {"material.mu", "material.lambda"})
    if (!seen.count(key)) throw Error(ErrorCode::MissingRequired, std::string("missing required key ") + key);

  config.material.params.validate();
  config.solver.validate();
  (void)config.grid.make();
  if (!(config.scenario.amplitude >= 0.0)) throw Error(ErrorCode::InvalidArgument, "scenario.amplitude must be >= 0");
  for (double s : config.scenario.stretch)
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scenario.stretch entries must be positive");
  if (config.scenario.samples == 0) throw Error(ErrorCode::InvalidArgument, "scenario.samples must be at least 1");
  (void)IsotropicLaw::from_name(config.material.law, config.material.params);
  return config;
}

Config load_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string echo_config(const Config& c)
{
  std::ostringstream out;
  auto vec = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
    return s;
  };
  out << "[grid]\n"
      << "nodes = " << c.grid.nodes[0] << " " << c.grid.nodes[1] << " " << c.grid.nodes[2] << "\n"
      << "origin = " << vec(c.grid.origin) << "\n"
      << "extent = " << vec(c.grid.extent) << "\n\n";
  out << "[material]\n"
      << "law = " << c.material.law << "\n"
      << "mu = " << format_double(c.material.params.mu) << "\n"
      << "lambda = " << format_double(c.material.params.lambda) << "\n";
  if (c.material.params.kappa) out << "kappa = " << format_double(*c.material.params.kappa) << "\n";
  out << "\n[solver]\n"
      << "cg_tolerance = " << format_double(c.solver.cg_tolerance) << "\n"
      << "cg_max_iterations = " << c.solver.cg_max_iterations << "\n"
      << "dt = " << format_double(c.solver.dt) << "\n"
      << "t_end = " << format_double(c.solver.t_end) << "\n"
      << "cfl = " << format_double(c.solver.cfl) << "\n"
      << "picard_sweeps = " << c.solver.picard_sweeps << "\n"
      << "mode = " << to_string(c.solver.mode) << "\n\n";
  out << "[forcing]\n"
      << "preset = " << to_string(c.forcing.preset) << "\n"
      << "amplitude = " << format_double(c.forcing.amplitude) << "\n\n";
  out << "[scenario]\n"
      << "initial = " << to_string(c.scenario.initial) << "\n"
      << "amplitude = " << format_double(c.scenario.amplitude) << "\n"
      << "stretch = " << vec(c.scenario.stretch) << "\n"
      << "samples = " << c.scenario.samples << "\n"
      << "snapshot_every = " << c.scenario.snapshot_every << "\n"
      << "compare_zero_grade = " << (c.scenario.compare_zero_grade ? "true" : "false") << "\n"
      << "velocity_gradient = " << vec(c.scenario.velocity_gradient.data()) << "\n";
  return out.str();
}

}  // namespace cauchy
