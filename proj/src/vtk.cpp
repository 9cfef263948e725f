#include "cauchy/vtk.hpp"

#include "cauchy/csv.hpp"
#include "cauchy/error.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace cauchy
{

namespace
{
std::size_t components(VtkKind kind)
{
  switch (kind)
  {
    case VtkKind::Scalars: return 1;
    case VtkKind::Vectors: return 3;
    case VtkKind::Tensors: return 9;
  }
  return 1;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, "vtk: " + what); }

std::string next_line(std::istream& in, const char* expecting)
{
  std::string line;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  bad(std::string("unexpected end of file, expecting ") + expecting);
}

template <typename T>
T read_value(std::istringstream& s, const char* what)
{
  T x{};
  if (!(s >> x)) bad(std::string("cannot read ") + what);
  return x;
}
}  // namespace

void write_vtk(std::ostream& out, const VtkDataset& data)
{
  const std::size_t n = data.point_count();
  out << "# vtk DataFile Version 3.0\n"
      << (data.title.empty() ? std::string("cauchy") : data.title) << "\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << data.dims[0] << " " << data.dims[1] << " " << data.dims[2] << "\n"
      << "ORIGIN " << format_double(data.origin[0]) << " " << format_double(data.origin[1]) << " "
      << format_double(data.origin[2]) << "\n"
      << "SPACING " << format_double(data.spacing[0]) << " " << format_double(data.spacing[1]) << " "
      << format_double(data.spacing[2]) << "\n"
      << "POINT_DATA " << n << "\n";
  for (const auto& f : data.fields)
  {
    const std::size_t c = components(f.kind);
    if (f.values.size() != c * n) throw Error(ErrorCode::InvalidArgument, "vtk field '" + f.name + "' has wrong size");
    switch (f.kind)
    {
      case VtkKind::Scalars: out << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n"; break;
      case VtkKind::Vectors: out << "VECTORS " << f.name << " double\n"; break;
      case VtkKind::Tensors: out << "TENSORS " << f.name << " double\n"; break;
    }
    for (std::size_t p = 0; p < n; ++p)
    {
      for (std::size_t k = 0; k < c; ++k)
      {
        out << format_double(f.values[c * p + k]);
        // Tensors are written as three rows per point.
        out << ((k + 1 == c || (c == 9 && k % 3 == 2)) ? '\n' : ' ');
      }
    }
  }
}

VtkDataset read_vtk(std::istream& in)
{
  VtkDataset data;
  if (next_line(in, "header").rfind("# vtk DataFile", 0) != 0) bad("missing '# vtk DataFile' header");
  data.title = next_line(in, "title");
  if (next_line(in, "ASCII") != "ASCII") bad("only ASCII files are supported");
  if (next_line(in, "DATASET") != "DATASET STRUCTURED_POINTS") bad("only STRUCTURED_POINTS is supported");

  std::size_t points = 0;
  bool have_dims = false, have_origin = false, have_spacing = false, have_points = false;
  while (!have_points)
  {
    std::istringstream s(next_line(in, "geometry"));
    const auto word = read_value<std::string>(s, "keyword");
    if (word == "DIMENSIONS")
    {
      for (int& d : data.dims) d = read_value<int>(s, "dimension");
      have_dims = true;
    }
    else if (word == "ORIGIN")
    {
      for (double& x : data.origin) x = read_value<double>(s, "origin");
      have_origin = true;
    }
    else if (word == "SPACING" || word == "ASPECT_RATIO")
    {
      for (double& x : data.spacing) x = read_value<double>(s, "spacing");
      have_spacing = true;
    }
    else if (word == "POINT_DATA")
    {
      points = read_value<std::size_t>(s, "point count");
      have_points = true;
    }
    else
      bad("unexpected keyword '" + word + "'");
  }
  if (!have_dims || !have_origin || !have_spacing) bad("incomplete geometry");
  if (points != data.point_count()) bad("POINT_DATA does not match DIMENSIONS");

  std::string line;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream s(line);
    VtkField f;
    const auto word = read_value<std::string>(s, "block keyword");
    f.name = read_value<std::string>(s, "field name");
    if (word == "SCALARS")
    {
      f.kind = VtkKind::Scalars;
      if (next_line(in, "LOOKUP_TABLE").rfind("LOOKUP_TABLE", 0) != 0) bad("missing LOOKUP_TABLE");
    }
    else if (word == "VECTORS")
      f.kind = VtkKind::Vectors;
    else if (word == "TENSORS")
      f.kind = VtkKind::Tensors;
    else
      bad("unexpected block '" + word + "'");
    f.values.resize(components(f.kind) * points);
    for (double& x : f.values)
      if (!(in >> x)) bad("truncated data in '" + f.name + "'");
    data.fields.push_back(std::move(f));
  }
  return data;
}

VtkDataset snapshot_dataset(const GridFields& fields, const std::string& title)
{
  const StructuredGrid& g = fields.grid;
  VtkDataset data;
  data.title = title;
  data.dims = g.nodes();
  data.origin = g.origin();
  data.spacing = g.spacing();
  const std::size_t n = g.node_count();

  VtkField stress{"stress", VtkKind::Tensors, {}};
  VtkField velocity{"velocity", VtkKind::Vectors, {}};
  VtkField pressure{"pressure", VtkKind::Scalars, {}};
  stress.values.reserve(9 * n);
  velocity.values.reserve(3 * n);
  pressure.values.reserve(n);
  for (std::size_t p = 0; p < n; ++p)
  {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) stress.values.push_back(fields.sigma[p](i, j));
    for (int i = 0; i < 3; ++i) velocity.values.push_back(fields.v[p][i]);
    pressure.values.push_back(-fields.sigma[p].trace() / 3.0);
  }
  data.fields = {std::move(pressure), std::move(velocity), std::move(stress)};
  return data;
}

}  // namespace cauchy
