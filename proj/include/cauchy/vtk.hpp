#pragma once

#include "cauchy/solver.hpp"
#include "cauchy/tensor.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace cauchy
{

enum class VtkKind
{
  Scalars,
  Vectors,
  Tensors,
};

/// Point data block: 1, 3 or 9 values per point.
struct VtkField
{
  std::string name;
  VtkKind kind = VtkKind::Scalars;
  std::vector<double> values;
};

/// Legacy-VTK ASCII STRUCTURED_POINTS dataset.
struct VtkDataset
{
  std::string title;
  std::array<int, 3> dims{};
  Vec3 origin{};
  Vec3 spacing{};
  std::vector<VtkField> fields;

  std::size_t point_count() const { return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]; }
};

/// Writes the dataset with 17 significant digits, so read_vtk restores it exactly.
void write_vtk(std::ostream& out, const VtkDataset& data);

/// Reads what write_vtk produces. Throws ParseError on malformed input.
VtkDataset read_vtk(std::istream& in);

/// Snapshot of a state: stress (tensor), velocity (vector) and pressure -tr(sigma)/3.
VtkDataset snapshot_dataset(const GridFields& fields, const std::string& title);

}  // namespace cauchy
