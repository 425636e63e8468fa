#pragma once

#include <string>

#include "gpegap/functional.hpp"
#include "gpegap/grid.hpp"

namespace gpegap {

struct FieldHeader {
  int dim = 1;
  std::array<int, kMaxDim> n{1, 1, 1};
  std::array<double, kMaxDim> lengths{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> origin{0.0, 0.0, 0.0};
  Boundary bc = Boundary::Dirichlet;
  double beta = 0.0;
  bool complex = false;
};

/// Writes `path` (row-major little-endian float64, re/im interleaved for
/// complex fields) and the text header `path.hdr`.
void write_field(const std::string& path, const WaveField& phi, const Grid& grid, double beta);

/// Reads a field written by write_field.
WaveField read_field(const std::string& path, FieldHeader* header = nullptr);

}  // namespace gpegap
