#include "gpegap/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gpegap/error.hpp"

namespace gpegap {

namespace {

void put(std::ostream& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, sizeof buf);
  out.write(buf, sizeof buf);
}

double get(std::istream& in) {
  char buf[8];
  if (!in.read(buf, sizeof buf)) fail(ErrorCode::Io, "field file is truncated");
  std::uint64_t bits;
  std::memcpy(&bits, buf, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double x;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

}  // namespace

void write_field(const std::string& path, const WaveField& phi, const Grid& grid, double beta) {
  require(phi.size() == grid.size(), "field size does not match the grid");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  const bool cplx = !phi.real_valued();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    put(out, phi.re[i]);
    if (cplx) put(out, phi.im[i]);
  }
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");

  std::ofstream hdr(path + ".hdr");
  if (!hdr) fail(ErrorCode::Io, "cannot write '" + path + ".hdr'");
  hdr << std::setprecision(17);
  hdr << "format gpegap-field 1\n";
  hdr << "dim " << grid.dim() << "\n";
  hdr << "n";
  for (int a = 0; a < grid.dim(); ++a) hdr << ' ' << grid.count(a);
  hdr << "\nlengths";
  for (int a = 0; a < grid.dim(); ++a) hdr << ' ' << grid.domain().lengths[a];
  hdr << "\norigin";
  for (int a = 0; a < grid.dim(); ++a) hdr << ' ' << grid.domain().origin[a];
  hdr << "\nbc " << to_string(grid.boundary()) << "\n";
  hdr << "beta " << beta << "\n";
  hdr << "complex " << (cplx ? 1 : 0) << "\n";
  hdr << "layout row-major x1-slowest float64-le" << (cplx ? " re-im-interleaved" : "") << "\n";
}

WaveField read_field(const std::string& path, FieldHeader* header) {
  std::ifstream hdr(path + ".hdr");
  if (!hdr) fail(ErrorCode::Io, "cannot open '" + path + ".hdr'");
  FieldHeader h;
  std::string line;
  while (std::getline(hdr, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") {
      ls >> h.dim;
      require(h.dim >= 1 && h.dim <= kMaxDim, "bad dimension in field header");
    } else if (key == "n") {
      for (int a = 0; a < h.dim; ++a) ls >> h.n[a];
    } else if (key == "lengths") {
      for (int a = 0; a < h.dim; ++a) ls >> h.lengths[a];
    } else if (key == "origin") {
      for (int a = 0; a < h.dim; ++a) ls >> h.origin[a];
    } else if (key == "bc") {
      std::string bc;
      ls >> bc;
      h.bc = parse_boundary(bc);
    } else if (key == "beta") {
      ls >> h.beta;
    } else if (key == "complex") {
      int c = 0;
      ls >> c;
      h.complex = c != 0;
    }
    if (ls.fail()) fail(ErrorCode::Io, "malformed field header line '" + line + "'");
  }
  std::size_t count = 1;
  for (int a = 0; a < h.dim; ++a) count *= static_cast<std::size_t>(h.n[a]);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  WaveField phi;
  phi.re.resize(count);
  if (h.complex) phi.im.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    phi.re[i] = get(in);
    if (h.complex) phi.im[i] = get(in);
  }
  if (header) *header = h;
  return phi;
}

}  // namespace gpegap
