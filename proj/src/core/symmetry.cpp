#include "gpegap/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gpegap/error.hpp"

namespace gpegap {

namespace {

// Node index of T^k x where T is the class generator.
std::size_t image(SymmetryClass cls, const Grid& grid, std::size_t idx, int k) {
  auto ijk = grid.unravel(idx);
  switch (cls) {
    case SymmetryClass::OddInX1:
      if (k % 2) ijk[0] = grid.mirror(0, ijk[0]);
      break;
    case SymmetryClass::Rotation: {
      const int n = grid.count(0);
      for (int r = 0; r < k; ++r) {
        const int i = ijk[0];
        const int j = ijk[1];
        // (u, v) -> (-v, u) about the center; u = i - (n-1)/2 (or n/2 when periodic).
        if (grid.boundary() == Boundary::Periodic) {
          ijk[0] = (n - j) % n;
        } else {
          ijk[0] = n - 1 - j;
        }
        ijk[1] = i;
      }
      break;
    }
    case SymmetryClass::RingShift: {
      const int n = grid.count(0);
      ijk[0] = (ijk[0] + k * (n / 4)) % n;
      break;
    }
    case SymmetryClass::None:
      break;
  }
  return grid.index(ijk);
}

}  // namespace

void check_symmetry_support(SymmetryClass cls, const Grid& grid) {
  switch (cls) {
    case SymmetryClass::None:
    case SymmetryClass::OddInX1:
      return;
    case SymmetryClass::Rotation:
      require(grid.dim() >= 2, "vortex states need at least two dimensions");
      require(grid.count(0) == grid.count(1) &&
                  nearly_equal(grid.spacing(0), grid.spacing(1), 1e-12) &&
                  nearly_equal(grid.domain().origin[0], grid.domain().origin[1], 1e-12),
              "vortex states need a square x1-x2 cross-section with equal node counts");
      require(grid.boundary() == Boundary::Periodic || grid.count(0) % 2 == 0,
              "vortex states need an even node count so the core sits between nodes");
      return;
    case SymmetryClass::RingShift:
      require(grid.boundary() == Boundary::Periodic, "ring states need a periodic grid");
      require(grid.count(0) % 4 == 0, "ring states need n_1 divisible by 4");
      return;
  }
}

void project(SymmetryClass cls, WaveField& phi, const Grid& grid) {
  if (cls == SymmetryClass::None) return;
  const std::size_t n = phi.size();
  if (cls == SymmetryClass::OddInX1) {
    auto odd = [&](std::vector<double>& f) {
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = 0.5 * (f[i] - f[image(cls, grid, i, 1)]);
      f.swap(g);
    };
    odd(phi.re);
    if (!phi.real_valued()) odd(phi.im);
    return;
  }
  phi.make_complex();
  std::vector<double> re(n, 0.0), im(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k) {
      const std::size_t j = image(cls, grid, i, k);
      const double a = phi.re[j];
      const double b = phi.im[j];
      // (-i)^k (a + i b)
      switch (k) {
        case 0: re[i] += a; im[i] += b; break;
        case 1: re[i] += b; im[i] -= a; break;
        case 2: re[i] -= a; im[i] -= b; break;
        case 3: re[i] -= b; im[i] += a; break;
      }
    }
    re[i] *= 0.25;
    im[i] *= 0.25;
  }
  phi.re.swap(re);
  phi.im.swap(im);
}

SymmetryProjector::SymmetryProjector(SymmetryClass cls, const Grid& grid) : cls_(cls) {
  if (cls == SymmetryClass::None) return;
  const int count = cls == SymmetryClass::OddInX1 ? 2 : 4;
  for (int k = 0; k < count; ++k) {
    maps_[k].resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) maps_[k][i] = image(cls, grid, i, k);
  }
}

double SymmetryProjector::apply(WaveField& phi) const {
  if (cls_ == SymmetryClass::None) return 0.0;
  const std::size_t n = phi.size();
  std::vector<double> re(n, 0.0), im;
  if (cls_ == SymmetryClass::OddInX1) {
    const auto& m = maps_[1];
    for (std::size_t i = 0; i < n; ++i) re[i] = 0.5 * (phi.re[i] - phi.re[m[i]]);
    if (!phi.real_valued()) {
      im.resize(n);
      for (std::size_t i = 0; i < n; ++i) im[i] = 0.5 * (phi.im[i] - phi.im[m[i]]);
    }
  } else {
    phi.make_complex();
    im.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j1 = maps_[1][i], j2 = maps_[2][i], j3 = maps_[3][i];
      re[i] = 0.25 * (phi.re[i] + phi.im[j1] - phi.re[j2] - phi.im[j3]);
      im[i] = 0.25 * (phi.im[i] - phi.re[j1] - phi.im[j2] + phi.re[j3]);
    }
  }
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = phi.re[i];
    const double b = phi.real_valued() ? 0.0 : phi.im[i];
    const double pb = im.empty() ? 0.0 : im[i];
    scale = std::max(scale, std::hypot(a, b));
    worst = std::max(worst, std::hypot(a - re[i], b - pb));
  }
  phi.re.swap(re);
  if (!im.empty()) phi.im.swap(im);
  return scale > 0.0 ? worst / scale : 0.0;
}

double potential_asymmetry(SymmetryClass cls, std::span<const double> v, const Grid& grid) {
  if (cls == SymmetryClass::None) return 0.0;
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    scale = std::max(scale, std::abs(v[i]));
    worst = std::max(worst, std::abs(v[i] - v[image(cls, grid, i, 1)]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double symmetry_defect(SymmetryClass cls, const WaveField& phi, const Grid& grid) {
  if (cls == SymmetryClass::None) return 0.0;
  WaveField p = phi;
  project(cls, p, grid);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double a = phi.re[i];
    const double b = phi.real_valued() ? 0.0 : phi.im[i];
    const double pb = p.real_valued() ? 0.0 : p.im[i];
    scale = std::max(scale, std::hypot(a, b));
    worst = std::max(worst, std::hypot(a - p.re[i], b - pb));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double winding_number(SymmetryClass cls, const WaveField& phi, const Grid& grid) {
  if (phi.real_valued()) return 0.0;
  std::vector<std::size_t> loop;
  std::array<int, kMaxDim> mid{0, 0, 0};
  for (int a = 0; a < grid.dim(); ++a) mid[a] = grid.count(a) / 2;
  if (cls == SymmetryClass::RingShift) {
    for (int i = 0; i < grid.count(0); ++i) {
      auto ijk = mid;
      ijk[0] = i;
      loop.push_back(grid.index(ijk));
    }
  } else if (cls == SymmetryClass::Rotation) {
    // Square loop two cells out from the core, counter-clockwise in (x1, x2).
    const int n = grid.count(0);
    const int lo = n / 2 - 2;
    const int hi = n / 2 + 1;
    auto at = [&](int i, int j) {
      auto ijk = mid;
      ijk[0] = i;
      ijk[1] = j;
      return grid.index(ijk);
    };
    for (int i = lo; i < hi; ++i) loop.push_back(at(i, lo));
    for (int j = lo; j < hi; ++j) loop.push_back(at(hi, j));
    for (int i = hi; i > lo; --i) loop.push_back(at(i, hi));
    for (int j = hi; j > lo; --j) loop.push_back(at(lo, j));
  } else {
    return 0.0;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const std::size_t a = loop[k];
    const std::size_t b = loop[(k + 1) % loop.size()];
    double d = std::atan2(phi.im[b], phi.re[b]) - std::atan2(phi.im[a], phi.re[a]);
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    total += d;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace gpegap
