#include "gpegap/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gpegap/error.hpp"

namespace gpegap {

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::Dirichlet: return "dirichlet";
    case Boundary::Neumann: return "neumann";
    case Boundary::Periodic: return "periodic";
    case Boundary::TruncatedWholeSpace: return "whole-space";
  }
  return "unknown";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "dirichlet" || name == "box") return Boundary::Dirichlet;
  if (name == "neumann") return Boundary::Neumann;
  if (name == "periodic") return Boundary::Periodic;
  if (name == "whole-space" || name == "wholespace" || name == "truncated") {
    return Boundary::TruncatedWholeSpace;
  }
  fail(ErrorCode::InvalidArgument, "unknown boundary condition '" + std::string(name) + "'");
}

BoxDomain BoxDomain::from_lengths(std::span<const double> lengths) {
  require(!lengths.empty() && lengths.size() <= kMaxDim, "dimension must be 1, 2 or 3");
  BoxDomain d;
  d.dim = static_cast<int>(lengths.size());
  for (int j = 0; j < d.dim; ++j) d.lengths[j] = lengths[j];
  d.validate();
  return d;
}

BoxDomain BoxDomain::centered(std::span<const double> half_lengths) {
  require(!half_lengths.empty() && half_lengths.size() <= kMaxDim,
          "dimension must be 1, 2 or 3");
  BoxDomain d;
  d.dim = static_cast<int>(half_lengths.size());
  for (int j = 0; j < d.dim; ++j) {
    d.lengths[j] = 2.0 * half_lengths[j];
    d.origin[j] = -half_lengths[j];
  }
  d.validate();
  return d;
}

void BoxDomain::validate() const {
  require(dim >= 1 && dim <= kMaxDim, "dimension must be 1, 2 or 3");
  for (int j = 0; j < dim; ++j) {
    require(std::isfinite(lengths[j]) && lengths[j] > 0.0, "domain lengths must be positive");
    require(std::isfinite(origin[j]), "domain origin must be finite");
  }
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (int j = 0; j < dim; ++j) s += lengths[j] * lengths[j];
  return std::sqrt(s);
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (int j = 0; j < dim; ++j) v *= lengths[j];
  return v;
}

bool BoxDomain::sorted_descending() const {
  for (int j = 1; j < dim; ++j) {
    if (lengths[j] > lengths[j - 1]) return false;
  }
  return true;
}

double diameter(const BoxDomain& domain) {
  domain.validate();
  return domain.diameter();
}

bool nearly_equal(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

Grid::Grid(const BoxDomain& domain, std::span<const int> counts, Boundary bc)
    : domain_(domain), bc_(bc) {
  domain_.validate();
  const int d = domain_.dim;
  require(static_cast<int>(counts.size()) == d, "grid counts must match the domain dimension");
  for (int a = 0; a < d; ++a) {
    require(counts[a] >= 8, "at least 8 nodes per dimension are required");
    n_[a] = counts[a];
    const double L = domain_.lengths[a];
    switch (bc_) {
      case Boundary::Dirichlet:
      case Boundary::TruncatedWholeSpace:
        h_[a] = L / (n_[a] + 1);
        first_[a] = domain_.origin[a] + h_[a];
        break;
      case Boundary::Periodic:
        h_[a] = L / n_[a];
        first_[a] = domain_.origin[a];
        break;
      case Boundary::Neumann:
        h_[a] = L / (n_[a] - 1);
        first_[a] = domain_.origin[a];
        break;
    }
    axis_weights_[a].assign(n_[a], h_[a]);
    if (bc_ == Boundary::Neumann) {
      axis_weights_[a].front() = 0.5 * h_[a];
      axis_weights_[a].back() = 0.5 * h_[a];
    }
    neg_lap_diag_ += 2.0 / (h_[a] * h_[a]);
  }
  size_ = 1;
  for (int a = d - 1; a >= 0; --a) {
    stride_[a] = size_;
    size_ *= static_cast<std::size_t>(n_[a]);
  }
  weights_.assign(size_, 1.0);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    const auto ijk = unravel(idx);
    double w = 1.0;
    for (int a = 0; a < d; ++a) w *= axis_weights_[a][ijk[a]];
    weights_[idx] = w;
  }
}

std::size_t Grid::index(std::array<int, kMaxDim> ijk) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim(); ++a) idx += static_cast<std::size_t>(ijk[a]) * stride_[a];
  return idx;
}

std::array<int, kMaxDim> Grid::unravel(std::size_t idx) const {
  std::array<int, kMaxDim> ijk{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    ijk[a] = static_cast<int>(idx / stride_[a]);
    idx %= stride_[a];
  }
  return ijk;
}

int Grid::mirror(int axis, int i) const {
  if (bc_ == Boundary::Periodic) return (n_[axis] - i) % n_[axis];
  return n_[axis] - 1 - i;
}

double Grid::integrate(std::span<const double> f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size_; ++i) s += weights_[i] * f[i];
  return s;
}

double Grid::measure() const {
  double m = 1.0;
  for (int a = 0; a < dim(); ++a) {
    double s = 0.0;
    for (double w : axis_weights_[a]) s += w;
    // Two boundary nodes at weight h/2 each are implicit on Dirichlet grids.
    if (zero_on_boundary()) s += h_[a];
    m *= s;
  }
  return m;
}

void Grid::apply_laplacian(std::span<const double> in, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int a = 0; a < dim(); ++a) {
    const std::size_t s = stride_[a];
    const int n = n_[a];
    const std::size_t outer = size_ / (s * n);
    const double c = 1.0 / (h_[a] * h_[a]);
    if (s == 1) {
      for (std::size_t o = 0; o < outer; ++o) {
        const double* f = in.data() + o * n;
        double* dst = out.data() + o * n;
        for (int i = 1; i < n - 1; ++i) dst[i] += c * (f[i - 1] + f[i + 1] - 2.0 * f[i]);
        double lo = 0.0, hi = 0.0;
        if (bc_ == Boundary::Periodic) {
          lo = f[n - 1];
          hi = f[0];
        } else if (bc_ == Boundary::Neumann) {
          lo = f[1];
          hi = f[n - 2];
        }
        dst[0] += c * (lo + f[1] - 2.0 * f[0]);
        dst[n - 1] += c * (f[n - 2] + hi - 2.0 * f[n - 1]);
      }
      continue;
    }
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = o * s * n;
      for (int i = 0; i < n; ++i) {
        const std::size_t row = base + static_cast<std::size_t>(i) * s;
        const double* mid = in.data() + row;
        double* dst = out.data() + row;
        const double* lo = nullptr;
        const double* hi = nullptr;
        if (i > 0) {
          lo = mid - s;
        } else if (bc_ == Boundary::Periodic) {
          lo = mid + static_cast<std::size_t>(n - 1) * s;
        } else if (bc_ == Boundary::Neumann) {
          lo = mid + s;
        }
        if (i < n - 1) {
          hi = mid + s;
        } else if (bc_ == Boundary::Periodic) {
          hi = mid - static_cast<std::size_t>(n - 1) * s;
        } else if (bc_ == Boundary::Neumann) {
          hi = mid - s;
        }
        if (lo && hi) {
          for (std::size_t k = 0; k < s; ++k) dst[k] += c * (lo[k] + hi[k] - 2.0 * mid[k]);
        } else if (lo) {
          for (std::size_t k = 0; k < s; ++k) dst[k] += c * (lo[k] - 2.0 * mid[k]);
        } else {
          for (std::size_t k = 0; k < s; ++k) dst[k] += c * (hi[k] - 2.0 * mid[k]);
        }
      }
    }
  }
}

Grid make_grid(const BoxDomain& domain, std::span<const int> counts, Boundary bc) {
  return Grid(domain, counts, bc);
}

}  // namespace gpegap
