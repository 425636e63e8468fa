#include "gpegap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gpegap/error.hpp"

namespace gpegap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

std::optional<int> potential_dimension(const PotentialSpec& spec) {
  return std::visit(
      overloaded{
          [](const potential::Harmonic& p) -> std::optional<int> {
            return static_cast<int>(p.gamma.size());
          },
          [](const potential::ShiftedQuadratic& p) -> std::optional<int> {
            if (p.center.empty()) return std::nullopt;
            return static_cast<int>(p.center.size());
          },
          [](const auto&) -> std::optional<int> { return std::nullopt; },
      },
      spec);
}

std::vector<double> eval_potential(const PotentialSpec& spec, const Grid& grid) {
  const int d = grid.dim();
  if (auto pd = potential_dimension(spec)) {
    require(*pd == d, "potential dimension does not match the grid dimension");
  }
  std::vector<double> v(grid.size(), 0.0);
  auto coords = [&](std::size_t idx) {
    const auto ijk = grid.unravel(idx);
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) x[a] = grid.coordinate(a, ijk[a]);
    return x;
  };
  std::visit(
      overloaded{
          [&](const potential::Zero&) {},
          [&](const potential::Harmonic& p) {
            for (std::size_t i = 1; i < p.gamma.size(); ++i) {
              require(p.gamma[i] >= p.gamma[i - 1], "trap frequencies must be nondecreasing");
            }
            for (double g : p.gamma) require(g > 0.0, "trap frequencies must be positive");
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto x = coords(i);
              double s = 0.0;
              for (int a = 0; a < d; ++a) s += p.gamma[a] * p.gamma[a] * x[a] * x[a];
              v[i] = 0.5 * s;
            }
          },
          [&](const potential::HarmonicPlusCosine& p) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto x = coords(i);
              double s = 0.0;
              for (int a = 0; a < d; ++a) {
                s += 0.5 * p.gamma * p.gamma * x[a] * x[a] + p.v0 * std::cos(p.k * x[a]);
              }
              v[i] = s;
            }
          },
          [&](const potential::ShiftedQuadratic& p) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto x = coords(i);
              double s = 0.0;
              for (int a = 0; a < d; ++a) {
                const double c = p.center.empty() ? grid.domain().center(a) : p.center[a];
                s += (x[a] - c) * (x[a] - c);
              }
              v[i] = p.v0 * s;
            }
          },
          [&](const potential::NegativeQuadratic& p) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto x = coords(i);
              v[i] = p.coef * x[0] * x[0];
            }
          },
          [&](const potential::Sine& p) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto x = coords(i);
              v[i] = p.amplitude * std::sin(p.k * (x[0] - p.shift));
            }
          },
          [&](const potential::Tabulated& p) {
            require(p.values.size() == grid.size(),
                    "tabulated potential has " + std::to_string(p.values.size()) +
                        " values, grid has " + std::to_string(grid.size()) + " nodes");
            v = p.values;
          },
      },
      spec);
  for (double x : v) {
    if (!std::isfinite(x)) fail(ErrorCode::NumericalFault, "potential is not finite at a node");
  }
  return v;
}

potential::Tabulated load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open potential file '" + path + "'");
  potential::Tabulated t;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      t.values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      fail(ErrorCode::Io, "malformed value '" + token + "' in '" + path + "'");
    }
  }
  return t;
}

std::optional<double> convexity_modulus(const PotentialSpec& spec) {
  return std::visit(
      overloaded{
          [](const potential::Zero&) -> std::optional<double> { return 0.0; },
          [](const potential::Harmonic& p) -> std::optional<double> {
            return *std::min_element(p.gamma.begin(), p.gamma.end());
          },
          [](const potential::HarmonicPlusCosine& p) -> std::optional<double> {
            const double m = p.gamma * p.gamma - std::abs(p.v0) * p.k * p.k;
            if (m < 0.0) return std::nullopt;
            return std::sqrt(m);
          },
          [](const potential::ShiftedQuadratic& p) -> std::optional<double> {
            if (p.v0 < 0.0) return std::nullopt;
            return std::sqrt(2.0 * p.v0);
          },
          [](const potential::NegativeQuadratic& p) -> std::optional<double> {
            if (p.coef < 0.0) return std::nullopt;
            return std::sqrt(2.0 * p.coef);
          },
          [](const potential::Sine& p) -> std::optional<double> {
            if (p.amplitude == 0.0) return 0.0;
            return std::nullopt;
          },
          [](const potential::Tabulated&) -> std::optional<double> { return std::nullopt; },
      },
      spec);
}

std::optional<bool> is_convex(const PotentialSpec& spec) {
  if (std::holds_alternative<potential::Tabulated>(spec)) return std::nullopt;
  return convexity_modulus(spec).has_value();
}

double mirror_asymmetry(const std::vector<double>& v, const Grid& grid) {
  double scale = 0.0;
  double worst = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    auto ijk = grid.unravel(idx);
    ijk[0] = grid.mirror(0, ijk[0]);
    worst = std::max(worst, std::abs(v[idx] - v[grid.index(ijk)]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

std::string describe(const PotentialSpec& spec) {
  return std::visit(
      overloaded{
          [](const potential::Zero&) -> std::string { return "zero"; },
          [](const potential::Harmonic& p) -> std::string {
            std::string s = "harmonic(gamma=";
            for (std::size_t i = 0; i < p.gamma.size(); ++i) {
              if (i) s += ",";
              s += fmt_num(p.gamma[i]);
            }
            return s + ")";
          },
          [](const potential::HarmonicPlusCosine& p) -> std::string {
            return "harmonic-cosine(gamma=" + fmt_num(p.gamma) + ",v0=" + fmt_num(p.v0) +
                   ",k=" + fmt_num(p.k) + ")";
          },
          [](const potential::ShiftedQuadratic& p) -> std::string {
            return "shifted-quadratic(v0=" + fmt_num(p.v0) + ")";
          },
          [](const potential::NegativeQuadratic& p) -> std::string {
            return "quadratic(coef=" + fmt_num(p.coef) + ")";
          },
          [](const potential::Sine& p) -> std::string {
            return "sine(amplitude=" + fmt_num(p.amplitude) + ",k=" + fmt_num(p.k) +
                   ",shift=" + fmt_num(p.shift) + ")";
          },
          [](const potential::Tabulated& p) -> std::string {
            return "tabulated(" + std::to_string(p.values.size()) + ")";
          },
      },
      spec);
}

}  // namespace gpegap
