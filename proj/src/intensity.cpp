#include "eltsim/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eltsim/complexgauss.hpp"
#include "eltsim/errors.hpp"

namespace eltsim {

namespace {

constexpr double kNegativeTolerance = 1e-12;

void checkGrid(std::span<const double> grid) {
  if (grid.empty()) throw ShapeError("intensity grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ShapeError("intensity grid must be strictly increasing");
    }
  }
}

// Clamps round-off negatives to zero. A clearly negative density means the
// weights were not positive semidefinite, which is a bug upstream.
void clampNegatives(IntensityProfile& profile) {
  const double peak =
      *std::max_element(profile.values.begin(), profile.values.end());
  const double floor = -kNegativeTolerance * std::max(peak, 0.0);
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    double& v = profile.values[i];
    if (v >= 0.0) continue;
    if (v < floor) {
      std::ostringstream msg;
      msg << "negative intensity " << v << " at x = " << profile.grid[i];
      throw EvaluationError(msg.str());
    }
    v = 0.0;
    ++profile.clamped;
  }
}

}  // namespace

std::string toString(Normalization mode) {
  switch (mode) {
    case Normalization::Raw:
      return "raw";
    case Normalization::Peak:
      return "peak";
    case Normalization::UnitArea:
      return "unit-area";
  }
  return "?";
}

std::vector<double> makeGrid(double min, double max, std::size_t points) {
  if (points == 0) throw ShapeError("grid needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw ShapeError("grid bounds must be finite");
  }
  if (points == 1) return {min};
  if (!(max > min)) {
    throw ShapeError("grid maximum must exceed minimum");
  }
  std::vector<double> grid(points);
  const double step = (max - min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = min + step * static_cast<double>(i);
  }
  grid.back() = max;
  return grid;
}

double fringeSpacing(const EltCoefficients& coeffs) {
  if (coeffs.gamma == 0.0) {
    throw DegenerateError("gamma_et is zero; no exotic fringes");
  }
  return std::numbers::pi / std::abs(coeffs.gamma);
}

std::vector<double> defaultGrid(const EltCoefficients& coeffs) {
  const double half = kDefaultGridFringes * fringeSpacing(coeffs);
  return makeGrid(-half, half, kDefaultGridPoints);
}

void normalize(IntensityProfile& profile, Normalization mode) {
  profile.normalization = mode;
  auto& v = profile.values;
  double scale = 1.0;
  switch (mode) {
    case Normalization::Raw:
      return;
    case Normalization::Peak:
      scale = *std::max_element(v.begin(), v.end());
      break;
    case Normalization::UnitArea: {
      if (v.size() < 2) {
        throw ShapeError("unit-area normalization needs at least two points");
      }
      scale = 0.0;
      for (std::size_t i = 1; i < v.size(); ++i) {
        scale += 0.5 * (v[i] + v[i - 1]) *
                 (profile.grid[i] - profile.grid[i - 1]);
      }
      break;
    }
  }
  if (!(scale > 0.0)) {
    throw DegenerateError("cannot normalize an identically zero profile");
  }
  for (double& x : v) x /= scale;
}

IntensityProfile eltIntensity(std::span<const double> grid,
                              const EltCoefficients& coeffs,
                              Normalization normalization) {
  checkGrid(grid);
  IntensityProfile out;
  out.branch = "elt";
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  out.visibility.reserve(grid.size());
  out.phase.reserve(grid.size());
  for (double x : grid) {
    const Complex u = psi12(x, coeffs);
    const Complex v = psi21(x, coeffs);
    const Complex cross = u * std::conj(v);
    const double direct = std::norm(u) + std::norm(v);
    out.values.push_back(0.5 * (direct + 2.0 * cross.real()));
    out.visibility.push_back(direct > 0.0 ? 2.0 * std::abs(cross) / direct
                                          : 0.0);
    out.phase.push_back(std::arg(cross));
  }
  clampNegatives(out);
  normalize(out, normalization);
  return out;
}

PathAmplitudes PathAmplitudes::fromConfig(const PhysicsConfig& config) {
  const GaussianForm one = chainNonExotic(Slit::One, config);
  const GaussianForm two = chainNonExotic(Slit::Two, config);
  const EltCoefficients coeffs = buildCoefficients(config);
  PathAmplitudes paths;
  paths.eval[static_cast<int>(Path::P1)] = [one](double x) { return one(x); };
  paths.eval[static_cast<int>(Path::P2)] = [two](double x) { return two(x); };
  paths.eval[static_cast<int>(Path::P12)] = [coeffs](double x) {
    return psi12(x, coeffs);
  };
  paths.eval[static_cast<int>(Path::P21)] = [coeffs](double x) {
    return psi21(x, coeffs);
  };
  return paths;
}

IntensityProfile branchIntensity(const CenterOfMassDensity& rho,
                                 std::span<const double> grid,
                                 const PathAmplitudes& paths,
                                 Normalization normalization,
                                 std::string branch) {
  checkGrid(grid);
  std::array<bool, kPathCount> used{};
  for (std::size_t p = 0; p < kPathCount; ++p) {
    for (std::size_t q = 0; q < kPathCount; ++q) {
      if (rho.weights(p, q) != Complex{}) used[p] = used[q] = true;
    }
  }
  for (std::size_t p = 0; p < kPathCount; ++p) {
    if (used[p] && !paths.eval[p]) {
      throw EvaluationError("no wavefunction available for path " +
                            toString(kAllPaths[p]));
    }
  }

  IntensityProfile out;
  out.branch = std::move(branch);
  out.grid.assign(grid.begin(), grid.end());
  std::array<Complex, kPathCount> psi{};
  for (double x : grid) {
    for (std::size_t p = 0; p < kPathCount; ++p) {
      psi[p] = used[p] ? paths.eval[p](x) : Complex{};
    }
    double diagonal = 0.0;
    double crossSum = 0.0;
    double crossMag = 0.0;
    double strongest = 0.0;
    double phase = 0.0;
    for (std::size_t p = 0; p < kPathCount; ++p) {
      diagonal += rho.weights(p, p).real() * std::norm(psi[p]);
      for (std::size_t q = p + 1; q < kPathCount; ++q) {
        const Complex term = rho.weights(p, q) * psi[p] * std::conj(psi[q]);
        crossSum += 2.0 * term.real();
        crossMag += 2.0 * std::abs(term);
        if (std::abs(term) > strongest) {
          strongest = std::abs(term);
          phase = std::arg(term);
        }
      }
    }
    out.values.push_back(diagonal + crossSum);
    out.visibility.push_back(diagonal > 0.0 ? crossMag / diagonal : 0.0);
    out.phase.push_back(phase);
  }
  clampNegatives(out);
  normalize(out, normalization);
  return out;
}

IntensityProfile branchIntensity(const CompositeState& state,
                                 std::span<const double> grid,
                                 const PathAmplitudes& paths,
                                 Normalization normalization,
                                 std::string branch) {
  return branchIntensity(reduceCenterOfMass(state), grid, paths,
                         normalization, std::move(branch));
}

double fringesAntiFringes(Complex a1, Complex a2, Complex psi1, Complex psi2,
                          int sign) {
  const double total = std::norm(a1) + std::norm(a2);
  if (!(total > 0.0)) {
    throw DegenerateError("both path amplitudes are zero");
  }
  const double I1 = std::norm(a1 * psi1);
  const double I2 = std::norm(a2 * psi2);
  const double cross = 2.0 * (a1 * std::conj(a2) * psi1 * std::conj(psi2)).real();
  return (I1 + I2 + (sign >= 0 ? cross : -cross)) / total;
}

DualityPoint visibilityPredictability(double I1, double I2,
                                      double crossMagnitude) {
  const double total = I1 + I2;
  if (!(total > 0.0)) {
    throw DegenerateError(
        "visibility and predictability are undefined where I1 + I2 = 0");
  }
  return {2.0 * crossMagnitude / total, std::abs(I1 - I2) / total};
}

double bornDoubleSlit(Complex psiA, Complex psiB) {
  return std::norm(psiA) + std::norm(psiB) +
         2.0 * (std::conj(psiA) * psiB).real();
}

double aggregateVisibility(const IntensityProfile& profile,
                           double fringeSpacing) {
  const double reach = 1.5 * fringeSpacing;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    if (std::abs(profile.grid[i]) > reach) continue;
    const double v = profile.values[i];
    if (!any) {
      lo = hi = v;
      any = true;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!any || !(hi + lo > 0.0)) {
    throw DegenerateError("no intensity within the central three fringes");
  }
  return (hi - lo) / (hi + lo);
}

std::vector<std::size_t> localMaxima(std::span<const double> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace eltsim
