#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eltsim/exotic_closed.hpp"
#include "eltsim/marking.hpp"
#include "eltsim/params.hpp"

namespace eltsim {

enum class Normalization { Raw, Peak, UnitArea };

std::string toString(Normalization mode);

/// Screen intensity sampled on a strictly increasing grid.
struct IntensityProfile {
  std::vector<double> grid;        // m
  std::vector<double> values;      // m^-1 in Raw mode
  std::vector<double> visibility;  // pointwise, in [0, 1]
  std::vector<double> phase;       // rad, phase of the dominant cross term
  std::string branch;
  Normalization normalization = Normalization::Raw;
  std::size_t clamped = 0;  // negative round-off values set to zero
};

/// `points` equally spaced positions in [min, max]. points == 1 gives {min}.
std::vector<double> makeGrid(double min, double max, std::size_t points);

/// pi / |gamma_et|, the spacing of exotic-only fringes near x = 0.
double fringeSpacing(const EltCoefficients& coeffs);

inline constexpr std::size_t kDefaultGridPoints = 2001;
inline constexpr double kDefaultGridFringes = 5.0;

/// 2001 points over +-5 fringe spacings.
std::vector<double> defaultGrid(const EltCoefficients& coeffs);

/// Exotic-only intensity 1/2 |psi12 + psi21|^2.
///
/// Raw mode uses the unit-norm excited branch with a12 = a21, for which the
/// normalization N_et^2 equals 1/2.
IntensityProfile eltIntensity(std::span<const double> grid,
                              const EltCoefficients& coeffs,
                              Normalization normalization);

/// Pointwise evaluators for the four path wavefunctions. An empty slot
/// means the path is unavailable.
struct PathAmplitudes {
  std::array<std::function<Complex(double)>, kPathCount> eval;

  /// psi1, psi2 from the propagator chains and psi12, psi21 from the closed
  /// forms.
  static PathAmplitudes fromConfig(const PhysicsConfig& config);
};

/// <x|rho|x> = sum_{p,q} w(p,q) psi_p(x) conj(psi_q(x)). Throws
/// EvaluationError if a path with nonzero weight has no evaluator.
IntensityProfile branchIntensity(const CenterOfMassDensity& rho,
                                 std::span<const double> grid,
                                 const PathAmplitudes& paths,
                                 Normalization normalization,
                                 std::string branch);
IntensityProfile branchIntensity(const CompositeState& state,
                                 std::span<const double> grid,
                                 const PathAmplitudes& paths,
                                 Normalization normalization,
                                 std::string branch);

/// Eraser-basis intensity N^2 [I1 + I2 +- 2 Re(a1 conj(a2) psi1 conj(psi2))]
/// with I_i = |a_i psi_i|^2 and N^2 = 1 / (|a1|^2 + |a2|^2). sign is +1
/// (fringes) or -1 (anti-fringes).
double fringesAntiFringes(Complex a1, Complex a2, Complex psi1, Complex psi2,
                          int sign);

struct DualityPoint {
  double visibility = 0.0;
  double predictability = 0.0;
};

/// V = 2 crossMagnitude / (I1 + I2), P = |I1 - I2| / (I1 + I2).
/// Throws DegenerateError when I1 + I2 == 0.
DualityPoint visibilityPredictability(double I1, double I2,
                                      double crossMagnitude);

/// |psiA|^2 + |psiB|^2 + 2 Re(conj(psiA) psiB).
double bornDoubleSlit(Complex psiA, Complex psiB);

/// (Imax - Imin) / (Imax + Imin) over |x| <= 1.5 fringeSpacing, i.e. the
/// central three fringes. This is a summary metric of this tool, not a
/// pointwise visibility.
double aggregateVisibility(const IntensityProfile& profile,
                           double fringeSpacing);

/// Indices of interior local maxima (first index of a flat top).
std::vector<std::size_t> localMaxima(std::span<const double> values);

/// Rescales `profile.values` in place to the requested mode.
void normalize(IntensityProfile& profile, Normalization mode);

}  // namespace eltsim
