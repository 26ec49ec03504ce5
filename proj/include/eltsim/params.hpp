#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eltsim {

using Complex = std::complex<double>;

inline constexpr double kHbarCodata = 1.054571817e-34;  // J s

/// Experimental configuration of the marked double-slit interferometer.
/// All quantities are SI. Slit 1 sits at x = +d/2, slit 2 at x = -d/2.
struct PhysicsConfig {
  double mass = 0.0;      // kg
  double hbar = kHbarCodata;
  double sigma0 = 0.0;    // m, transverse width of the source packet
  double beta = 0.0;      // m, Gaussian slit half-width
  double d = 0.0;         // m, interslit distance
  double t = 0.0;         // s, source -> slits
  double tau = 0.0;       // s, slits -> screen
  double eta = 0.0;       // s, auxiliary inter-slit time
  double omega_ge = 51.099e9;  // rad/s, metadata only
  double excited_lifetime = 30e-3;  // s
  // Common weight of the two direct paths (a1 = a2) and of the two loops
  // (a12 = a21). Normalized when the post-slit state is built.
  Complex amp_nonexotic{1.0, 0.0};
  Complex amp_exotic{1.0, 0.0};

  /// Throws ConfigError naming the first field that violates an invariant.
  void validate() const;

  /// Parameter set used for Rubidium Rydberg atoms.
  static PhysicsConfig rubidium();
};

struct DerivedQuantities {
  double delta_p = 0.0;  // kg m/s
  double delta_v = 0.0;  // m/s
  double epsilon = 0.0;  // s, time to cross from one slit to the other
};

/// Momentum spread of the source packet and the inter-slit time
/// epsilon = d / (delta_p / m).
DerivedQuantities derive(const PhysicsConfig& config);

/// Non-fatal diagnostics about the regime the closed forms assume.
std::vector<std::string> validateRegime(const PhysicsConfig& config);

/// Fraction of the excited-state lifetime above which the flight time
/// t + 2 epsilon + tau triggers a warning.
inline constexpr double kLifetimeWarningFraction = 0.01;

// key=value configuration files. Blank lines and '#' comments are allowed;
// unknown or duplicate keys are errors.
PhysicsConfig parseConfig(std::istream& in);
PhysicsConfig parseConfigString(std::string_view text);
PhysicsConfig loadConfig(const std::filesystem::path& path);
void writeConfig(std::ostream& out, const PhysicsConfig& config);

/// Returns a copy with one of {sigma0, beta, d, t, tau} replaced.
PhysicsConfig withParameter(PhysicsConfig config, std::string_view name,
                            double value);

}  // namespace eltsim
