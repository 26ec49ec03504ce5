#pragma once

#include "eltsim/params.hpp"

namespace eltsim {

/// prefactor * exp(-a x^2 + b x + c) with complex a [m^-2], b [m^-1], c.
///
/// Forms are closed under free propagation and Gaussian slit transmission,
/// so every stage of a propagator chain is one of these. Re(a) > 0 keeps
/// the form normalizable and is checked on construction.
class GaussianForm {
 public:
  GaussianForm(Complex a, Complex b, Complex c, Complex prefactor);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex prefactor() const noexcept { return prefactor_; }

  /// Throws EvaluationError if the real part of the exponent would
  /// overflow a double.
  Complex operator()(double x) const;

  /// Returns the form with b -> -b, i.e. the mirror image x -> -x.
  GaussianForm mirrored() const;

  /// Integral of |psi|^2 over the real line, in closed form.
  double norm2() const;

  /// Standard deviation of |psi|^2 in x.
  double width() const;

 private:
  Complex a_, b_, c_, prefactor_;
};

/// Normalized source packet (sigma0 sqrt(pi))^(-1/2) exp(-x^2 / 2 sigma0^2).
GaussianForm initialPacket(const PhysicsConfig& config);

/// Multiplies by F(x - center) = exp(-(x - center)^2 / 2 beta^2).
GaussianForm applySlit(const GaussianForm& form, double center, double beta);

/// Free evolution over `duration` with the propagator
/// sqrt(m / 2 pi i hbar dt) exp(i m (x - y)^2 / 2 hbar dt).
///
/// Each Gaussian integral contributes the principal root sqrt(pi / A),
/// Re(A) > 0; the propagator prefactor uses the principal root as well.
GaussianForm propagate(const GaussianForm& form, double duration,
                       const PhysicsConfig& config);

/// Convolution with exp(i g (x - y)^2) and no propagator prefactor;
/// g = m / (2 hbar dt) for a free step of length dt.
GaussianForm convolveChirp(const GaussianForm& form, double g);

/// The two-segment looped kernel slit 1 -> slit 2 -> slit 1:
///   sqrt(m / 4 pi i hbar (eps + eta))
///     * exp(i m [(x2 - x1)^2 + (x3 - x2)^2] / 4 hbar (eps + eta)),
/// with F(x2 - interiorSlitCenter) applied between the two integrations.
/// The single square-root prefactor is applied once for both segments.
GaussianForm loopedKernelPropagate(const GaussianForm& form,
                                   double interiorSlitCenter,
                                   const PhysicsConfig& config);

enum class Slit { One, Two };
enum class Loop { L12, L21 };

/// Slit 1 is centered at +d/2, slit 2 at -d/2.
double slitCenter(Slit slit, const PhysicsConfig& config);

/// psi0 -> propagate(t) -> F at the chosen slit -> propagate(tau).
GaussianForm chainNonExotic(Slit which, const PhysicsConfig& config);

/// psi0 -> propagate(t + eta) -> F(x1 - d/2) -> looped kernel with
/// F(x2 + d/2) -> F(x3 - d/2) -> propagate(tau). Loop 21 is the same chain
/// with d -> -d.
GaussianForm chainExotic(Loop loop, const PhysicsConfig& config);

}  // namespace eltsim
