#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "eltsim/params.hpp"

namespace eltsim {

/// Complex coefficients of the looped-trajectory Gaussian integrals.
///
/// z0..z3 are the quadratic coefficients met by the four successive
/// integrations (source, first slit crossing, loop midpoint, last slit
/// crossing). z4..z10 are products of z1, z2, z3:
///
///   z4 = z1^2 z2     z5 = z1^2 z2^2 z3   z6 = z1 z2 z3    z7 = z1 z2
///   z8 = z2^2 z3     z9 = z1 z2^2 z3     z10 = z2 z3
///
/// zR and zI are the composite pair entering A_et and the Gouy phase; note
/// zR = Im(z0 z1 z2 z3) and zI = Re(z0 z1 z2 z3).
struct ZTable {
  std::array<Complex, 11> z{};
  double zR = 0.0;
  double zI = 0.0;

  const Complex& operator[](std::size_t k) const { return z[k]; }
};

/// z0..z3 from their recurrences, z4..z10 by complex multiplication.
/// Throws DegenerateError on a vanishing |z_k|.
ZTable buildZTable(const PhysicsConfig& config,
                   const DerivedQuantities& derived);

/// Real/imaginary expansions of z4..z10 written out component by component,
/// evaluated from z1, z2, z3 of `table`.
Complex expandedProduct(std::size_t k, const ZTable& table);

/// One row of the z-table self-consistency check.
struct ZCheck {
  std::string term;  // "z1" ... "z10", "zRI"
  double deviation;  // relative
};

/// Recurrences z1..z3 recomputed from the stored predecessors, expansions
/// z4..z10 against the stored products, and (zR, zI) against
/// z0 z1 z2 z3.
std::vector<ZCheck> checkZTable(const ZTable& table,
                                const PhysicsConfig& config,
                                const DerivedQuantities& derived);

/// Multiplies one named entry ("z0".."z10", "zR", "zI") by (1 + factor).
/// Used for fault-injection runs of the verifier.
ZTable corruptZTable(ZTable table, std::string_view term, double factor);

/// Which transcription of the interference coefficients to use.
/// `Printed` keeps the typeset formulas literally, term by term, including
/// their misprints; `Derived` is the reading that reproduces the propagator
/// chain. The two differ only in C2[3], C3[2], theta[2], theta[5],
/// theta[8] and theta[10].
enum class Reading { Derived, Printed };

struct CoefficientTerm {
  std::string name;  // e.g. "C3et[4]"
  double value;
};

/// Every additive term of C2et, C3et, gamma_et and theta_et, in printed
/// order.
std::vector<CoefficientTerm> coefficientTerms(const ZTable& table,
                                              const PhysicsConfig& config,
                                              const DerivedQuantities& derived,
                                              Reading reading);

struct EltCoefficients {
  double A = 0.0;      // amplitude, m^-1/2
  double C1 = 0.0;     // m^-2, envelope curvature
  double C2 = 0.0;     // m^-1, envelope shift
  double C3 = 0.0;     // envelope offset
  double alpha = 0.0;  // m^-2, quadratic phase
  double gamma = 0.0;  // m^-1, linear phase
  double theta = 0.0;  // displacement axial phase
  double mu = 0.0;     // Gouy phase
  ZTable ztable;
};

EltCoefficients buildCoefficients(const ZTable& table,
                                  const PhysicsConfig& config,
                                  const DerivedQuantities& derived,
                                  Reading reading = Reading::Derived);

/// Convenience: derive, build the z-table and the coefficients.
EltCoefficients buildCoefficients(const PhysicsConfig& config,
                                  Reading reading = Reading::Derived);

/// Gouy phase 1/2 atan2(zI, zR), taken on the branch (-3pi/4, pi/4].
///
/// Halving leaves a sign ambiguity. This branch is the one for which
/// A_et exp(i mu_et) equals the product of the principal square roots of
/// the three propagator prefactors and the four Gaussian integrals. It has
/// no jumps, since each z_k lies in the open fourth quadrant.
double gouyPhase(const ZTable& table);

/// A exp(-C1 x^2 + C2 x + C3) exp(i(alpha x^2 + gamma x + theta + mu)).
Complex psi12(double x, const EltCoefficients& coeffs);

/// psi12 with C2 -> -C2 and gamma -> -gamma (d -> -d).
Complex psi21(double x, const EltCoefficients& coeffs);

}  // namespace eltsim
