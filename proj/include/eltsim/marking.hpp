#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eltsim/params.hpp"

namespace eltsim {

// Center-of-mass path labels. The path wavefunctions themselves live in
// complexgauss / exotic_closed; here they are formal orthonormal labels.
enum class Path { P1 = 0, P2 = 1, P12 = 2, P21 = 3 };
inline constexpr std::array<Path, 4> kAllPaths{Path::P1, Path::P2, Path::P12,
                                               Path::P21};
inline constexpr std::size_t kPathCount = kAllPaths.size();

enum class Level { Ground, Excited };

/// Photon numbers in cavity A (slit 1) and cavity B (slit 2), each 0 or 1.
struct Cavities {
  int a = 0;
  int b = 0;
  auto operator<=>(const Cavities&) const = default;
};

struct BasisLabel {
  Path path;
  Level level;
  Cavities cavities;
  auto operator<=>(const BasisLabel&) const = default;
};

std::string toString(Path path);
std::string toString(const BasisLabel& label);

struct StateTerm {
  Complex amplitude;
  BasisLabel label;
};

/// Unit-norm superposition over path (x) atomic level (x) cavity photons.
class CompositeState {
 public:
  /// Requires distinct labels and sum |amplitude|^2 = 1 within 1e-12.
  explicit CompositeState(std::vector<StateTerm> terms);

  /// Rescales to unit norm; throws ShapeError if every amplitude is zero.
  static CompositeState normalized(std::vector<StateTerm> terms);

  const std::vector<StateTerm>& terms() const noexcept { return terms_; }
  Complex amplitude(const BasisLabel& label) const;
  double norm2() const;

 private:
  std::vector<StateTerm> terms_;
};

/// Ideal resonant passage through one cavity: an excited atom leaves a
/// photon behind ((e, 0) -> (g, 1)) and a ground-state atom reabsorbs one
/// ((g, 1) -> (e, 0)). Any other combination passes unchanged.
void cavityPassage(Level& level, Cavities& cavities, int slit);

/// Marker label after the atom, starting in |e>|00>, crosses the slit
/// plane at the given slits in order (e.g. {1, 2, 1} for loop 12).
std::pair<Level, Cavities> markTrajectory(std::span<const int> slits);

/// a1|psi1>|g>|10> + a2|psi2>|g>|01> - a12|psi12>|e>|00> - a21|psi21>|e>|00>
/// with a1 = a2 = amp_nonexotic and a12 = a21 = amp_exotic, normalized.
/// Terms with zero weight are omitted.
CompositeState postSlitState(const PhysicsConfig& config);

struct Branch {
  std::string name;
  double probability = 0.0;
  std::optional<CompositeState> collapsed;

  /// Throws UndefinedCollapse for a zero-probability branch.
  const CompositeState& state() const;
};

/// Branches with probability below this are treated as impossible.
inline constexpr double kMinBranchProbability = 1e-14;

/// Bell measurement on the two cavities with
///   |phi+-> = (|10> +- |01>)/sqrt2,  |psi+-> = (|00> +- |11>)/sqrt2.
/// The third branch is the complement Q = 1 - P_phi+ - P_phi-.
struct CavityBellOutcome {
  Branch phi_plus;
  Branch phi_minus;
  Branch q;
};
CavityBellOutcome measureBellCavities(const CompositeState& state);

/// Projective measurement of the atomic level: r = P(g), s = P(e).
struct InternalOutcome {
  Branch ground;
  Branch excited;
};
InternalOutcome measureInternal(const CompositeState& state);

/// Two generic which-way markers S1, S2 with S+ encoded as photon number 1
/// and S- as 0. Bell basis in the marker convention:
///   |psi+-> = (|S+S-> +- |S-S+>)/sqrt2,  |phi+-> = (|S+S+> +- |S-S->)/sqrt2.
/// (The roles of psi and phi are swapped relative to the cavity basis.)
struct TwoDetectorBellOutcome {
  Branch psi_plus;
  Branch psi_minus;
  Branch phi_plus;
  Branch phi_minus;
};
CompositeState twoDetectorState(Complex a1, Complex a2);
TwoDetectorBellOutcome measureTwoDetectorBell(const CompositeState& state);

/// Reduced center-of-mass operator sum_{p,q} w(p,q) |psi_p><psi_q| obtained
/// by tracing out level and cavities.
struct CenterOfMassDensity {
  Eigen::Matrix4cd weights = Eigen::Matrix4cd::Zero();

  Complex weight(Path p, Path q) const {
    return weights(static_cast<int>(p), static_cast<int>(q));
  }
};
CenterOfMassDensity reduceCenterOfMass(const CompositeState& state);

// Single which-way detector S1 at slit 1: a1|C1>|S+> + a2|C2>|S->.
enum class Marker { Plus, Minus };
struct MarkerTerm {
  Complex amplitude;
  Path path;
  Marker marker;
};

struct EraserBranch {
  double probability = 0.0;
  // Unit-normalized coefficients of |C1> and |C2> in this branch.
  std::array<Complex, 2> path_amplitudes{};
};
struct EraserOutcome {
  EraserBranch plus;   // |+> = (|S+> + |S->)/sqrt2: fringes
  EraserBranch minus;  // |-> = (|S+> - |S->)/sqrt2: anti-fringes
};

/// Measures S1 in the {|+>, |->} basis. Throws ShapeError unless the input
/// is exactly {(a1, C1, S+), (a2, C2, S-)} with nonzero total weight.
EraserOutcome eraserBasisSingleDetector(std::span<const MarkerTerm> state);

}  // namespace eltsim
