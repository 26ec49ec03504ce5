#include "eltsim/marking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "eltsim/errors.hpp"

namespace eltsim {

namespace {

constexpr double kNormTolerance = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Cavity Fock basis order: |00>, |01>, |10>, |11>.
using CavityVector = std::array<Complex, 4>;

int cavityIndex(const Cavities& c) { return 2 * c.a + c.b; }
Cavities cavityFromIndex(int i) { return {i / 2, i % 2}; }

CavityVector bellVector(int first, int second, double sign) {
  CavityVector v{};
  v[first] = kInvSqrt2;
  v[second] = sign * kInvSqrt2;
  return v;
}

// Projects the cavity factor of `state` onto span(vectors), which must be
// orthonormal.
std::vector<StateTerm> projectCavities(const CompositeState& state,
                                       std::span<const CavityVector> vectors) {
  // Group amplitudes by (path, level).
  std::map<std::pair<Path, Level>, CavityVector> groups;
  for (const auto& term : state.terms()) {
    groups[{term.label.path, term.label.level}]
          [cavityIndex(term.label.cavities)] += term.amplitude;
  }
  std::vector<StateTerm> out;
  for (const auto& [key, amplitudes] : groups) {
    CavityVector projected{};
    for (const auto& v : vectors) {
      Complex overlap{};
      for (int j = 0; j < 4; ++j) overlap += std::conj(v[j]) * amplitudes[j];
      for (int j = 0; j < 4; ++j) projected[j] += v[j] * overlap;
    }
    for (int j = 0; j < 4; ++j) {
      if (projected[j] != Complex{}) {
        out.push_back({projected[j], {key.first, key.second,
                                      cavityFromIndex(j)}});
      }
    }
  }
  return out;
}

Branch makeBranch(std::string name, std::vector<StateTerm> projected) {
  Branch branch;
  branch.name = std::move(name);
  double p = 0.0;
  for (const auto& term : projected) p += std::norm(term.amplitude);
  branch.probability = p;
  if (p > kMinBranchProbability) {
    const double scale = 1.0 / std::sqrt(p);
    for (auto& term : projected) term.amplitude *= scale;
    branch.collapsed = CompositeState(std::move(projected));
  }
  return branch;
}

Branch projectOnto(const CompositeState& state, std::string name,
                   std::initializer_list<CavityVector> vectors) {
  const std::vector<CavityVector> basis(vectors);
  return makeBranch(std::move(name), projectCavities(state, basis));
}

}  // namespace

std::string toString(Path path) {
  switch (path) {
    case Path::P1:
      return "1";
    case Path::P2:
      return "2";
    case Path::P12:
      return "12";
    case Path::P21:
      return "21";
  }
  return "?";
}

std::string toString(const BasisLabel& label) {
  std::ostringstream out;
  out << "|psi" << toString(label.path) << ">|"
      << (label.level == Level::Ground ? 'g' : 'e') << ">|"
      << label.cavities.a << label.cavities.b << '>';
  return out.str();
}

CompositeState::CompositeState(std::vector<StateTerm> terms)
    : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      if (terms_[i].label == terms_[j].label) {
        throw ShapeError("composite state has duplicate label " +
                         toString(terms_[i].label));
      }
    }
  }
  const double n = norm2();
  if (std::abs(n - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "composite state is not unit norm (norm^2 = " << n << ")";
    throw ShapeError(msg.str());
  }
}

CompositeState CompositeState::normalized(std::vector<StateTerm> terms) {
  double n = 0.0;
  for (const auto& term : terms) n += std::norm(term.amplitude);
  if (!(n > 0.0)) {
    throw ShapeError("cannot normalize a state with all-zero amplitudes");
  }
  std::erase_if(terms, [](const StateTerm& t) {
    return t.amplitude == Complex{};
  });
  const double scale = 1.0 / std::sqrt(n);
  for (auto& term : terms) term.amplitude *= scale;
  return CompositeState(std::move(terms));
}

Complex CompositeState::amplitude(const BasisLabel& label) const {
  for (const auto& term : terms_) {
    if (term.label == label) return term.amplitude;
  }
  return {};
}

double CompositeState::norm2() const {
  double n = 0.0;
  for (const auto& term : terms_) n += std::norm(term.amplitude);
  return n;
}

void cavityPassage(Level& level, Cavities& cavities, int slit) {
  int& photons = slit == 1 ? cavities.a : cavities.b;
  if (level == Level::Excited && photons == 0) {
    level = Level::Ground;
    photons = 1;
  } else if (level == Level::Ground && photons == 1) {
    level = Level::Excited;
    photons = 0;
  }
}

std::pair<Level, Cavities> markTrajectory(std::span<const int> slits) {
  Level level = Level::Excited;
  Cavities cavities{};
  for (int slit : slits) cavityPassage(level, cavities, slit);
  return {level, cavities};
}

CompositeState postSlitState(const PhysicsConfig& config) {
  const Complex direct = config.amp_nonexotic;
  const Complex loop = config.amp_exotic;
  if (direct == Complex{} && loop == Complex{}) {
    throw ConfigError("amp_exotic_re",
                      "path weights are all zero; no state to prepare");
  }
  struct Trajectory {
    Path path;
    std::vector<int> slits;
    Complex weight;
  };
  const std::array<Trajectory, 4> trajectories{{
      {Path::P1, {1}, direct},
      {Path::P2, {2}, direct},
      {Path::P12, {1, 2, 1}, -loop},
      {Path::P21, {2, 1, 2}, -loop},
  }};
  std::vector<StateTerm> terms;
  for (const auto& tr : trajectories) {
    if (tr.weight == Complex{}) continue;
    const auto [level, cavities] = markTrajectory(tr.slits);
    terms.push_back({tr.weight, {tr.path, level, cavities}});
  }
  return CompositeState::normalized(std::move(terms));
}

const CompositeState& Branch::state() const {
  if (!collapsed) {
    throw UndefinedCollapse("branch '" + name +
                            "' has zero probability; collapse is undefined");
  }
  return *collapsed;
}

CavityBellOutcome measureBellCavities(const CompositeState& state) {
  // |00> = 0, |01> = 1, |10> = 2, |11> = 3
  const auto phiPlus = bellVector(2, 1, +1.0);
  const auto phiMinus = bellVector(2, 1, -1.0);
  const auto psiPlus = bellVector(0, 3, +1.0);
  const auto psiMinus = bellVector(0, 3, -1.0);
  return {projectOnto(state, "phi+", {phiPlus}),
          projectOnto(state, "phi-", {phiMinus}),
          projectOnto(state, "q", {psiPlus, psiMinus})};
}

InternalOutcome measureInternal(const CompositeState& state) {
  std::vector<StateTerm> ground, excited;
  for (const auto& term : state.terms()) {
    (term.label.level == Level::Ground ? ground : excited).push_back(term);
  }
  return {makeBranch("g", std::move(ground)),
          makeBranch("e", std::move(excited))};
}

CompositeState twoDetectorState(Complex a1, Complex a2) {
  return CompositeState::normalized({
      {a1, {Path::P1, Level::Ground, {1, 0}}},
      {a2, {Path::P2, Level::Ground, {0, 1}}},
  });
}

TwoDetectorBellOutcome measureTwoDetectorBell(const CompositeState& state) {
  // S+ -> 1, S- -> 0: |S+S-> = |10>, |S-S+> = |01>, |S+S+> = |11>.
  return {projectOnto(state, "psi+", {bellVector(2, 1, +1.0)}),
          projectOnto(state, "psi-", {bellVector(2, 1, -1.0)}),
          projectOnto(state, "phi+", {bellVector(3, 0, +1.0)}),
          projectOnto(state, "phi-", {bellVector(3, 0, -1.0)})};
}

CenterOfMassDensity reduceCenterOfMass(const CompositeState& state) {
  CenterOfMassDensity rho;
  const auto& terms = state.terms();
  for (const auto& u : terms) {
    for (const auto& v : terms) {
      if (u.label.level == v.label.level &&
          u.label.cavities == v.label.cavities) {
        rho.weights(static_cast<int>(u.label.path),
                    static_cast<int>(v.label.path)) +=
            u.amplitude * std::conj(v.amplitude);
      }
    }
  }
  return rho;
}

EraserOutcome eraserBasisSingleDetector(std::span<const MarkerTerm> state) {
  if (state.size() != 2) {
    throw ShapeError("single-detector state must have exactly two terms");
  }
  const MarkerTerm* first = nullptr;
  const MarkerTerm* second = nullptr;
  for (const auto& term : state) {
    if (term.path == Path::P1 && term.marker == Marker::Plus) first = &term;
    if (term.path == Path::P2 && term.marker == Marker::Minus) second = &term;
  }
  if (first == nullptr || second == nullptr) {
    throw ShapeError(
        "single-detector state must be a1|C1>|S+> + a2|C2>|S->");
  }
  const Complex a1 = first->amplitude;
  const Complex a2 = second->amplitude;
  const double total = std::norm(a1) + std::norm(a2);
  if (!(total > 0.0)) {
    throw ShapeError("single-detector state has zero weight");
  }
  // <+-|S+> = 1/sqrt2, <+-|S-> = +-1/sqrt2, and |C1>, |C2> are orthonormal
  // labels, so each outcome carries half the input weight.
  auto branch = [&](double sign) {
    EraserBranch b;
    b.probability = 0.5;
    const double scale = 1.0 / std::sqrt(total);
    b.path_amplitudes = {a1 * scale, sign * a2 * scale};
    return b;
  };
  return {branch(+1.0), branch(-1.0)};
}

}  // namespace eltsim
