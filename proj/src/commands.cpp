#include "eltsim/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "eltsim/complexgauss.hpp"
#include "eltsim/errors.hpp"
#include "eltsim/exotic_closed.hpp"
#include "eltsim/intensity.hpp"
#include "eltsim/marking.hpp"
#include "eltsim/params.hpp"

#ifndef ELTSIM_VERSION
#define ELTSIM_VERSION "0.0.0"
#endif

namespace eltsim::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kZCheckTolerance = 1e-12;
constexpr double kCorruptionFactor = 1e-3;
constexpr std::size_t kDefaultVerifyPoints = 101;

const std::vector<std::string> kBranches{"elt", "ground", "full", "fringes",
                                         "antifringes"};
const std::vector<std::string> kMeasurements{"bell", "internal", "none"};
const std::vector<std::string> kSweepParameters{"sigma0", "beta", "d", "t",
                                                "tau"};

bool contains(const std::vector<std::string>& list, std::string_view name) {
  return std::find(list.begin(), list.end(), name) != list.end();
}

std::string joined(const std::vector<std::string>& list) {
  std::string s;
  for (const auto& item : list) {
    if (!s.empty()) s += ", ";
    s += item;
  }
  return s;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string complexText(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%+.12g%+.12gi", z.real() + 0.0,
                z.imag() + 0.0);
  return buf;
}

std::string utcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Context {
  PhysicsConfig config;
  DerivedQuantities derived;
  EltCoefficients coeffs;
};

PhysicsConfig loadOptionsConfig(const GlobalOptions& options) {
  if (options.config_path.empty()) return PhysicsConfig::rubidium();
  return loadConfig(options.config_path);
}

Context makeContext(const GlobalOptions& options, std::ostream& err) {
  Context ctx;
  ctx.config = loadOptionsConfig(options);
  ctx.config.validate();
  for (const auto& warning : validateRegime(ctx.config)) {
    err << "warning: " << warning << '\n';
  }
  ctx.derived = derive(ctx.config);
  ctx.coeffs = buildCoefficients(ctx.config);
  return ctx;
}

std::vector<double> resolveGrid(const GlobalOptions& options, double half,
                                std::size_t defaultPoints) {
  return makeGrid(options.grid_min.value_or(-half),
                  options.grid_max.value_or(half),
                  options.grid_points.value_or(defaultPoints));
}

// Output sink: the file named by --out, or `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open output file " + path);
    stream_ = file_.get();
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed for " + describe());
    if (file_) file_->close();
  }

  std::string describe() const { return path_.empty() ? "stdout" : path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

json configJson(const PhysicsConfig& c) {
  return {{"mass_kg", c.mass},
          {"hbar_Js", c.hbar},
          {"sigma0_m", c.sigma0},
          {"beta_m", c.beta},
          {"d_m", c.d},
          {"t_s", c.t},
          {"tau_s", c.tau},
          {"eta_s", c.eta},
          {"omega_ge_rad_s", c.omega_ge},
          {"lifetime_s", c.excited_lifetime},
          {"amp_nonexotic", {c.amp_nonexotic.real(), c.amp_nonexotic.imag()}},
          {"amp_exotic", {c.amp_exotic.real(), c.amp_exotic.imag()}}};
}

json coefficientsJson(const EltCoefficients& k) {
  json z = json::object();
  for (std::size_t i = 0; i < k.ztable.z.size(); ++i) {
    z["z" + std::to_string(i)] = {k.ztable.z[i].real(), k.ztable.z[i].imag()};
  }
  z["zR"] = k.ztable.zR;
  z["zI"] = k.ztable.zI;
  return {{"A_et", k.A},         {"C1_et", k.C1},
          {"C2_et", k.C2},       {"C3_et", k.C3},
          {"alpha_et", k.alpha}, {"gamma_et", k.gamma},
          {"theta_et", k.theta}, {"mu_et", k.mu},
          {"ztable", z}};
}

json baseManifest(const GlobalOptions& options, const std::string& command,
                  const Context& ctx) {
  return {{"tool", "eltsim"},
          {"version", ELTSIM_VERSION},
          {"command", command},
          {"arguments", options.argv},
          {"timestamp", utcTimestamp()},
          {"config_source", options.config_path.empty()
                                ? std::string("built-in rubidium")
                                : options.config_path},
          {"config", configJson(ctx.config)},
          {"derived",
           {{"delta_p_kg_m_s", ctx.derived.delta_p},
            {"delta_v_m_s", ctx.derived.delta_v},
            {"epsilon_s", ctx.derived.epsilon}}},
          {"coefficients", coefficientsJson(ctx.coeffs)}};
}

void writeManifest(const GlobalOptions& options, const json& manifest) {
  if (options.out_path.empty()) return;
  const std::string path = options.out_path + ".manifest.json";
  std::ofstream file(path);
  if (!file) throw IoError("cannot open manifest file " + path);
  file << manifest.dump(2) << '\n';
  if (!file) throw IoError("write failed for " + path);
}

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error";
    if (!e.field().empty()) err << " [" << e.field() << "]";
    err << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const DegenerateError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UndefinedCollapse& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

IntensityProfile computeBranch(const Context& ctx, std::string_view branch,
                               std::span<const double> grid,
                               Normalization mode) {
  if (branch == "elt") return eltIntensity(grid, ctx.coeffs, mode);

  const PathAmplitudes paths = PathAmplitudes::fromConfig(ctx.config);
  if (branch == "fringes" || branch == "antifringes") {
    // Single which-way detector at slit 1 with a1 = a2 = amp_nonexotic.
    const Complex a = ctx.config.amp_nonexotic;
    const std::array<MarkerTerm, 2> marked{{{a, Path::P1, Marker::Plus},
                                            {a, Path::P2, Marker::Minus}}};
    const auto outcome = eraserBasisSingleDetector(marked);
    const auto& b = branch == "fringes" ? outcome.plus : outcome.minus;
    CenterOfMassDensity rho;
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        rho.weights(p, q) =
            b.path_amplitudes[p] * std::conj(b.path_amplitudes[q]);
      }
    }
    return branchIntensity(rho, grid, paths, mode, std::string(branch));
  }

  const CompositeState state = postSlitState(ctx.config);
  if (branch == "ground") {
    const auto outcome = measureInternal(state);
    return branchIntensity(outcome.ground.state(), grid, paths, mode,
                           "ground");
  }
  return branchIntensity(state, grid, paths, mode, "full");
}

void printTerms(std::ostream& out, const CompositeState& state,
                const std::string& indent) {
  for (const auto& term : state.terms()) {
    out << indent << complexText(term.amplitude) << "  "
        << toString(term.label) << '\n';
  }
}

void printWeights(std::ostream& out, const CenterOfMassDensity& rho,
                  const std::string& indent) {
  out << indent << "reduced center-of-mass weights w(p,q), p,q in "
      << "{1, 2, 12, 21}:\n";
  for (std::size_t p = 0; p < kPathCount; ++p) {
    out << indent << "  " << toString(kAllPaths[p]) << ":";
    for (std::size_t q = 0; q < kPathCount; ++q) {
      out << "  " << complexText(rho.weights(p, q));
    }
    out << '\n';
  }
}

void printBranch(std::ostream& out, const Branch& branch) {
  out << "branch " << branch.name << ": p = " << g12(branch.probability)
      << '\n';
  if (!branch.collapsed) {
    out << "  (zero probability; no collapsed state)\n";
    return;
  }
  printTerms(out, *branch.collapsed, "  ");
  printWeights(out, reduceCenterOfMass(*branch.collapsed), "  ");
}

struct Deviation {
  double value = 0.0;
  double x = 0.0;
};

// max_x |closed - chain| / max_x |chain|
template <typename Closed>
Deviation closedVsChain(const GaussianForm& chain, Closed&& closed,
                        std::span<const double> grid) {
  double scale = 0.0;
  Deviation worst;
  std::vector<double> diffs;
  diffs.reserve(grid.size());
  for (double x : grid) {
    const Complex reference = chain(x);
    scale = std::max(scale, std::abs(reference));
    diffs.push_back(std::abs(closed(x) - reference));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rel = scale > 0.0 ? diffs[i] / scale : diffs[i];
    if (rel >= worst.value) worst = {rel, grid[i]};
  }
  return worst;
}

}  // namespace

int cmdIntensity(const GlobalOptions& options, std::string_view branch,
                 std::ostream& out, std::ostream& err) {
  if (!contains(kBranches, branch)) {
    err << "error: unknown branch '" << branch << "' (expected one of "
        << joined(kBranches) << ")\n";
    return kUsage;
  }
  return guarded(err, [&] {
    const Context ctx = makeContext(options, err);
    const auto grid = resolveGrid(
        options, kDefaultGridFringes * fringeSpacing(ctx.coeffs),
        kDefaultGridPoints);
    const Normalization mode =
        options.raw ? Normalization::Raw : Normalization::Peak;
    const IntensityProfile profile = computeBranch(ctx, branch, grid, mode);
    if (profile.clamped > 0) {
      err << "note: " << profile.clamped
          << " round-off negative values clamped to 0\n";
    }

    Sink sink(options.out_path, out);
    auto& s = sink.stream();
    s << "x_m,intensity,visibility_pointwise\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      s << sci(profile.grid[i]) << ',' << sci(profile.values[i]) << ','
        << sci(profile.visibility[i]) << '\n';
    }
    sink.close();

    json manifest = baseManifest(options, "intensity", ctx);
    manifest["output"] = sink.describe();
    manifest["branch"] = profile.branch;
    manifest["normalization"] = toString(profile.normalization);
    manifest["grid"] = {{"min_m", grid.front()},
                        {"max_m", grid.back()},
                        {"points", grid.size()}};
    manifest["clamped_values"] = profile.clamped;
    writeManifest(options, manifest);
    return static_cast<int>(kOk);
  });
}

int cmdVerify(const GlobalOptions& options, std::size_t points,
              std::string_view corrupt, std::ostream& out,
              std::ostream& err) {
  if (points == 0) {
    err << "error: --points must be at least 1\n";
    return kUsage;
  }
  if (!(options.tolerance > 0.0)) {
    err << "error: --tolerance must be positive\n";
    return kUsage;
  }
  return guarded(err, [&]() -> int {
    Context ctx = makeContext(options, err);
    ZTable table = buildZTable(ctx.config, ctx.derived);
    if (!corrupt.empty()) {
      table = corruptZTable(table, corrupt, kCorruptionFactor);
      ctx.coeffs = buildCoefficients(table, ctx.config, ctx.derived);
    }
    const double half = kDefaultGridFringes * fringeSpacing(ctx.coeffs);
    const std::vector<double> grid =
        points == 1 && !options.grid_min
            ? std::vector<double>{0.0}
            : makeGrid(options.grid_min.value_or(-half),
                       options.grid_max.value_or(half), points);

    Sink sink(options.out_path, out);
    auto& s = sink.stream();
    struct Failure {
      std::string term;
      double deviation;
      std::string where;
    };
    std::vector<Failure> failures;
    json results = json::object();

    s << "eltsim verify\n";
    s << "epsilon_s = " << sci(ctx.derived.epsilon) << '\n';
    s << "grid: " << grid.size() << " points over [" << sci(grid.front())
      << ", " << sci(grid.back()) << "] m\n";
    s << "tolerance: " << g12(options.tolerance) << '\n';
    if (!corrupt.empty()) {
      s << "fault injection: " << corrupt << " scaled by (1 + "
        << kCorruptionFactor << ")\n";
    }

    s << "\nz-table consistency (tolerance " << kZCheckTolerance << "):\n";
    json zjson = json::object();
    for (const auto& check : checkZTable(table, ctx.config, ctx.derived)) {
      const bool ok = check.deviation <= kZCheckTolerance;
      s << "  " << check.term << "  " << sci(check.deviation) << "  "
        << (ok ? "ok" : "FAIL") << '\n';
      zjson[check.term] = check.deviation;
      if (!ok) failures.push_back({check.term, check.deviation, ""});
    }
    results["ztable"] = zjson;

    struct LoopCase {
      std::string name;
      Loop loop;
      Complex (*closed)(double, const EltCoefficients&);
    };
    const std::array<LoopCase, 2> loops{{{"psi12", Loop::L12, &psi12},
                                         {"psi21", Loop::L21, &psi21}}};

    const EltCoefficients& k = ctx.coeffs;
    {
      // The closed form is A exp(-(C1 - i alpha) x^2 + (C2 + i gamma) x
      // + C3 + i(theta + mu)); compare with the chain's Gaussian form.
      const GaussianForm chain = chainExotic(Loop::L12, ctx.config);
      const Complex a{k.C1, -k.alpha};
      const Complex b{k.C2, k.gamma};
      const Complex constant = k.A * std::exp(Complex{k.C3, k.theta + k.mu});
      const Complex chainConstant = chain.prefactor() * std::exp(chain.c());
      const std::array<std::pair<std::string, double>, 3> rows{{
          {"quadratic (C1, alpha)", std::abs(chain.a() - a) / std::abs(a)},
          {"linear (C2, gamma)", std::abs(chain.b() - b) / std::abs(b)},
          {"constant (A, C3, theta, mu)",
           std::abs(chainConstant - constant) / std::abs(chainConstant)},
      }};
      s << "\ncoefficients vs chain (loop 12):\n";
      json cjson = json::object();
      for (const auto& [name, dev] : rows) {
        const bool ok = dev <= options.tolerance;
        s << "  " << name << "  " << sci(dev) << "  "
          << (ok ? "ok" : "FAIL") << '\n';
        cjson[name] = dev;
        if (!ok) failures.push_back({name, dev, ""});
      }
      results["coefficients"] = cjson;
    }

    s << "\nclosed form vs chain (max |closed - chain| / max |chain|):\n";
    json pjson = json::object();
    for (const auto& lc : loops) {
      const GaussianForm chain = chainExotic(lc.loop, ctx.config);
      const Deviation dev = closedVsChain(
          chain, [&](double x) { return lc.closed(x, k); }, grid);
      const bool ok = dev.value <= options.tolerance;
      s << "  " << lc.name << "  " << sci(dev.value) << " at x = "
        << sci(dev.x) << " m  " << (ok ? "ok" : "FAIL") << '\n';
      pjson[lc.name] = {{"max_relative_deviation", dev.value},
                        {"worst_x_m", dev.x}};
      if (!ok) failures.push_back({lc.name, dev.value, "x = " + sci(dev.x)});
    }
    results["closed_vs_chain"] = pjson;

    // Informational: the typeset formulas, term by term.
    s << "\nprinted vs derived terms (informational):\n";
    const auto derivedTerms =
        coefficientTerms(table, ctx.config, ctx.derived, Reading::Derived);
    const auto printedTerms =
        coefficientTerms(table, ctx.config, ctx.derived, Reading::Printed);
    json tjson = json::array();
    for (std::size_t i = 0; i < derivedTerms.size(); ++i) {
      const double dv = derivedTerms[i].value;
      const double pv = printedTerms[i].value;
      if (dv == pv) continue;
      s << "  " << derivedTerms[i].name << "  printed " << sci(pv)
        << "  derived " << sci(dv) << '\n';
      tjson.push_back(
          {{"term", derivedTerms[i].name}, {"printed", pv}, {"derived", dv}});
    }
    try {
      const EltCoefficients printed =
          buildCoefficients(table, ctx.config, ctx.derived, Reading::Printed);
      const Deviation dev = closedVsChain(
          chainExotic(Loop::L12, ctx.config),
          [&](double x) { return psi12(x, printed); }, grid);
      s << "  printed reading, psi12 vs chain: " << sci(dev.value) << '\n';
    } catch (const std::exception& e) {
      s << "  printed reading, psi12 not evaluable: " << e.what() << '\n';
    }
    results["printed_terms"] = tjson;

    const bool pass = failures.empty();
    s << "\nresult: " << (pass ? "PASS" : "FAIL") << '\n';
    if (!pass) {
      const auto worst = std::max_element(
          failures.begin(), failures.end(),
          [](const Failure& a, const Failure& b) {
            return a.deviation < b.deviation;
          });
      s << "failing terms:";
      for (const auto& f : failures) s << ' ' << f.term;
      s << "\nworst: " << worst->term << " deviation " << sci(worst->deviation);
      if (!worst->where.empty()) s << " at " << worst->where;
      s << '\n';
    }
    sink.close();

    json manifest = baseManifest(options, "verify", ctx);
    manifest["output"] = sink.describe();
    manifest["points"] = grid.size();
    manifest["grid"] = {{"min_m", grid.front()}, {"max_m", grid.back()}};
    manifest["tolerance"] = options.tolerance;
    manifest["z_check_tolerance"] = kZCheckTolerance;
    manifest["corrupt"] = std::string(corrupt);
    manifest["results"] = results;
    manifest["pass"] = pass;
    writeManifest(options, manifest);
    return pass ? kOk : kVerifyFailed;
  });
}

int cmdStates(const GlobalOptions& options, std::string_view measurement,
              std::ostream& out, std::ostream& err) {
  if (!contains(kMeasurements, measurement)) {
    err << "error: unknown measurement '" << measurement
        << "' (expected one of " << joined(kMeasurements) << ")\n";
    return kUsage;
  }
  return guarded(err, [&] {
    const Context ctx = makeContext(options, err);
    const CompositeState state = postSlitState(ctx.config);

    Sink sink(options.out_path, out);
    auto& s = sink.stream();
    s << "post-slit state:\n";
    printTerms(s, state, "  ");
    s << "measurement: " << measurement << '\n';

    json probabilities = json::object();
    if (measurement == "none") {
      printWeights(s, reduceCenterOfMass(state), "");
    } else if (measurement == "bell") {
      const auto outcome = measureBellCavities(state);
      s << "p_phi+ = " << g12(outcome.phi_plus.probability) << '\n'
        << "p_phi- = " << g12(outcome.phi_minus.probability) << '\n'
        << "q = " << g12(outcome.q.probability) << '\n';
      for (const Branch* b :
           {&outcome.phi_plus, &outcome.phi_minus, &outcome.q}) {
        printBranch(s, *b);
        probabilities[b->name] = b->probability;
      }
    } else {
      const auto outcome = measureInternal(state);
      s << "r = " << g12(outcome.ground.probability) << '\n'
        << "s = " << g12(outcome.excited.probability) << '\n';
      for (const Branch* b : {&outcome.ground, &outcome.excited}) {
        printBranch(s, *b);
        probabilities[b->name] = b->probability;
      }
    }
    sink.close();

    json manifest = baseManifest(options, "states", ctx);
    manifest["output"] = sink.describe();
    manifest["measurement"] = std::string(measurement);
    manifest["probabilities"] = probabilities;
    writeManifest(options, manifest);
    return static_cast<int>(kOk);
  });
}

int cmdSweep(const GlobalOptions& options, std::string_view parameter,
             double min, double max, std::size_t steps, std::ostream& out,
             std::ostream& err) {
  if (!contains(kSweepParameters, parameter)) {
    err << "error: unknown sweep parameter '" << parameter
        << "' (expected one of " << joined(kSweepParameters) << ")\n";
    return kUsage;
  }
  if (!(min > 0.0) || !(max >= min) || !std::isfinite(max)) {
    err << "error: sweep range must satisfy 0 < min <= max\n";
    return kUsage;
  }
  if (steps == 0) {
    err << "error: --steps must be at least 1\n";
    return kUsage;
  }
  return guarded(err, [&] {
    const Context ctx = makeContext(options, err);
    const std::vector<double> values =
        (min == max || steps == 1) ? std::vector<double>{min}
                                   : makeGrid(min, max, steps);

    Sink sink(options.out_path, out);
    auto& s = sink.stream();
    s << "param_value,epsilon_s,gamma_et,fringe_spacing_m,"
         "aggregate_visibility,mu_et\n";
    for (double value : values) {
      const PhysicsConfig config =
          withParameter(ctx.config, parameter, value);
      const DerivedQuantities derived = derive(config);
      const EltCoefficients coeffs = buildCoefficients(config);
      const double spacing = fringeSpacing(coeffs);
      const IntensityProfile profile =
          eltIntensity(defaultGrid(coeffs), coeffs, Normalization::Peak);
      s << sci(value) << ',' << sci(derived.epsilon) << ','
        << sci(coeffs.gamma) << ',' << sci(spacing) << ','
        << sci(aggregateVisibility(profile, spacing)) << ','
        << sci(coeffs.mu) << '\n';
    }
    sink.close();

    json manifest = baseManifest(options, "sweep", ctx);
    manifest["output"] = sink.describe();
    manifest["parameter"] = std::string(parameter);
    manifest["range"] = {min, max};
    manifest["rows"] = values.size();
    writeManifest(options, manifest);
    return static_cast<int>(kOk);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exotic looped trajectory double-slit simulator", "eltsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ELTSIM_VERSION);

  GlobalOptions options;
  options.argv = args;
  app.add_option("--config", options.config_path,
                 "key = value config file (default: built-in rubidium set)");
  app.add_option("--out", options.out_path,
                 "output file; a manifest is written to <out>.manifest.json");
  app.add_option("--grid-min", options.grid_min, "grid start (m)");
  app.add_option("--grid-max", options.grid_max, "grid end (m)");
  app.add_option("--grid-points", options.grid_points, "number of grid points")
      ->check(CLI::PositiveNumber);
  app.add_flag("--raw", options.raw, "emit raw densities (no peak scaling)");
  app.add_option("--tolerance", options.tolerance,
                 "relative tolerance for verify")
      ->check(CLI::PositiveNumber);

  std::string branch = "elt";
  auto* intensity = app.add_subcommand("intensity", "screen intensity CSV");
  intensity->add_option("--branch", branch, "measurement branch")
      ->check(CLI::IsMember(kBranches));

  std::size_t points = kDefaultVerifyPoints;
  std::string corrupt;
  auto* verify =
      app.add_subcommand("verify", "check closed forms against the chain");
  verify->add_option("--points", points, "grid points")
      ->check(CLI::PositiveNumber);
  verify->add_option("--corrupt", corrupt,
                     "perturb one z-table entry (z0..z10, zR, zI)");

  std::string measurement = "none";
  auto* states = app.add_subcommand("states", "measurement branch report");
  states->add_option("--measurement", measurement, "bell, internal or none")
      ->check(CLI::IsMember(kMeasurements));

  std::string parameter;
  double sweepMin = 0.0, sweepMax = 0.0;
  std::size_t steps = 1;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep CSV");
  sweep->add_option("--param", parameter, "sigma0, beta, d, t or tau")
      ->required()
      ->check(CLI::IsMember(kSweepParameters));
  sweep->add_option("--min", sweepMin, "range start (SI)")->required();
  sweep->add_option("--max", sweepMax, "range end (SI)")->required();
  sweep->add_option("--steps", steps, "number of rows")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << ELTSIM_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (intensity->parsed()) return cmdIntensity(options, branch, out, err);
  if (verify->parsed()) return cmdVerify(options, points, corrupt, out, err);
  if (states->parsed()) return cmdStates(options, measurement, out, err);
  return cmdSweep(options, parameter, sweepMin, sweepMax, steps, out, err);
}

}  // namespace eltsim::cli
