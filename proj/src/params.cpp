#include "eltsim/params.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "eltsim/errors.hpp"

namespace eltsim {

namespace {

void requirePositive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << field << " must be a finite positive number, got " << value;
    throw ConfigError(field, msg.str());
  }
}

void requireFinite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw ConfigError(field, std::string(field) + " must be finite");
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parseNumber(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "value for " + std::string(key) +
                                            " is not a number: '" +
                                            std::string(text) + "'");
  }
  return value;
}

}  // namespace

void PhysicsConfig::validate() const {
  requirePositive(mass, "mass_kg");
  requirePositive(hbar, "hbar_Js");
  requirePositive(sigma0, "sigma0_m");
  requirePositive(beta, "beta_m");
  requirePositive(d, "d_m");
  requirePositive(t, "t_s");
  requirePositive(tau, "tau_s");
  if (!std::isfinite(eta) || eta < 0.0) {
    throw ConfigError("eta_s", "eta_s must be finite and non-negative");
  }
  requireFinite(omega_ge, "omega_ge_rad_s");
  requirePositive(excited_lifetime, "lifetime_s");
  requireFinite(amp_exotic.real(), "amp_exotic_re");
  requireFinite(amp_exotic.imag(), "amp_exotic_im");
  requireFinite(amp_nonexotic.real(), "amp_nonexotic_re");
  requireFinite(amp_nonexotic.imag(), "amp_nonexotic_im");
}

PhysicsConfig PhysicsConfig::rubidium() {
  PhysicsConfig c;
  c.mass = 1.44e-25;
  c.sigma0 = 10e-9;
  c.beta = 10e-9;
  c.d = 180e-9;
  c.t = 20e-6;
  c.tau = 20e-6;
  return c;
}

DerivedQuantities derive(const PhysicsConfig& config) {
  config.validate();
  DerivedQuantities out;
  // psi0 ~ exp(-x^2 / 2 sigma0^2) has <p> = 0 and <p^2> = hbar^2 / 2 sigma0^2.
  out.delta_p = config.hbar / (std::sqrt(2.0) * config.sigma0);
  out.delta_v = out.delta_p / config.mass;
  out.epsilon = config.d / out.delta_v;
  if (!(out.epsilon > 0.0) || !std::isfinite(out.epsilon)) {
    throw ConfigError("d_m", "derived inter-slit time is not positive");
  }
  return out;
}

std::vector<std::string> validateRegime(const PhysicsConfig& config) {
  const auto derived = derive(config);
  std::vector<std::string> warnings;
  const double flight = config.t + 2.0 * derived.epsilon + config.tau;
  if (flight > kLifetimeWarningFraction * config.excited_lifetime) {
    std::ostringstream msg;
    msg << "flight time t + 2*epsilon + tau = " << flight
        << " s is not small against the excited-state lifetime "
        << config.excited_lifetime << " s; spontaneous decay is ignored";
    warnings.push_back(msg.str());
  }
  if (config.eta != 0.0) {
    std::ostringstream msg;
    msg << "eta = " << config.eta
        << " s is nonzero; the closed-form coefficients assume eta = 0";
    warnings.push_back(msg.str());
  }
  return warnings;
}

namespace {

struct KeyBinding {
  const char* key;
  void (*assign)(PhysicsConfig&, double);
  double (*read)(const PhysicsConfig&);
  bool required;
};

// clang-format off
constexpr std::array<KeyBinding, 14> kKeys{{
  {"mass_kg", [](PhysicsConfig& c, double v) { c.mass = v; }, [](const PhysicsConfig& c) { return c.mass; }, true},
  {"sigma0_m", [](PhysicsConfig& c, double v) { c.sigma0 = v; }, [](const PhysicsConfig& c) { return c.sigma0; }, true},
  {"beta_m", [](PhysicsConfig& c, double v) { c.beta = v; }, [](const PhysicsConfig& c) { return c.beta; }, true},
  {"d_m", [](PhysicsConfig& c, double v) { c.d = v; }, [](const PhysicsConfig& c) { return c.d; }, true},
  {"t_s", [](PhysicsConfig& c, double v) { c.t = v; }, [](const PhysicsConfig& c) { return c.t; }, true},
  {"tau_s", [](PhysicsConfig& c, double v) { c.tau = v; }, [](const PhysicsConfig& c) { return c.tau; }, true},
  {"eta_s", [](PhysicsConfig& c, double v) { c.eta = v; }, [](const PhysicsConfig& c) { return c.eta; }, false},
  {"hbar_Js", [](PhysicsConfig& c, double v) { c.hbar = v; }, [](const PhysicsConfig& c) { return c.hbar; }, false},
  {"omega_ge_rad_s", [](PhysicsConfig& c, double v) { c.omega_ge = v; }, [](const PhysicsConfig& c) { return c.omega_ge; }, false},
  {"lifetime_s", [](PhysicsConfig& c, double v) { c.excited_lifetime = v; }, [](const PhysicsConfig& c) { return c.excited_lifetime; }, false},
  {"amp_exotic_re", [](PhysicsConfig& c, double v) { c.amp_exotic.real(v); }, [](const PhysicsConfig& c) { return c.amp_exotic.real(); }, false},
  {"amp_exotic_im", [](PhysicsConfig& c, double v) { c.amp_exotic.imag(v); }, [](const PhysicsConfig& c) { return c.amp_exotic.imag(); }, false},
  {"amp_nonexotic_re", [](PhysicsConfig& c, double v) { c.amp_nonexotic.real(v); }, [](const PhysicsConfig& c) { return c.amp_nonexotic.real(); }, false},
  {"amp_nonexotic_im", [](PhysicsConfig& c, double v) { c.amp_nonexotic.imag(v); }, [](const PhysicsConfig& c) { return c.amp_nonexotic.imag(); }, false},
}};
// clang-format on

}  // namespace

PhysicsConfig parseConfig(std::istream& in) {
  PhysicsConfig config;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(lineno) +
                                ": expected key=value, got '" +
                                std::string(view) + "'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const auto value = trim(view.substr(eq + 1));
    const auto* binding = std::find_if(
        kKeys.begin(), kKeys.end(),
        [&](const KeyBinding& b) { return key == b.key; });
    if (binding == kKeys.end()) {
      throw ConfigError(key, "line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
    }
    if (seen.count(key) != 0) {
      throw ConfigError(key, "line " + std::to_string(lineno) +
                                 ": duplicate key '" + key + "'");
    }
    seen[key] = lineno;
    binding->assign(config, parseNumber(key, value));
  }
  for (const auto& b : kKeys) {
    if (b.required && seen.count(b.key) == 0) {
      throw ConfigError(b.key, std::string("missing required key '") + b.key +
                                   "'");
    }
  }
  config.validate();
  return config;
}

PhysicsConfig parseConfigString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parseConfig(in);
}

PhysicsConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("", "cannot open config file " + path.string());
  }
  return parseConfig(in);
}

void writeConfig(std::ostream& out, const PhysicsConfig& config) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::scientific << std::setprecision(16);
  for (const auto& b : kKeys) {
    out << b.key << " = " << b.read(config) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

PhysicsConfig withParameter(PhysicsConfig config, std::string_view name,
                            double value) {
  if (name == "sigma0") {
    config.sigma0 = value;
  } else if (name == "beta") {
    config.beta = value;
  } else if (name == "d") {
    config.d = value;
  } else if (name == "t") {
    config.t = value;
  } else if (name == "tau") {
    config.tau = value;
  } else {
    throw ConfigError(std::string(name),
                      "unknown sweep parameter '" + std::string(name) +
                          "' (expected sigma0, beta, d, t or tau)");
  }
  return config;
}

}  // namespace eltsim
