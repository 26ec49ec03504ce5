#include "eltsim/exotic_closed.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eltsim/errors.hpp"

namespace eltsim {

namespace {

constexpr double kPi = std::numbers::pi;
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

double sq(double v) { return v * v; }

// |z|^2 with a guard against the degenerate case.
double modulus2(const Complex& z, const char* name) {
  const double q = std::norm(z);
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DegenerateError(std::string("vanishing or non-finite |") + name +
                          "|^2 in the coefficient table");
  }
  return q;
}

struct Recurrence {
  const PhysicsConfig& c;
  double eps;

  Complex z0() const {
    return {1.0 / (2.0 * sq(c.sigma0)), -c.mass / (2.0 * c.hbar * c.t)};
  }
  Complex z1(const Complex& z0) const {
    const double q0 = modulus2(z0, "z0");
    const double k = sq(c.mass) / (4.0 * sq(c.hbar) * sq(c.t) * q0);
    return {1.0 / (2.0 * sq(c.beta)) + k * z0.real(),
            -(c.mass / (4.0 * c.hbar * eps) + c.mass / (2.0 * c.hbar * c.t) +
              k * z0.imag())};
  }
  Complex z2(const Complex& z1) const {
    const double q1 = modulus2(z1, "z1");
    const double k = sq(c.mass) / (16.0 * sq(c.hbar) * sq(eps) * q1);
    return {1.0 / (2.0 * sq(c.beta)) + k * z1.real(),
            -(c.mass / (2.0 * c.hbar * eps) + k * z1.imag())};
  }
  Complex z3(const Complex& z2) const {
    const double q2 = modulus2(z2, "z2");
    const double k = sq(c.mass) / (16.0 * sq(c.hbar) * sq(eps) * q2);
    return {1.0 / (2.0 * sq(c.beta)) + k * z2.real(),
            -(c.mass / (2.0 * c.hbar * c.tau) + c.mass / (4.0 * c.hbar * eps) +
              k * z2.imag())};
  }
};

void fillComposite(ZTable& t) {
  const double r01 = t[0].real() * t[1].real() - t[0].imag() * t[1].imag();
  const double i01 = t[0].real() * t[1].imag() + t[0].imag() * t[1].real();
  const double r23 = t[2].real() * t[3].real() - t[2].imag() * t[3].imag();
  const double i23 = t[2].real() * t[3].imag() + t[2].imag() * t[3].real();
  t.zR = r01 * i23 + i01 * r23;
  t.zI = r01 * r23 - i01 * i23;
}

double relDeviation(const Complex& got, const Complex& want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

}  // namespace

ZTable buildZTable(const PhysicsConfig& config,
                   const DerivedQuantities& derived) {
  config.validate();
  const Recurrence rec{config, derived.epsilon};
  ZTable t;
  auto& z = t.z;
  z[0] = rec.z0();
  z[1] = rec.z1(z[0]);
  z[2] = rec.z2(z[1]);
  z[3] = rec.z3(z[2]);
  z[4] = z[1] * z[1] * z[2];
  z[5] = z[1] * z[1] * z[2] * z[2] * z[3];
  z[6] = z[1] * z[2] * z[3];
  z[7] = z[1] * z[2];
  z[8] = z[2] * z[2] * z[3];
  z[9] = z[1] * z[8];
  z[10] = z[2] * z[3];
  for (std::size_t k = 0; k < z.size(); ++k) {
    modulus2(z[k], ("z" + std::to_string(k)).c_str());
  }
  fillComposite(t);
  return t;
}

Complex expandedProduct(std::size_t k, const ZTable& table) {
  const double z1R = table[1].real(), z1I = table[1].imag();
  const double z2R = table[2].real(), z2I = table[2].imag();
  const double z3R = table[3].real(), z3I = table[3].imag();
  switch (k) {
    case 4:
      return {z1R * z1R * z2R - z1I * z1I * z2R - 2 * z1R * z1I * z2I,
              z1R * z1R * z2I - z1I * z1I * z2I + 2 * z1R * z1I * z2R};
    case 5: {
      const double p = z1R * z1R * z2R * z2R - z1R * z1R * z2I * z2I -
                       z1I * z1I * z2R * z2R + z1I * z1I * z2I * z2I -
                       4 * z1R * z1I * z2R * z2I;
      const double q = z1R * z1R * z2R * z2I - z1I * z1I * z2R * z2I +
                       z1R * z1I * z2R * z2R - z1R * z1I * z2I * z2I;
      return {z3R * p - 2 * z3I * q, z3I * p + 2 * z3R * q};
    }
    case 6:
      return {z1R * z2R * z3R - z1R * z2I * z3I - z1I * z2R * z3I -
                  z1I * z2I * z3R,
              z1R * z2R * z3I + z1R * z2I * z3R + z1I * z2R * z3R -
                  z1I * z2I * z3I};
    case 7:
      return {z1R * z2R - z1I * z2I, z1I * z2R + z1R * z2I};
    case 8:
      return {(z2R * z2R - z2I * z2I) * z3R - 2 * z2R * z2I * z3I,
              (z2R * z2R - z2I * z2I) * z3I + 2 * z2R * z2I * z3R};
    case 9: {
      const Complex z8 = expandedProduct(8, table);
      return {z1R * z8.real() - z1I * z8.imag(),
              z1I * z8.real() + z1R * z8.imag()};
    }
    case 10:
      return {z2R * z3R - z2I * z3I, z2I * z3R + z2R * z3I};
    default:
      throw std::out_of_range("expandedProduct: k must be in 4..10");
  }
}

std::vector<ZCheck> checkZTable(const ZTable& table,
                                const PhysicsConfig& config,
                                const DerivedQuantities& derived) {
  const Recurrence rec{config, derived.epsilon};
  std::vector<ZCheck> out;
  out.push_back({"z0", relDeviation(table[0], rec.z0())});
  out.push_back({"z1", relDeviation(table[1], rec.z1(table[0]))});
  out.push_back({"z2", relDeviation(table[2], rec.z2(table[1]))});
  out.push_back({"z3", relDeviation(table[3], rec.z3(table[2]))});
  for (std::size_t k = 4; k <= 10; ++k) {
    out.push_back(
        {"z" + std::to_string(k), relDeviation(expandedProduct(k, table),
                                               table[k])});
  }
  const Complex product = table[0] * table[1] * table[2] * table[3];
  out.push_back(
      {"zRI", relDeviation(Complex(table.zR, table.zI),
                           Complex(product.imag(), product.real()))});
  return out;
}

ZTable corruptZTable(ZTable table, std::string_view term, double factor) {
  if (term == "zR") {
    table.zR *= 1.0 + factor;
    return table;
  }
  if (term == "zI") {
    table.zI *= 1.0 + factor;
    return table;
  }
  if (term.size() >= 2 && term[0] == 'z') {
    std::size_t k = 0;
    bool digits = true;
    for (char ch : term.substr(1)) {
      if (ch < '0' || ch > '9') digits = false;
      k = k * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (digits && k < table.z.size()) {
      table.z[k] *= 1.0 + factor;
      return table;
    }
  }
  throw std::invalid_argument("unknown z-table entry '" + std::string(term) +
                              "'");
}

std::vector<CoefficientTerm> coefficientTerms(const ZTable& t,
                                              const PhysicsConfig& c,
                                              const DerivedQuantities& derived,
                                              Reading reading) {
  const double m = c.mass, h = c.hbar, d = c.d, b2 = sq(c.beta);
  const double b4 = b2 * b2, d2 = d * d, tau = c.tau, e = derived.epsilon;
  const bool printed = reading == Reading::Printed;
  auto R = [&](int k) { return t[k].real(); };
  auto I = [&](int k) { return t[k].imag(); };
  auto q = [&](int k) {
    return modulus2(t[k], ("z" + std::to_string(k)).c_str());
  };

  std::vector<CoefficientTerm> terms;
  auto add = [&](const char* coeff, int index, double value) {
    terms.push_back({std::string(coeff) + "[" + std::to_string(index) + "]",
                     value});
  };

  add("C2et", 1, -m * d * I(3) / (4 * h * tau * b2 * q(3)));
  add("C2et", 2,
      std::pow(m, 3) * d * I(6) /
          (64 * std::pow(h, 3) * b2 * tau * sq(e) * q(6)));
  add("C2et", 3,
      sq(m) * d * R(10) /
          (16 * sq(h) * tau * (printed ? 1.0 : e) * b2 * q(10)));

  add("C3et", 1, d2 * R(1) / (16 * b4 * q(1)));
  add("C3et", 2, d2 * R(2) / (16 * b4 * (printed ? e : 1.0) * q(2)));
  add("C3et", 3, d2 * R(3) / (16 * b4 * q(3)));
  add("C3et", 4, -sq(m) * d2 * R(4) / (256 * b4 * sq(h) * sq(e) * q(4)));
  add("C3et", 5,
      std::pow(m, 4) * d2 * R(5) /
          (4096 * std::pow(h, 4) * std::pow(e, 4) * b4 * q(5)));
  add("C3et", 6, -sq(m) * d2 * R(6) / (128 * sq(h) * sq(e) * b4 * q(6)));
  add("C3et", 7, m * d2 * I(7) / (32 * h * b4 * e * q(7)));
  add("C3et", 8, -sq(m) * d2 * R(8) / (256 * sq(h) * sq(e) * b4 * q(8)));
  add("C3et", 9,
      -std::pow(m, 3) * d2 * I(9) /
          (512 * std::pow(h, 3) * std::pow(e, 3) * b4 * q(9)));
  add("C3et", 10, m * d2 * I(10) / (32 * h * e * b4 * q(10)));
  add("C3et", 11, -d2 / (8 * b2));
  add("C3et", 12, -d2 / (4 * b2));

  add("gamma_et", 1, -m * d * R(3) / (4 * h * tau * b2 * q(3)));
  add("gamma_et", 2,
      std::pow(m, 3) * d * R(6) /
          (64 * std::pow(h, 3) * b2 * tau * sq(e) * q(6)));
  add("gamma_et", 3, -sq(m) * d * I(10) / (16 * sq(h) * tau * e * b2 * q(10)));

  add("theta_et", 1, -d2 * I(1) / (16 * b4 * q(1)));
  add("theta_et", 2,
      -d2 * I(2) / (16 * b4 * (printed ? sq(h) * sq(e) : 1.0) * q(2)));
  add("theta_et", 3, -d2 * I(3) / (16 * b4 * q(3)));
  add("theta_et", 4, sq(m) * d2 * I(4) / (256 * sq(h) * b4 * sq(e) * q(4)));
  add("theta_et", 5,
      -(printed ? m * std::pow(d, 4) : std::pow(m, 4)) * d2 * I(5) /
          (4096 * std::pow(h, 4) * b4 * std::pow(e, 4) * q(5)));
  add("theta_et", 6, sq(m) * d2 * I(6) / (128 * sq(h) * b4 * sq(e) * q(6)));
  add("theta_et", 7, m * d2 * R(7) / (32 * h * b4 * e * q(7)));
  add("theta_et", 8,
      printed ? sq(m) * d2 * I(8) / (16 * b4 * sq(e) * q(8))
              : sq(m) * d2 * I(8) / (256 * sq(h) * b4 * sq(e) * q(8)));
  add("theta_et", 9,
      -std::pow(m, 3) * d2 * R(9) /
          (512 * std::pow(h, 3) * b4 * std::pow(e, 3) * q(9)));
  add("theta_et", 10,
      m * d2 * R(10) / ((printed ? 256 : 32) * h * b4 * e * q(10)));
  return terms;
}

double gouyPhase(const ZTable& table) {
  if (table.zR == 0.0 && table.zI == 0.0) {
    throw DegenerateError("Gouy phase undefined for zR = zI = 0");
  }
  double mu = 0.5 * std::atan2(table.zI, table.zR);
  if (mu > 0.25 * kPi) mu -= kPi;
  return mu;
}

EltCoefficients buildCoefficients(const ZTable& table,
                                  const PhysicsConfig& config,
                                  const DerivedQuantities& derived,
                                  Reading reading) {
  const double m = config.mass, h = config.hbar, tau = config.tau;
  const double q3 = modulus2(table[3], "z3");
  const double zmod = std::hypot(table.zR, table.zI);
  if (!(zmod > 0.0)) {
    throw DegenerateError("vanishing composite (zR, zI)");
  }

  EltCoefficients out;
  out.ztable = table;
  out.A = std::sqrt(std::pow(m, 3) * std::sqrt(kPi) /
                    (16 * std::pow(h, 3) * tau * config.t * derived.epsilon *
                     config.sigma0 * zmod));
  out.C1 = sq(m) * table[3].real() / (4 * sq(h) * sq(tau) * q3);
  out.alpha = m / (2 * h * tau) +
              sq(m) * table[3].imag() / (4 * sq(h) * sq(tau) * q3);
  for (const auto& term : coefficientTerms(table, config, derived, reading)) {
    const std::string_view name = term.name;
    if (name.starts_with("C2et")) {
      out.C2 += term.value;
    } else if (name.starts_with("C3et")) {
      out.C3 += term.value;
    } else if (name.starts_with("gamma_et")) {
      out.gamma += term.value;
    } else {
      out.theta += term.value;
    }
  }
  out.mu = gouyPhase(table);
  return out;
}

EltCoefficients buildCoefficients(const PhysicsConfig& config,
                                  Reading reading) {
  const auto derived = derive(config);
  return buildCoefficients(buildZTable(config, derived), config, derived,
                           reading);
}

namespace {

Complex evaluateElt(double x, const EltCoefficients& k, double parity) {
  const double envelope = -k.C1 * x * x + parity * k.C2 * x + k.C3;
  if (!(envelope < kMaxExponent)) {
    std::ostringstream msg;
    msg << "looped-trajectory envelope exponent " << envelope
        << " at x = " << x << " overflows double range";
    throw EvaluationError(msg.str());
  }
  const double phase =
      k.alpha * x * x + parity * k.gamma * x + k.theta + k.mu;
  return k.A * std::exp(envelope) * Complex(std::cos(phase), std::sin(phase));
}

}  // namespace

Complex psi12(double x, const EltCoefficients& coeffs) {
  return evaluateElt(x, coeffs, 1.0);
}

Complex psi21(double x, const EltCoefficients& coeffs) {
  return evaluateElt(x, coeffs, -1.0);
}

}  // namespace eltsim
