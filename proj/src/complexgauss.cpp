#include "eltsim/complexgauss.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eltsim/errors.hpp"

namespace eltsim {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Largest real exponent whose exp() is representable.
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

}  // namespace

GaussianForm::GaussianForm(Complex a, Complex b, Complex c, Complex prefactor)
    : a_(a), b_(b), c_(c), prefactor_(prefactor) {
  if (!(a_.real() > 0.0) || !std::isfinite(a_.imag())) {
    std::ostringstream msg;
    msg << "Gaussian form with Re(a) <= 0 is not normalizable (a = " << a_
        << ")";
    throw DegenerateError(msg.str());
  }
}

Complex GaussianForm::operator()(double x) const {
  const Complex exponent = -a_ * x * x + b_ * x + c_;
  if (!(exponent.real() < kMaxExponent)) {
    std::ostringstream msg;
    msg << "exponent " << exponent.real() << " at x = " << x
        << " overflows double range";
    throw EvaluationError(msg.str());
  }
  return prefactor_ * std::exp(exponent);
}

GaussianForm GaussianForm::mirrored() const {
  return GaussianForm(a_, -b_, c_, prefactor_);
}

double GaussianForm::norm2() const {
  const double ar = a_.real();
  const double br = b_.real();
  return std::norm(prefactor_) * std::sqrt(kPi / (2.0 * ar)) *
         std::exp(2.0 * c_.real() + br * br / (2.0 * ar));
}

double GaussianForm::width() const { return 0.5 / std::sqrt(a_.real()); }

GaussianForm initialPacket(const PhysicsConfig& config) {
  const double s = config.sigma0;
  return GaussianForm(1.0 / (2.0 * s * s), 0.0, 0.0,
                      1.0 / std::sqrt(s * std::sqrt(kPi)));
}

GaussianForm applySlit(const GaussianForm& form, double center, double beta) {
  const double w = 1.0 / (2.0 * beta * beta);
  return GaussianForm(form.a() + w, form.b() + 2.0 * w * center,
                      form.c() - w * center * center, form.prefactor());
}

GaussianForm convolveChirp(const GaussianForm& form, double g) {
  // int exp(-A y^2 + B y) dy = sqrt(pi / A) exp(B^2 / 4A), Re(A) > 0, with
  // A = a - i g and B = b - 2 i g x.
  const Complex A = form.a() - kI * g;
  if (!(A.real() > 0.0)) {
    throw DegenerateError("Gaussian integral with Re(A) <= 0");
  }
  const Complex a = g * g / A - kI * g;
  const Complex b = -kI * g * form.b() / A;
  const Complex c = form.c() + form.b() * form.b() / (4.0 * A);
  return GaussianForm(a, b, c, form.prefactor() * std::sqrt(kPi / A));
}

GaussianForm propagate(const GaussianForm& form, double duration,
                       const PhysicsConfig& config) {
  if (!(duration > 0.0)) {
    throw DegenerateError("propagation duration must be positive");
  }
  const double g = config.mass / (2.0 * config.hbar * duration);
  const Complex kernel =
      std::sqrt(config.mass / (2.0 * kPi * kI * config.hbar * duration));
  const auto out = convolveChirp(form, g);
  return GaussianForm(out.a(), out.b(), out.c(), out.prefactor() * kernel);
}

GaussianForm loopedKernelPropagate(const GaussianForm& form,
                                   double interiorSlitCenter,
                                   const PhysicsConfig& config) {
  const double loopTime = derive(config).epsilon + config.eta;
  const double g = config.mass / (4.0 * config.hbar * loopTime);
  const Complex kernel =
      std::sqrt(config.mass / (4.0 * kPi * kI * config.hbar * loopTime));
  GaussianForm f(form.a(), form.b(), form.c(), form.prefactor() * kernel);
  f = convolveChirp(f, g);
  f = applySlit(f, interiorSlitCenter, config.beta);
  return convolveChirp(f, g);
}

double slitCenter(Slit slit, const PhysicsConfig& config) {
  return slit == Slit::One ? 0.5 * config.d : -0.5 * config.d;
}

GaussianForm chainNonExotic(Slit which, const PhysicsConfig& config) {
  config.validate();
  auto f = propagate(initialPacket(config), config.t, config);
  f = applySlit(f, slitCenter(which, config), config.beta);
  return propagate(f, config.tau, config);
}

GaussianForm chainExotic(Loop loop, const PhysicsConfig& config) {
  config.validate();
  // Loop 12 visits slit 1 (+d/2), slit 2 (-d/2), slit 1; loop 21 mirrors it.
  const double outer = loop == Loop::L12 ? 0.5 * config.d : -0.5 * config.d;
  auto f = propagate(initialPacket(config), config.t + config.eta, config);
  f = applySlit(f, outer, config.beta);
  f = loopedKernelPropagate(f, -outer, config);
  f = applySlit(f, outer, config.beta);
  return propagate(f, config.tau, config);
}

}  // namespace eltsim
