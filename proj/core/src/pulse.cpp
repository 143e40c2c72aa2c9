#include "ftnsdr/pulse.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "ftnsdr/errors.hpp"

namespace ftn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularGuard = 1e-8;

using Gauss = boost::math::quadrature::gauss<double, 30>;

// int_a^b f over `panels` equal sub-intervals.
template <class F>
double panel_integral(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) sum += Gauss::integrate(f, a + i * h, a + (i + 1) * h);
  return sum;
}

}  // namespace

RrcPulse::RrcPulse(double beta, double T) : beta_(beta), T_(T) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("rRC roll-off must lie in [0, 1]");
  if (!(T > 0.0)) throw ParameterError("symbol duration must be positive");
}

RrcPulse rrc_pulse(double beta, double T) { return RrcPulse(beta, T); }

double RrcPulse::operator()(double t) const {
  const double x = t / T_;
  const double scale = 1.0 / std::sqrt(T_);
  if (std::abs(x) < kSingularGuard) return scale * (1.0 - beta_ + 4.0 * beta_ / kPi);
  if (beta_ > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * beta_)) < kSingularGuard) {
    const double a = kPi / (4.0 * beta_);
    return scale * beta_ / std::sqrt(2.0) *
           ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
  }
  const double num = std::sin(kPi * x * (1.0 - beta_)) + 4.0 * beta_ * x * std::cos(kPi * x * (1.0 + beta_));
  const double den = kPi * x * (1.0 - 16.0 * beta_ * beta_ * x * x);
  return scale * num / den;
}

double RrcPulse::power_spectrum(double f) const {
  const double af = std::abs(f);
  const double f1 = (1.0 - beta_) / (2.0 * T_);
  const double f2 = (1.0 + beta_) / (2.0 * T_);
  if (af <= f1) return T_;
  if (af > f2) return 0.0;
  return 0.5 * T_ * (1.0 + std::cos(kPi * T_ / beta_ * (af - f1)));
}

double RrcPulse::spectrum(double f) const { return std::sqrt(power_spectrum(f)); }

double RrcPulse::autocorrelation(double t) const {
  const double f1 = (1.0 - beta_) / (2.0 * T_);
  const double f2 = (1.0 + beta_) / (2.0 * T_);
  const double w = 2.0 * kPi * t;
  auto integrand = [&](double f) { return power_spectrum(f) * std::cos(w * f); };
  // enough panels that each spans well under one oscillation period
  auto panels = [&](double a, double b) { return 1 + static_cast<int>(std::ceil(2.0 * std::abs(t) * (b - a))); };
  double sum = 0.0;
  if (f1 > 0.0) sum += panel_integral(integrand, 0.0, f1, panels(0.0, f1));
  if (beta_ > 0.0) sum += panel_integral(integrand, f1, f2, panels(f1, f2));
  return 2.0 * sum;
}

double RrcPulse::energy() const { return autocorrelation(0.0); }

}  // namespace ftn
