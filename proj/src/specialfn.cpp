#include "paoi/specialfn.hpp"

#include <cmath>

namespace paoi {

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1e-3))
    throw std::invalid_argument("SeriesControl.rel_tol must lie in (0, 1e-3)");
  if (max_terms < 50)
    throw std::invalid_argument("SeriesControl.max_terms must be >= 50");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");

  // Shift small arguments up through ln G(x) = ln G(x+1) - ln x.
  double shift = 0.0;
  while (x < 0.5) {
    shift -= std::log(x);
    x += 1.0;
  }

  // Lanczos, g = 7, 9 coefficients.
  static const double kCoef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  const double g = 7.0;
  double a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (x - 1.0 + i);
  const double t = x - 0.5 + g;
  const double half_log_two_pi = 0.91893853320467274178;
  return shift + half_log_two_pi + (x - 0.5) * std::log(t) - t + std::log(a);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("beta_fn: both arguments must be positive");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace {

double series_2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) return sum;
  }
  throw SeriesError("gauss_2f1: series did not converge", sum, ctl.max_terms);
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  ctl.validate();
  if (c <= 0.0 && c == std::floor(c))
    throw std::domain_error("gauss_2f1: c must not be a non-positive integer");
  if (z > 0.0)
    throw std::domain_error("gauss_2f1: only z <= 0 is supported");

  if (z > -0.5) return series_2f1(a, b, c, z, ctl);
  // Pfaff transformation; z <= -1/2 maps to z/(z-1) in [1/3, 1), keeping
  // the series geometric even for arbitrarily large |z|.
  return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, z / (z - 1.0), ctl);
}

}  // namespace paoi
