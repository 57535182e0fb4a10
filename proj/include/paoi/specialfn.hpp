#pragma once

#include <stdexcept>
#include <string>

namespace paoi {

// Truncation control for infinite series evaluation.
struct SeriesControl {
  double rel_tol = 1e-12;
  int max_terms = 2000;

  void validate() const;
};

// A truncated series failed to reach rel_tol within max_terms. Carries the
// partial sum and the number of terms consumed.
class SeriesError : public std::runtime_error {
 public:
  SeriesError(const std::string& msg, double partial_sum, int terms_used)
      : std::runtime_error(msg), partial_sum_(partial_sum), terms_used_(terms_used) {}

  double partial_sum() const noexcept { return partial_sum_; }
  int terms_used() const noexcept { return terms_used_; }

 private:
  double partial_sum_;
  int terms_used_;
};

// ln Gamma(x) for x > 0. Lanczos approximation, relative error below 1e-12
// on [1e-3, 1e3].
double log_gamma(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b) for a,b > 0, evaluated through
// log_gamma to stay in range for large arguments.
double beta_fn(double a, double b);

// Gauss hypergeometric 2F1(a,b;c;z) for real parameters and z <= 0.
// z near zero uses the defining power series; larger |z| is mapped into
// [1/3, 1) by the Pfaff transformation
//   2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
// c must not be a non-positive integer.
double gauss_2f1(double a, double b, double c, double z,
                 const SeriesControl& ctl = {});

}  // namespace paoi
