#pragma once

#include <vector>

namespace orlicz_lab {

/// Parameters of the power-log Young function A(t) = t^p * log(e + t)^q.
/// p > 1 makes A superlinear; q >= 0 (q = 0 gives the plain power t^p).
struct YoungParams {
  double p = 2.0;
  double q = 0.0;
};

void validate(const YoungParams& a);

/// Holder-conjugate exponent p' with 1/p + 1/p' = 1.
double conjugate_exponent(double p);

/// A(t) = t^p log(e+t)^q.  Throws std::domain_error for t < 0.
double young_eval(const YoungParams& a, double t);

/// dA/dt, increasing on [0, inf) for valid parameters.
double young_derivative(const YoungParams& a, double t);

/// Monotone inverse: returns t with A(t) = y (bisection, 1e-12 relative).
double young_inverse(const YoungParams& a, double y);

/// Legendre conjugate  Abar(t) = sup_{s>0} (s*t - A(s)),
/// computed by root-finding the stationarity condition A'(s) = t.
double conjugate_eval(const YoungParams& a, double t);

/// Monotone inverse of the numeric Legendre conjugate.
double conjugate_inverse(const YoungParams& a, double y);

/// Closed-form equivalent of Abar^{-1}:  y^{1/p'} * log(e+y)^{q/p}.
/// Defined for y > 0 only.
double conjugate_inverse_closed(const YoungParams& a, double y);

/// Displayed closed form of the conjugate,  t^{p'} / log(e+t)^{q(p'-1)}.
/// Only equivalent to conjugate_eval up to two-sided constants for t >= 2.
struct ConjugateForm {
  enum class Kind { NumericLegendre, ClosedForm };
  Kind kind = Kind::ClosedForm;
  YoungParams params;
  double power_exponent = 0.0;  // p'
  double log_exponent = 0.0;    // q * (p' - 1)

  double eval(double t) const;
};

ConjugateForm conjugate_form(const YoungParams& a, ConjugateForm::Kind kind);

/// Result of the pointwise comparison A(t) <= B(c*t) for t >= t0.
struct PreceqReport {
  bool holds = false;
  double c = 0.0;
  double t0 = 0.0;
};

/// Searches c in {2^j : 0 <= j <= 40} (ascending) and the smallest grid
/// point t0 such that A(t) <= B(c*t) for every sampled t >= t0.
PreceqReport preceq_check(const YoungParams& a, const YoungParams& b,
                          const std::vector<double>& t_grid);

/// Log-uniform grid with `count` points covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace orlicz_lab
