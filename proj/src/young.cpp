#include "orlicz_lab/young.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orlicz_lab {

void validate(const YoungParams& a) {
  if (!(a.p > 1.0)) throw std::domain_error("YoungParams: p must be > 1");
  if (!(a.q >= 0.0)) throw std::domain_error("YoungParams: q must be >= 0");
}

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("conjugate_exponent: p must be > 1");
  return p / (p - 1.0);
}

double young_eval(const YoungParams& a, double t) {
  validate(a);
  if (t < 0.0) throw std::domain_error("young_eval: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double l = std::log(std::exp(1.0) + t);
  return std::pow(t, a.p) * std::pow(l, a.q);
}

double young_derivative(const YoungParams& a, double t) {
  validate(a);
  if (t < 0.0) throw std::domain_error("young_derivative: t must be >= 0");
  if (t == 0.0) return 0.0;  // p > 1
  const double e = std::exp(1.0);
  const double l = std::log(e + t);
  // A'(t) = t^{p-1} L^q (p + q t / ((e+t) L)),  L = log(e+t) >= 1.
  return std::pow(t, a.p - 1.0) * std::pow(l, a.q) *
         (a.p + a.q * t / ((e + t) * l));
}

namespace {

// Bisection for an increasing g with g(0) = 0: returns t with g(t) = y.
template <typename G>
double invert_increasing(const G& g, double y, const char* who) {
  if (y < 0.0) throw std::domain_error(std::string(who) + ": negative input");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (g(hi) < y) {
    hi *= 2.0;
    if (++guard > 1100) throw std::domain_error(std::string(who) + ": no bracket");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double young_inverse(const YoungParams& a, double y) {
  validate(a);
  return invert_increasing([&](double t) { return young_eval(a, t); }, y,
                           "young_inverse");
}

double conjugate_eval(const YoungParams& a, double t) {
  validate(a);
  if (t < 0.0) throw std::domain_error("conjugate_eval: t must be >= 0");
  if (t == 0.0) return 0.0;
  // sup_s (s t - A(s)) attained where A'(s) = t; A' is increasing.
  const double s =
      invert_increasing([&](double u) { return young_derivative(a, u); }, t,
                        "conjugate_eval");
  const double v = s * t - young_eval(a, s);
  return v > 0.0 ? v : 0.0;
}

double conjugate_inverse(const YoungParams& a, double y) {
  validate(a);
  return invert_increasing([&](double t) { return conjugate_eval(a, t); }, y,
                           "conjugate_inverse");
}

double conjugate_inverse_closed(const YoungParams& a, double y) {
  validate(a);
  if (!(y > 0.0))
    throw std::domain_error("conjugate_inverse_closed: y must be > 0");
  const double pp = conjugate_exponent(a.p);
  const double l = std::log(std::exp(1.0) + y);
  return std::pow(y, 1.0 / pp) * std::pow(l, a.q / a.p);
}

double ConjugateForm::eval(double t) const {
  if (t < 0.0) throw std::domain_error("ConjugateForm::eval: t must be >= 0");
  if (kind == Kind::NumericLegendre) return conjugate_eval(params, t);
  if (t == 0.0) return 0.0;
  const double l = std::log(std::exp(1.0) + t);
  return std::pow(t, power_exponent) / std::pow(l, log_exponent);
}

ConjugateForm conjugate_form(const YoungParams& a, ConjugateForm::Kind kind) {
  validate(a);
  ConjugateForm f;
  f.kind = kind;
  f.params = a;
  f.power_exponent = conjugate_exponent(a.p);
  f.log_exponent = a.q * (f.power_exponent - 1.0);
  return f;
}

PreceqReport preceq_check(const YoungParams& a, const YoungParams& b,
                          const std::vector<double>& t_grid) {
  validate(a);
  validate(b);
  if (t_grid.empty()) throw std::invalid_argument("preceq_check: empty grid");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("preceq_check: grid must be increasing");

  const size_t n = t_grid.size();
  for (int j = 0; j <= 40; ++j) {
    const double c = std::ldexp(1.0, j);  // 2^j
    // smallest t0 is the grid point after the last violation
    ptrdiff_t last_viol = -1;
    for (size_t i = 0; i < n; ++i) {
      const double lhs = young_eval(a, t_grid[i]);
      const double rhs = young_eval(b, c * t_grid[i]);
      if (lhs > rhs * (1.0 + 1e-12)) last_viol = static_cast<ptrdiff_t>(i);
    }
    if (last_viol + 1 < static_cast<ptrdiff_t>(n))
      return {true, c, t_grid[static_cast<size_t>(last_viol + 1)]};
  }
  return {false, 0.0, 0.0};
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(static_cast<size_t>(count));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[static_cast<size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (count - 1.0));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace orlicz_lab
