#include "orlicz_lab/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "orlicz_lab/orlicz.hpp"

namespace orlicz_lab {

IterationParams IterationParams::derive(double sigma, double q, double C,
                                        double f_norm_A) {
  if (!(sigma > 1.0)) throw std::domain_error("IterationParams: sigma > 1");
  if (!(C > 0.0)) throw std::domain_error("IterationParams: C > 0");
  const double sp = conjugate_exponent(sigma);
  IterationParams p;
  p.sigma = sigma;
  p.q = q;
  p.epsilon = q / sp - 1.0;
  if (!(p.epsilon > 0.0))
    throw std::domain_error("IterationParams: need q > sigma'");
  p.C = C;
  p.tau0 = tau0_threshold(C, p.epsilon);
  p.r0 = p.tau0 * f_norm_A;
  return p;
}

void IterationParams::validate() const {
  const double sp = conjugate_exponent(sigma);
  if (!((epsilon > 0.0) == (q > sp)))
    throw std::domain_error("IterationParams: epsilon > 0 iff q > sigma'");
  if (tau0 < tau0_threshold(C, epsilon) * (1.0 - 1e-12))
    throw std::domain_error("IterationParams: tau0 below threshold");
}

std::vector<double> levels(double r0, double epsilon, int K) {
  if (!(r0 > 0.0) || !(epsilon > 0.0) || K < 1)
    throw std::domain_error("levels: need r0 > 0, epsilon > 0, K >= 1");
  std::vector<double> c(static_cast<size_t>(K) + 1);
  for (int k = 1; k <= K; ++k)
    c[static_cast<size_t>(k)] = r0 * (1.0 - std::pow(k + 1.0, -epsilon));
  c[0] = 0.5 * c[1];
  return c;
}

double tau0_threshold(double C, double epsilon) {
  if (!(C > 0.0) || !(epsilon > 0.0))
    throw std::domain_error("tau0_threshold: need C > 0, epsilon > 0");
  const double e = std::exp(1.0);
  const double first =
      std::pow(2.0, epsilon + 1.0) * e * C / (std::pow(2.0, epsilon) - 1.0);
  const double second = e * C / epsilon;
  return std::max(first, second);
}

DeGiorgiLedger build_ledger(const WeightedDomain& dom, const ScalarField& u,
                            double r0, double epsilon, int K) {
  validate_field(dom, u);
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::fabs(v));
  for (double v : u)
    if (v < -1e-9 * std::max(1.0, umax))
      throw std::domain_error("build_ledger: u must be nonnegative");
  DeGiorgiLedger ledger;
  ledger.r0 = r0;
  const std::vector<double> c = levels(r0, epsilon, std::max(K, 1));
  for (int k = 0; k <= K; ++k) {
    LedgerRow row;
    row.k = k;
    row.C_k = c[static_cast<size_t>(k)];
    row.mu_k = level_set_measure(dom, u, row.C_k);
    row.m_k = row.mu_k > 0.0 ? std::log(1.0 / row.mu_k)
                             : std::numeric_limits<double>::infinity();
    ledger.rows.push_back(row);
    if (row.mu_k == 0.0) break;
  }
  return ledger;
}

std::string ledger_csv_string(const DeGiorgiLedger& ledger) {
  std::string out = "k,C_k,mu_k,m_k\n";
  char buf[256];
  for (const LedgerRow& r : ledger.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", r.k, r.C_k,
                  r.mu_k, r.m_k);
    out += buf;
  }
  return out;
}

void write_ledger_csv(const std::string& path, const DeGiorgiLedger& ledger) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << ledger_csv_string(ledger);
}

InductionReport induction_verify(double m0, long K, double sigma, double q,
                                 double epsilon, double tau0, double C) {
  if (!(m0 >= 2.0))
    throw std::domain_error("induction_verify: the proof requires m0 >= 2");
  if (!(sigma > 1.0)) throw std::domain_error("induction_verify: sigma > 1");
  const double sp = conjugate_exponent(sigma);
  if (!(q > sp))
    throw std::domain_error("induction_verify: hypothesis q > sigma' violated");
  if (std::fabs(epsilon - (q / sp - 1.0)) >
      1e-9 * std::max(1.0, std::fabs(epsilon)))
    throw std::invalid_argument(
        "induction_verify: epsilon must equal q/sigma' - 1");
  if (!(tau0 > 0.0) || !(C > 0.0))
    throw std::domain_error("induction_verify: tau0, C > 0");

  const double drift = 2.0 * sigma * std::log(epsilon * tau0 / C);
  const double gain = 2.0 * sigma * q / sp;
  InductionReport rep;
  double m = m0;
  for (long k = 0; k < K; ++k) {
    if (!(m > 0.0)) {
      rep.first_failure = k;
      return rep;
    }
    m = drift + gain * std::log(m / (k + 2.0)) + m;
    if (!(m >= m0 + static_cast<double>(k + 1))) {
      rep.first_failure = k + 1;
      return rep;
    }
  }
  rep.holds = true;
  return rep;
}

EmpiricalConstantReport empirical_constant(const WeightedDomain& dom,
                                           const ScalarField& u,
                                           const ScalarField& f,
                                           const YoungParams& A, double sigma,
                                           const std::vector<double>& r_grid) {
  if (!(sigma > 1.0)) throw std::domain_error("empirical_constant: sigma > 1");
  validate_field(dom, u);
  for (size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("empirical_constant: r_grid must increase");
  const double f_norm = luxemburg_norm(dom, f, A).value;
  if (!(f_norm > 0.0))
    throw std::domain_error("empirical_constant: ||f||_A must be positive");
  const double sp = conjugate_exponent(sigma);
  const double inv2s = 1.0 / (2.0 * sigma);

  EmpiricalConstantReport rep;
  rep.left_inequality_ok = true;
  std::vector<double> mu(r_grid.size());
  for (size_t i = 0; i < r_grid.size(); ++i)
    mu[i] = level_set_measure(dom, u, r_grid[i]);

  for (size_t i = 0; i < r_grid.size(); ++i) {
    if (!(mu[i] > 0.0)) continue;
    for (size_t j = i + 1; j < r_grid.size(); ++j) {
      const double r = r_grid[i], s = r_grid[j];
      const double lhs = std::pow(mu[j], inv2s) * (s - r);
      // left inequality: (u-r)_+ exceeds s-r on S(s)
      ScalarField phi(u.size(), 0.0);
      for (size_t t = 0; t < u.size(); ++t)
        if (u[t] > s) phi[t] = u[t] - r;
      const double truncated = lp_norm(dom, phi, 2.0 * sigma);
      if (lhs > truncated * (1.0 + 1e-12))
        rep.left_inequality_ok = false;
      const double cand = lhs *
                          std::pow(std::log(std::exp(1.0) + 1.0 / mu[i]),
                                   A.q / sp) /
                          (f_norm * std::pow(mu[i], inv2s));
      rep.C = std::max(rep.C, cand);
      ++rep.pairs_used;
    }
  }
  return rep;
}

ExponentTriple exponent_triple(double sigma, double theta) {
  if (!(sigma > 1.0)) throw std::domain_error("exponent_triple: sigma > 1");
  if (!(theta > 0.0) || !(theta < 1.0))
    throw std::domain_error("exponent_triple: theta in (0,1)");
  const double sp = conjugate_exponent(sigma);          // sigma'
  const double ts = conjugate_exponent(2.0 * sigma);    // (2 sigma)'
  const double cap = std::min({0.5, (sp - ts) / ts, 1.0 / sp});
  ExponentTriple t;
  t.beta = theta * cap;
  t.b = 2.0 * sigma * (1.0 - t.beta);
  t.b_bar = (1.0 + t.beta) * ts;
  const double rest = 1.0 - 1.0 / t.b - 1.0 / t.b_bar;
  t.p = 1.0 / rest;
  t.gamma_check = (2.0 * sigma / t.b_bar) *
                  ((sp - t.b_bar) / sp + (2.0 * sigma - t.b) / (2.0 * sigma));
  return t;
}

}  // namespace orlicz_lab
