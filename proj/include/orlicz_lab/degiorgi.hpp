#pragma once

#include <string>
#include <vector>

#include "orlicz_lab/measure.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

/// Parameters driving the level-set recursion.  epsilon = q/sigma' - 1 must
/// be positive (the standing hypothesis q > sigma'), and tau0 must clear
/// tau0_threshold(C, epsilon).
struct IterationParams {
  double sigma = 0.0;
  double q = 0.0;
  double epsilon = 0.0;
  double C = 0.0;
  double tau0 = 0.0;
  double r0 = 0.0;

  static IterationParams derive(double sigma, double q, double C,
                                double f_norm_A);
  void validate() const;
};

/// Levels C_k = r0 (1 - (k+1)^{-epsilon}) for k >= 1, C_0 = C_1 / 2.
/// Returns C_0 ... C_K.
std::vector<double> levels(double r0, double epsilon, int K);

/// max{ 2^{eps+1} e C / (2^eps - 1),  e C / eps }.
double tau0_threshold(double C, double epsilon);

struct LedgerRow {
  int k = 0;
  double C_k = 0.0;
  double mu_k = 0.0;
  double m_k = 0.0;  // log(1/mu_k); +inf when mu_k = 0
};

/// Level-set ledger (k, C_k, mu_k, m_k).  Truncates at the first row with
/// mu_k = 0 (the success condition v(S(r0)) = 0).
struct DeGiorgiLedger {
  std::vector<LedgerRow> rows;
  double r0 = 0.0;
};

DeGiorgiLedger build_ledger(const WeightedDomain& dom, const ScalarField& u,
                            double r0, double epsilon, int K);

std::string ledger_csv_string(const DeGiorgiLedger& ledger);
void write_ledger_csv(const std::string& path, const DeGiorgiLedger& ledger);

struct InductionReport {
  bool holds = false;
  long first_failure = -1;  // smallest k with m_k < m_0 + k, or -1
};

/// Iterates  m_{k+1} = 2 sigma log(eps tau0 / C)
///                     + (2 sigma q / sigma') log(m_k / (k+2)) + m_k
/// from m_0 and checks m_k >= m_0 + k for k <= K.
InductionReport induction_verify(double m0, long K, double sigma, double q,
                                 double epsilon, double tau0, double C);

struct EmpiricalConstantReport {
  double C = 0.0;
  bool left_inequality_ok = false;
  int pairs_used = 0;
};

/// Smallest constant making the level-set iteration inequality hold on the
/// given level grid:
///   C(r,s) = mu(s)^{1/2sigma} (s-r) log(e + 1/mu(r))^{q/sigma'}
///            / (||f||_{L^A} mu(r)^{1/2sigma}),
/// maximized over pairs r < s.  Also verifies the unconditional left
/// inequality  mu(s)^{1/2sigma} (s-r) <= || (u-r)_+ 1_{S(s)} ||_{2sigma, v}.
EmpiricalConstantReport empirical_constant(const WeightedDomain& dom,
                                           const ScalarField& u,
                                           const ScalarField& f,
                                           const YoungParams& A, double sigma,
                                           const std::vector<double>& r_grid);

/// Exponents of the three-way Holder split in the proof of the sharpened
/// bound: b = 2 sigma (1 - beta), bbar = (1 + beta) (2 sigma)', and p from
/// 1/b + 1/bbar + 1/p = 1.  beta is theta times the binding constraint
/// min{1/2, (sigma' - (2 sigma)')/(2 sigma)', 1/sigma'}.
struct ExponentTriple {
  double beta = 0.0;
  double b = 0.0;
  double b_bar = 0.0;
  double p = 0.0;
  double gamma_check = 0.0;  // evaluates to 1 identically
};

ExponentTriple exponent_triple(double sigma, double theta);

}  // namespace orlicz_lab
