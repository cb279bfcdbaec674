#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orlicz_lab/measure.hpp"

namespace orlicz_lab {

/// Symmetric sparse matrix in CSR form (both triangles stored).
struct SparseSym {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  double rayleigh_numerator(const std::vector<double>& x) const;  // x^T A x
  double entry(int i, int j) const;
};

enum class EllipticityTag { Uniform, A2Degenerate, Custom };

/// Scalar-coefficient degenerate elliptic operator -div(Q grad .) on an
/// interval or radial-ball domain with homogeneous Dirichlet data.  The
/// domain must use vertex placement; the coefficient is evaluated at cell
/// interfaces (midpoints between adjacent nodes) during assembly.
struct EllipticOperatorSpec {
  WeightedDomain dom;
  std::function<double(double)> Q;
  std::vector<double> Q_nodes;
  double k_bound = 1.0;
  EllipticityTag tag = EllipticityTag::Custom;

  static EllipticOperatorSpec uniform(WeightedDomain dom);
  static EllipticOperatorSpec a2_degenerate(WeightedDomain dom, double alpha);
  static EllipticOperatorSpec custom(WeightedDomain dom,
                                     std::function<double(double)> Q,
                                     double k_bound);
  void validate_bounds() const;  // Q >= 0 nodewise, |Q|/v <= k_bound
};

/// Discretized weak form: full (all nodes) and boundary-eliminated systems.
struct DiscreteSystem {
  SparseSym stiffness;           // all nodes; rows sum to zero
  std::vector<double> load;      // int f psi_i v dx (element-midpoint rule)
  std::vector<bool> boundary;    // Dirichlet mask
  SparseSym stiffness_reduced;   // interior only
  std::vector<double> load_reduced;
  std::vector<int> interior;     // reduced index -> node index
};

DiscreteSystem assemble(const EllipticOperatorSpec& spec, const ScalarField& f);

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients on the reduced system; the
/// returned field has zeros at Dirichlet nodes.  Deterministic: fixed
/// iteration order, no randomness.
ScalarField solve(const DiscreteSystem& sys, double rtol,
                  SolveStats* stats = nullptr, int max_iterations = 0);

/// max over test functions psi of  psi^T (K u) - psi^T b,  with K, b the
/// assembled forms for data f.  A value <= tol certifies u as a discrete
/// subsolution against the given (nonnegative) tests.
double weak_residual(const EllipticOperatorSpec& spec, const ScalarField& u,
                     const ScalarField& f,
                     const std::vector<ScalarField>& tests,
                     bool require_nonnegative_tests = false);

/// ||psi||_{2 sigma, v} / (int |sqrt(Q) grad psi|^2 dx)^{1/2}.
double sobolev_quotient(const EllipticOperatorSpec& spec,
                        const ScalarField& psi, double sigma);

struct SobolevReport {
  double sigma = 0.0;
  double C0_lower = 0.0;
  std::string argmax_id;
};

/// Certified lower bound for the Sobolev constant C0: max quotient over a
/// test family.  Monotone under family enlargement.
SobolevReport estimate_C0(const EllipticOperatorSpec& spec, double sigma,
                          const std::vector<ScalarField>& family,
                          const std::vector<std::string>& names);

/// Built-in family: tents, truncated powers (1-r/R)^beta, the parabola
/// 1-(r/R)^2 and truncated inverse-sqrt bubbles.
void builtin_test_family(const WeightedDomain& dom,
                         std::vector<ScalarField>& family,
                         std::vector<std::string>& names);

SobolevReport estimate_C0(const EllipticOperatorSpec& spec, double sigma);

/// w = e^{alpha u} - 1 nodewise; requires u >= 0 and alpha*max(u) <= 700.
ScalarField exp_transform(const ScalarField& u, double alpha);

struct ExpIntegrabilityReport {
  double gamma = 0.0;
  double integral = 0.0;
  double budget = 0.0;
  bool budget_valid = false;  // gamma inside (0, 4/C0^2)
};

/// Budget M(gamma, C0, v(Omega)) assembled from the a-priori estimate
///   ||psi||_{2 sigma} <= C0^2 gamma / (2 (1 - C0^2 gamma / 4)) v(Omega)^{1/(2 sigma)}.
double exp_budget(double gamma, double C0, double sigma, double v_omega);

ExpIntegrabilityReport exp_integral(const WeightedDomain& dom,
                                    const ScalarField& u, double gamma,
                                    double C0, double sigma);

}  // namespace orlicz_lab
