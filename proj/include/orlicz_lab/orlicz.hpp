#pragma once

#include <functional>

#include "orlicz_lab/measure.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

/// Luxemburg norm together with its minimality witness.
struct NormReport {
  double value = 0.0;
  double modular_at_value = 0.0;  // integral of A(|f|/value) v dx
  int iterations = 0;
};

using YoungFn = std::function<double(double)>;

/// Luxemburg gauge inf{ lambda > 0 : int A(|f|/lambda) v dx <= 1 } for an
/// arbitrary Young-function evaluator.  On a discrete measure the modular is
/// continuous and strictly decreasing in lambda, so the infimum is the root
/// of modular(lambda) = 1, found by bracketing bisection.
NormReport luxemburg_norm(const WeightedDomain& dom, const ScalarField& f,
                          const YoungFn& A);

/// Same, for the power-log family (uses the A^{-1}(1/v(Omega)) bracket seed).
NormReport luxemburg_norm(const WeightedDomain& dom, const ScalarField& f,
                          const YoungParams& A);

/// Norm in the conjugate space L^{Abar}(v), with Abar the numeric Legendre
/// conjugate of A.
NormReport luxemburg_conjugate_norm(const WeightedDomain& dom,
                                    const ScalarField& f,
                                    const YoungParams& A);

struct HolderReport {
  double lhs = 0.0;  // int |f g| v dx
  double rhs = 0.0;  // 2 ||f||_A ||g||_{Abar}
  bool holds = false;
};

/// Orlicz-Holder pairing with the factor-2 bound.
HolderReport holder_pairing(const WeightedDomain& dom, const ScalarField& f,
                            const ScalarField& g, const YoungParams& A);

/// ||1_S||_{L^{Bbar}(v)} = 1 / Bbar^{-1}(1/v(S)) for a set of measure `mass`.
double indicator_norm(const YoungParams& B, double mass);

/// The four norms of the comparison chain
///   ||f||_{p1} <~ ||f||_{L^A} <~ ||f||_{p2} <~ ||f||_{L^B}
/// with A = t^{p1} log(e+t)^{q1}, B = t^{p2} log(e+t)^{q2}, plus the minimal
/// multiplicative constants realizing each step for this f.
struct NormChainReport {
  double norm_p1 = 0.0, norm_A = 0.0, norm_p2 = 0.0, norm_B = 0.0;
  double c_p1_vs_A = 0.0;  // norm_p1 / norm_A
  double c_A_vs_p2 = 0.0;  // norm_A / norm_p2
  double c_p2_vs_B = 0.0;  // norm_p2 / norm_B
};

NormChainReport norm_chain_check(const WeightedDomain& dom,
                                 const ScalarField& f, double p1, double q1,
                                 double p2, double q2);

}  // namespace orlicz_lab
