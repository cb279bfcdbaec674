#include "orlicz_lab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz_lab {

namespace {

// (value, mass) pairs with exact duplicates merged; indicator-like fields
// collapse to a single modular term this way.
struct Atoms {
  std::vector<double> value;
  std::vector<double> mass;
  double vmax = 0.0;
};

Atoms collect_atoms(const WeightedDomain& dom, const ScalarField& f) {
  validate_field(dom, f);
  std::vector<std::pair<double, double>> raw;
  raw.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    const double w = dom.weight[i] * dom.cell_volumes[i];
    const double a = std::fabs(f[i]);
    if (w > 0.0 && a > 0.0) raw.emplace_back(a, w);
  }
  std::sort(raw.begin(), raw.end());
  Atoms atoms;
  for (const auto& [a, w] : raw) {
    if (!atoms.value.empty() && atoms.value.back() == a)
      atoms.mass.back() += w;
    else {
      atoms.value.push_back(a);
      atoms.mass.push_back(w);
    }
  }
  if (!atoms.value.empty()) atoms.vmax = atoms.value.back();
  return atoms;
}

double modular(const Atoms& atoms, const YoungFn& A, double lambda) {
  double s = 0.0;
  for (size_t i = 0; i < atoms.value.size(); ++i)
    s += atoms.mass[i] * A(atoms.value[i] / lambda);
  return s;
}

NormReport luxemburg_core(const Atoms& atoms, const YoungFn& A,
                          double hi_seed) {
  NormReport rep;
  if (atoms.value.empty()) return rep;  // ||0|| = 0

  double hi = hi_seed > 0.0 ? hi_seed : atoms.vmax;
  int its = 0;
  while (modular(atoms, A, hi) > 1.0) {
    hi *= 2.0;
    if (++its > 400) throw std::runtime_error("luxemburg_norm: no upper bracket");
  }
  double lo = hi * 0x1p-60;
  while (modular(atoms, A, lo) <= 1.0) {
    hi = lo;
    lo *= 0x1p-60;
    if (++its > 800) throw std::runtime_error("luxemburg_norm: no lower bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ++its;
    if (modular(atoms, A, mid) > 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) break;
  }
  // hi is the smallest bracketed lambda with modular <= 1
  rep.value = hi;
  rep.modular_at_value = modular(atoms, A, hi);
  rep.iterations = its;
  return rep;
}

}  // namespace

NormReport luxemburg_norm(const WeightedDomain& dom, const ScalarField& f,
                          const YoungFn& A) {
  return luxemburg_core(collect_atoms(dom, f), A, 0.0);
}

NormReport luxemburg_norm(const WeightedDomain& dom, const ScalarField& f,
                          const YoungParams& A) {
  validate(A);
  const Atoms atoms = collect_atoms(dom, f);
  double seed = 0.0;
  if (!atoms.value.empty()) {
    const double ainv = young_inverse(A, 1.0 / dom.total_mass);
    seed = atoms.vmax * std::max(1.0, 1.0 / ainv);
  }
  return luxemburg_core(atoms, [&](double t) { return young_eval(A, t); },
                        seed);
}

NormReport luxemburg_conjugate_norm(const WeightedDomain& dom,
                                    const ScalarField& f,
                                    const YoungParams& A) {
  validate(A);
  return luxemburg_core(collect_atoms(dom, f),
                        [&](double t) { return conjugate_eval(A, t); }, 0.0);
}

HolderReport holder_pairing(const WeightedDomain& dom, const ScalarField& f,
                            const ScalarField& g, const YoungParams& A) {
  validate_field(dom, f);
  validate_field(dom, g);
  ScalarField prod(f.size());
  for (size_t i = 0; i < f.size(); ++i) prod[i] = std::fabs(f[i] * g[i]);
  HolderReport rep;
  rep.lhs = integrate(dom, prod);
  rep.rhs = 2.0 * luxemburg_norm(dom, f, A).value *
            luxemburg_conjugate_norm(dom, g, A).value;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-9) + 1e-300;
  return rep;
}

double indicator_norm(const YoungParams& B, double mass) {
  validate(B);
  if (!(mass > 0.0)) throw std::domain_error("indicator_norm: mass must be > 0");
  return 1.0 / conjugate_inverse(B, 1.0 / mass);
}

NormChainReport norm_chain_check(const WeightedDomain& dom,
                                 const ScalarField& f, double p1, double q1,
                                 double p2, double q2) {
  if (!(p1 >= 1.0) || !(p1 <= p2))
    throw std::domain_error("norm_chain_check: need 1 <= p1 <= p2");
  if (!(q1 >= 0.0) || !(q1 <= q2))
    throw std::domain_error("norm_chain_check: need 0 <= q1 <= q2");
  NormChainReport rep;
  rep.norm_p1 = lp_norm(dom, f, p1);
  rep.norm_p2 = lp_norm(dom, f, p2);
  // Luxemburg gauges need p > 1 to be in the power-log family; p = 1 with
  // q = 0 degenerates to the L^1 norm which lp_norm already covers.
  const auto lux = [&](double p, double q) {
    if (p > 1.0) return luxemburg_norm(dom, f, YoungParams{p, q}).value;
    if (q == 0.0) return lp_norm(dom, f, 1.0);
    return luxemburg_norm(dom, f, [p, q](double t) {
             return std::pow(t, p) *
                    std::pow(std::log(std::exp(1.0) + t), q);
           })
        .value;
  };
  rep.norm_A = lux(p1, q1);
  rep.norm_B = lux(p2, q2);
  auto ratio = [](double a, double b) { return b > 0.0 ? a / b : 0.0; };
  rep.c_p1_vs_A = ratio(rep.norm_p1, rep.norm_A);
  rep.c_A_vs_p2 = ratio(rep.norm_A, rep.norm_p2);
  rep.c_p2_vs_B = ratio(rep.norm_p2, rep.norm_B);
  return rep;
}

}  // namespace orlicz_lab
