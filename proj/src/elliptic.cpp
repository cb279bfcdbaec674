#include "orlicz_lab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

void SparseSym::apply(const std::vector<double>& x,
                      std::vector<double>& y) const {
  y.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[static_cast<size_t>(i)];
         k < row_ptr[static_cast<size_t>(i) + 1]; ++k)
      s += val[static_cast<size_t>(k)] * x[static_cast<size_t>(col[static_cast<size_t>(k)])];
    y[static_cast<size_t>(i)] = s;
  }
}

double SparseSym::rayleigh_numerator(const std::vector<double>& x) const {
  std::vector<double> y;
  apply(x, y);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
  return s;
}

double SparseSym::entry(int i, int j) const {
  for (int k = row_ptr[static_cast<size_t>(i)];
       k < row_ptr[static_cast<size_t>(i) + 1]; ++k)
    if (col[static_cast<size_t>(k)] == j) return val[static_cast<size_t>(k)];
  return 0.0;
}

namespace {

SparseSym from_triplets(int n, const std::map<std::pair<int, int>, double>& t) {
  SparseSym m;
  m.n = n;
  m.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
  for (const auto& [ij, v] : t) m.row_ptr[static_cast<size_t>(ij.first) + 1]++;
  for (int i = 0; i < n; ++i)
    m.row_ptr[static_cast<size_t>(i) + 1] += m.row_ptr[static_cast<size_t>(i)];
  m.col.resize(t.size());
  m.val.resize(t.size());
  std::vector<int> cursor(m.row_ptr.begin(), m.row_ptr.end() - 1);
  for (const auto& [ij, v] : t) {
    const int k = cursor[static_cast<size_t>(ij.first)]++;
    m.col[static_cast<size_t>(k)] = ij.second;
    m.val[static_cast<size_t>(k)] = v;
  }
  return m;
}

void require_vertex_1d(const WeightedDomain& dom, const char* who) {
  if (dom.placement != NodePlacement::Vertex)
    throw std::invalid_argument(std::string(who) +
                                ": domain must use vertex placement");
  if (dom.geometry != GeometryKind::Interval &&
      dom.geometry != GeometryKind::RadialBall)
    throw std::invalid_argument(std::string(who) +
                                ": interval or radial-ball domains only");
  if (dom.size() < 3)
    throw std::invalid_argument(std::string(who) + ": need >= 3 nodes");
}

}  // namespace

EllipticOperatorSpec EllipticOperatorSpec::uniform(WeightedDomain dom) {
  EllipticOperatorSpec s;
  s.dom = std::move(dom);
  s.Q = [](double) { return 1.0; };
  s.k_bound = 1.0;
  s.tag = EllipticityTag::Uniform;
  s.Q_nodes.assign(s.dom.size(), 1.0);
  s.validate_bounds();
  return s;
}

EllipticOperatorSpec EllipticOperatorSpec::a2_degenerate(WeightedDomain dom,
                                                         double alpha) {
  EllipticOperatorSpec s;
  s.dom = std::move(dom);
  s.Q = [alpha](double x) { return std::pow(std::fabs(x), alpha); };
  s.k_bound = 1.0;
  s.tag = EllipticityTag::A2Degenerate;
  s.Q_nodes.reserve(s.dom.size());
  // match the domain's weight samples so |Q|/v = 1 holds nodewise
  for (size_t i = 0; i < s.dom.size(); ++i) s.Q_nodes.push_back(s.dom.weight[i]);
  s.validate_bounds();
  return s;
}

EllipticOperatorSpec EllipticOperatorSpec::custom(
    WeightedDomain dom, std::function<double(double)> Q, double k_bound) {
  EllipticOperatorSpec s;
  s.dom = std::move(dom);
  s.Q = std::move(Q);
  s.k_bound = k_bound;
  s.tag = EllipticityTag::Custom;
  s.Q_nodes.reserve(s.dom.size());
  for (double x : s.dom.nodes) s.Q_nodes.push_back(s.Q(x));
  s.validate_bounds();
  return s;
}

void EllipticOperatorSpec::validate_bounds() const {
  for (size_t i = 0; i < Q_nodes.size(); ++i) {
    if (!(Q_nodes[i] >= 0.0))
      throw std::invalid_argument("EllipticOperatorSpec: Q has a negative value");
    if (dom.weight[i] > 0.0 && Q_nodes[i] > k_bound * dom.weight[i] * (1.0 + 1e-12))
      throw std::invalid_argument(
          "EllipticOperatorSpec: |Q| <= k v violated at a node");
  }
}

DiscreteSystem assemble(const EllipticOperatorSpec& spec,
                        const ScalarField& f) {
  const WeightedDomain& dom = spec.dom;
  require_vertex_1d(dom, "assemble");
  validate_field(dom, f);

  const size_t n = dom.size();
  DiscreteSystem sys;
  sys.boundary.assign(n, false);
  if (dom.geometry == GeometryKind::Interval) {
    sys.boundary.front() = true;
    sys.boundary.back() = true;
  } else {
    sys.boundary.back() = true;  // r = R; r = 0 is a free symmetry node
  }

  // Conservative flux form: the coefficient and the geometric density
  // r^{n-1} are sampled at the interface between adjacent nodes, and the
  // load is lumped over the exact dual-cell volumes.  On meshes whose dual
  // cells tile the domain this balances fluxes exactly for quadratic
  // solutions, cell by cell.
  const int gn = dom.geometry == GeometryKind::Interval ? 1 : dom.ambient_dim;
  const double gfac =
      dom.geometry == GeometryKind::Interval ? 1.0 : unit_sphere_area(gn);
  std::map<std::pair<int, int>, double> trip;
  for (size_t e = 0; e + 1 < n; ++e) {
    const double x0 = dom.nodes[e], x1 = dom.nodes[e + 1];
    const double h = x1 - x0;
    const double m = 0.5 * (x0 + x1);
    const double qm = spec.Q(m);
    if (!(qm >= 0.0))
      throw std::invalid_argument("assemble: Q negative at a cell interface");
    const double w = gfac * qm * std::pow(m, gn - 1) / h;
    const int i = static_cast<int>(e), j = static_cast<int>(e) + 1;
    trip[{i, i}] += w;
    trip[{j, j}] += w;
    trip[{i, j}] -= w;
    trip[{j, i}] -= w;
  }
  sys.stiffness = from_triplets(static_cast<int>(n), trip);
  sys.load.resize(n);
  for (size_t i = 0; i < n; ++i)
    sys.load[i] = f[i] * dom.weight[i] * dom.cell_volumes[i];

  // eliminate Dirichlet rows/columns
  std::vector<int> node_to_red(n, -1);
  for (size_t i = 0; i < n; ++i)
    if (!sys.boundary[i]) {
      node_to_red[i] = static_cast<int>(sys.interior.size());
      sys.interior.push_back(static_cast<int>(i));
    }
  std::map<std::pair<int, int>, double> rtrip;
  for (int i = 0; i < sys.stiffness.n; ++i) {
    if (sys.boundary[static_cast<size_t>(i)]) continue;
    for (int k = sys.stiffness.row_ptr[static_cast<size_t>(i)];
         k < sys.stiffness.row_ptr[static_cast<size_t>(i) + 1]; ++k) {
      const int j = sys.stiffness.col[static_cast<size_t>(k)];
      if (sys.boundary[static_cast<size_t>(j)]) continue;
      rtrip[{node_to_red[static_cast<size_t>(i)],
             node_to_red[static_cast<size_t>(j)]}] =
          sys.stiffness.val[static_cast<size_t>(k)];
    }
  }
  sys.stiffness_reduced =
      from_triplets(static_cast<int>(sys.interior.size()), rtrip);
  sys.load_reduced.reserve(sys.interior.size());
  for (int idx : sys.interior)
    sys.load_reduced.push_back(sys.load[static_cast<size_t>(idx)]);
  return sys;
}

ScalarField solve(const DiscreteSystem& sys, double rtol, SolveStats* stats,
                  int max_iterations) {
  if (!(rtol > 0.0) || rtol > 1e-4)
    throw std::domain_error("solve: rtol must lie in (0, 1e-4]");
  const SparseSym& A = sys.stiffness_reduced;
  const std::vector<double>& b = sys.load_reduced;
  const int n = A.n;
  const int maxit = max_iterations > 0 ? max_iterations
                                       : std::max(20000, 20 * n);

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += a[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
    return s;
  };

  std::vector<double> diag(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = A.entry(i, i);
    if (!(d > 0.0))
      throw solver_error("solve: singular diagonal (degenerate coefficient)", 0.0, 0);
    diag[static_cast<size_t>(i)] = d;
  }

  std::vector<double> x(static_cast<size_t>(n), 0.0);
  const double bnorm = std::sqrt(dot(b, b));
  SolveStats st;
  if (bnorm == 0.0) {
    if (stats) *stats = st;
  } else {
    std::vector<double> r = b, z(static_cast<size_t>(n)), p, q(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      z[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] / diag[static_cast<size_t>(i)];
    p = z;
    double rz = dot(r, z);
    int it = 0;
    double rel = 1.0;
    while (it < maxit) {
      ++it;
      A.apply(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0))
        throw solver_error("solve: CG breakdown (p^T A p <= 0)", rel, it);
      const double alpha = rz / pq;
      for (int i = 0; i < n; ++i) {
        x[static_cast<size_t>(i)] += alpha * p[static_cast<size_t>(i)];
        r[static_cast<size_t>(i)] -= alpha * q[static_cast<size_t>(i)];
      }
      rel = std::sqrt(dot(r, r)) / bnorm;
      if (rel <= rtol) break;
      for (int i = 0; i < n; ++i)
        z[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] / diag[static_cast<size_t>(i)];
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (int i = 0; i < n; ++i)
        p[static_cast<size_t>(i)] =
            z[static_cast<size_t>(i)] + beta * p[static_cast<size_t>(i)];
    }
    // recompute the true residual to guard against recurrence drift
    A.apply(x, q);
    double rn = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ri = b[static_cast<size_t>(i)] - q[static_cast<size_t>(i)];
      rn += ri * ri;
    }
    rel = std::sqrt(rn) / bnorm;
    st.iterations = it;
    st.rel_residual = rel;
    if (rel > 10.0 * rtol)
      throw solver_error("solve: CG did not converge", rel, it);
    if (stats) *stats = st;
  }

  ScalarField u(sys.boundary.size(), 0.0);
  for (size_t k = 0; k < sys.interior.size(); ++k)
    u[static_cast<size_t>(sys.interior[k])] = x[k];
  return u;
}

double weak_residual(const EllipticOperatorSpec& spec, const ScalarField& u,
                     const ScalarField& f,
                     const std::vector<ScalarField>& tests,
                     bool require_nonnegative_tests) {
  const DiscreteSystem sys = assemble(spec, f);
  validate_field(spec.dom, u);
  std::vector<double> Ku;
  sys.stiffness.apply(u, Ku);
  double worst = -std::numeric_limits<double>::infinity();
  if (tests.empty()) throw std::invalid_argument("weak_residual: no tests");
  for (const ScalarField& psi : tests) {
    validate_field(spec.dom, psi);
    if (require_nonnegative_tests)
      for (double t : psi)
        if (t < 0.0)
          throw std::invalid_argument("weak_residual: tests must be nonnegative");
    double gap = 0.0;
    for (size_t i = 0; i < psi.size(); ++i)
      gap += psi[i] * (Ku[i] - sys.load[i]);
    worst = std::max(worst, gap);
  }
  return worst;
}

double sobolev_quotient(const EllipticOperatorSpec& spec,
                        const ScalarField& psi, double sigma) {
  if (!(sigma > 1.0)) throw std::domain_error("sobolev_quotient: sigma > 1");
  validate_field(spec.dom, psi);
  const DiscreteSystem sys = assemble(spec, ScalarField(spec.dom.size(), 0.0));
  for (size_t i = 0; i < psi.size(); ++i)
    if (sys.boundary[i] && psi[i] != 0.0)
      throw std::invalid_argument("sobolev_quotient: psi must vanish on the boundary");
  const double energy = sys.stiffness.rayleigh_numerator(psi);
  if (!(energy > 0.0))
    throw std::domain_error("sobolev_quotient: zero gradient energy");
  return lp_norm(spec.dom, psi, 2.0 * sigma) / std::sqrt(energy);
}

SobolevReport estimate_C0(const EllipticOperatorSpec& spec, double sigma,
                          const std::vector<ScalarField>& family,
                          const std::vector<std::string>& names) {
  if (family.empty() || family.size() != names.size())
    throw std::invalid_argument("estimate_C0: bad family");
  SobolevReport rep;
  rep.sigma = sigma;
  for (size_t i = 0; i < family.size(); ++i) {
    const double q = sobolev_quotient(spec, family[i], sigma);
    if (q > rep.C0_lower) {
      rep.C0_lower = q;
      rep.argmax_id = names[i];
    }
  }
  return rep;
}

void builtin_test_family(const WeightedDomain& dom,
                         std::vector<ScalarField>& family,
                         std::vector<std::string>& names) {
  require_vertex_1d(dom, "builtin_test_family");
  const double a = dom.geometry == GeometryKind::Interval ? dom.lo : 0.0;
  const double b = dom.geometry == GeometryKind::Interval ? dom.hi : dom.radius;
  const double span = b - a;
  auto push = [&](const std::string& id, const WeightFn& fn) {
    ScalarField psi = sample(dom, fn);
    if (dom.geometry == GeometryKind::Interval) psi.front() = 0.0;
    psi.back() = 0.0;
    family.push_back(std::move(psi));
    names.push_back(id);
  };
  if (dom.geometry == GeometryKind::RadialBall) {
    const double R = b;
    for (double beta : {0.5, 1.0, 2.0})
      push("power_beta=" + std::to_string(beta), [R, beta](double r) {
        return std::pow(std::max(0.0, 1.0 - r / R), beta);
      });
    push("parabola", [R](double r) { return 1.0 - (r / R) * (r / R); });
    for (double eps : {0.1, 0.2, 0.4}) {
      const double e2 = eps * eps * R * R;
      push("bubble_eps=" + std::to_string(eps), [R, e2](double r) {
        return 1.0 / std::sqrt(e2 + r * r) - 1.0 / std::sqrt(e2 + R * R);
      });
    }
    for (double w : {0.25, 0.5, 0.75})
      push("tent_w=" + std::to_string(w), [R, w](double r) {
        return std::max(0.0, 1.0 - r / (w * R));
      });
  } else {
    for (double c : {0.25, 0.5, 0.75})
      for (double w : {0.2, 0.45}) {
        const double center = a + c * span, width = w * span;
        push("tent_c=" + std::to_string(c) + "_w=" + std::to_string(w),
             [center, width](double x) {
               return std::max(0.0, 1.0 - std::fabs(x - center) / width);
             });
      }
    push("bump", [a, span](double x) {
      const double t = (x - a) / span;
      return t * (1.0 - t);
    });
  }
}

SobolevReport estimate_C0(const EllipticOperatorSpec& spec, double sigma) {
  std::vector<ScalarField> family;
  std::vector<std::string> names;
  builtin_test_family(spec.dom, family, names);
  return estimate_C0(spec, sigma, family, names);
}

ScalarField exp_transform(const ScalarField& u, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("exp_transform: alpha must be > 0");
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::fabs(v));
  for (double v : u)
    if (v < -1e-9 * std::max(1.0, umax))
      throw std::domain_error("exp_transform: u must be nonnegative");
  if (alpha * umax > 700.0)
    throw std::range_error("exp_transform: alpha * max(u) > 700 would overflow");
  ScalarField w(u.size());
  for (size_t i = 0; i < u.size(); ++i)
    w[i] = std::expm1(alpha * std::max(0.0, u[i]));
  return w;
}

double exp_budget(double gamma, double C0, double sigma, double v_omega) {
  if (!(C0 > 0.0) || !(sigma > 1.0) || !(v_omega > 0.0))
    throw std::domain_error("exp_budget: bad parameters");
  if (!(gamma > 0.0) || !(gamma < 4.0 / (C0 * C0)))
    throw std::domain_error("exp_budget: gamma outside (0, 4/C0^2)");
  const double c2g = C0 * C0 * gamma;
  const double K = c2g / (2.0 * (1.0 - 0.25 * c2g)) *
                   std::pow(v_omega, 1.0 / (2.0 * sigma));
  return K * K * std::pow(v_omega, 1.0 - 1.0 / sigma) +
         2.0 * K * std::pow(v_omega, 1.0 - 1.0 / (2.0 * sigma)) + v_omega;
}

ExpIntegrabilityReport exp_integral(const WeightedDomain& dom,
                                    const ScalarField& u, double gamma,
                                    double C0, double sigma) {
  if (!(gamma > 0.0)) throw std::domain_error("exp_integral: gamma must be > 0");
  validate_field(dom, u);
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, v);
  if (gamma * umax > 700.0)
    throw std::range_error("exp_integral: gamma * max(u) > 700 would overflow");
  ScalarField g(u.size());
  for (size_t i = 0; i < u.size(); ++i) g[i] = std::exp(gamma * u[i]);
  ExpIntegrabilityReport rep;
  rep.gamma = gamma;
  rep.integral = integrate(dom, g);
  if (C0 > 0.0 && gamma < 4.0 / (C0 * C0)) {
    rep.budget = exp_budget(gamma, C0, sigma, dom.total_mass);
    rep.budget_valid = true;
  }
  return rep;
}

}  // namespace orlicz_lab
