#include "orlicz_lab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orlicz_lab {

namespace {

double kahan_sum(const std::vector<double>& terms) {
  double s = 0.0, c = 0.0;
  for (double t : terms) {
    const double y = t - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  return s;
}

struct Accum {
  double s = 0.0, c = 0.0;
  void add(double t) {
    const double y = t - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

void finalize(WeightedDomain& d) {
  Accum mass, vol;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!(d.cell_volumes[i] > 0.0))
      throw std::invalid_argument("WeightedDomain: cell volumes must be > 0");
    if (!(d.weight[i] >= 0.0) || !std::isfinite(d.weight[i]))
      throw std::invalid_argument("WeightedDomain: weights must be finite and >= 0");
    vol.add(d.cell_volumes[i]);
    mass.add(d.weight[i] * d.cell_volumes[i]);
  }
  d.geometric_volume = vol.s;
  d.total_mass = mass.s;
  if (!(d.total_mass > 0.0))
    throw std::invalid_argument("WeightedDomain: total mass v(Omega) must be > 0");
}

// Singular weights are never sampled at a zero coordinate; shift into the
// local cell by a quarter width instead.
double safe_sample_point(double x, double local_width) {
  if (x != 0.0) return x;
  return 0.25 * local_width;
}

}  // namespace

double unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("unit_sphere_area: n >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) { return unit_sphere_area(n) / n; }

WeightFn weight_one() {
  return [](double) { return 1.0; };
}

WeightFn weight_powerlaw(double alpha) {
  return [alpha](double x) { return std::pow(std::fabs(x), alpha); };
}

WeightedDomain WeightedDomain::interval(double a, double b, int cells,
                                        NodePlacement placement,
                                        const WeightFn& w) {
  if (!(b > a) || cells < 1)
    throw std::invalid_argument("interval: need b > a and cells >= 1");
  WeightedDomain d;
  d.geometry = GeometryKind::Interval;
  d.placement = placement;
  d.ambient_dim = 1;
  d.lo = a;
  d.hi = b;
  const double h = (b - a) / cells;
  if (placement == NodePlacement::CellCentered) {
    for (int i = 0; i < cells; ++i) {
      d.nodes.push_back(a + (i + 0.5) * h);
      d.cell_volumes.push_back(h);
    }
  } else {
    for (int j = 0; j <= cells; ++j) {
      d.nodes.push_back(a + j * h);
      d.cell_volumes.push_back((j == 0 || j == cells) ? 0.5 * h : h);
    }
  }
  for (double x : d.nodes) d.weight.push_back(w(safe_sample_point(x, h)));
  finalize(d);
  return d;
}

namespace {

// Radial domain from an arbitrary increasing node list ending at R; dual
// cells split halfway between neighbours and tile the ball exactly.
WeightedDomain radial_from_nodes(int n, double R, std::vector<double> nodes,
                                 const WeightFn& w) {
  const double omega = unit_sphere_area(n);
  WeightedDomain d;
  d.geometry = GeometryKind::RadialBall;
  d.placement = NodePlacement::Vertex;
  d.ambient_dim = n;
  d.radius = R;
  d.nodes = std::move(nodes);
  auto shell = [&](double r0, double r1) {
    return omega * (std::pow(r1, n) - std::pow(r0, n)) / n;
  };
  const size_t N = d.nodes.size();
  for (size_t j = 0; j < N; ++j) {
    const double lo = (j == 0) ? 0.0 : 0.5 * (d.nodes[j - 1] + d.nodes[j]);
    const double hi = (j + 1 == N) ? R : 0.5 * (d.nodes[j] + d.nodes[j + 1]);
    d.cell_volumes.push_back(shell(lo, hi));
  }
  const double h0 = d.nodes[0] > 0.0 ? d.nodes[0] : d.nodes[1] - d.nodes[0];
  for (double r : d.nodes) d.weight.push_back(w(safe_sample_point(r, h0)));
  finalize(d);
  return d;
}

std::vector<double> check_breaks(const std::vector<double>& breaks) {
  if (breaks.size() < 2 || breaks.front() != 0.0)
    throw std::invalid_argument("radial breaks must start at 0");
  for (size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw std::invalid_argument("radial breaks must increase");
  return breaks;
}

}  // namespace

WeightedDomain WeightedDomain::radial_shells(int n,
                                             const std::vector<double>& breaks_in,
                                             NodePlacement placement,
                                             const WeightFn& w) {
  if (n < 1) throw std::invalid_argument("radial_shells: n >= 1");
  const std::vector<double> breaks = check_breaks(breaks_in);
  const double R = breaks.back();
  const double omega = unit_sphere_area(n);
  const size_t N = breaks.size() - 1;

  if (placement == NodePlacement::Vertex)
    return radial_from_nodes(n, R, breaks, w);

  WeightedDomain d;
  d.geometry = GeometryKind::RadialBall;
  d.placement = placement;
  d.ambient_dim = n;
  d.radius = R;
  for (size_t i = 0; i < N; ++i) {
    d.nodes.push_back(0.5 * (breaks[i] + breaks[i + 1]));
    d.cell_volumes.push_back(
        omega * (std::pow(breaks[i + 1], n) - std::pow(breaks[i], n)) / n);
  }
  const double h0 = breaks[1] - breaks[0];
  for (double r : d.nodes) d.weight.push_back(w(safe_sample_point(r, h0)));
  finalize(d);
  return d;
}

namespace {

WeightedDomain solver_mesh_from_breaks(int n, const std::vector<double>& breaks,
                                       const WeightFn& w) {
  const double R = breaks.back();
  std::vector<double> nodes;
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    nodes.push_back(0.5 * (breaks[i] + breaks[i + 1]));
  nodes.push_back(R);
  return radial_from_nodes(n, R, std::move(nodes), w);
}

}  // namespace

WeightedDomain WeightedDomain::radial_solver_mesh(int n, double R, int cells,
                                                  const WeightFn& w) {
  if (!(R > 0.0) || cells < 2)
    throw std::invalid_argument("radial_solver_mesh: need R > 0, cells >= 2");
  std::vector<double> breaks(static_cast<size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i)
    breaks[static_cast<size_t>(i)] = R * i / cells;
  return solver_mesh_from_breaks(n, check_breaks(breaks), w);
}

WeightedDomain WeightedDomain::radial_solver_mesh_graded(int n, double R,
                                                         double r_min,
                                                         int cells_per_octave,
                                                         const WeightFn& w) {
  if (!(r_min > 0.0) || !(r_min < R) || cells_per_octave < 1)
    throw std::invalid_argument("radial_solver_mesh_graded: need 0 < r_min < R");
  std::vector<double> breaks{0.0, r_min};
  const double g = std::pow(2.0, 1.0 / cells_per_octave);
  double r = r_min;
  while (r * g < R * (1.0 - 1e-12)) {
    r *= g;
    breaks.push_back(r);
  }
  breaks.push_back(R);
  return solver_mesh_from_breaks(n, breaks, w);
}

WeightedDomain WeightedDomain::radial_ball(int n, double R, int cells,
                                           NodePlacement placement,
                                           const WeightFn& w) {
  if (!(R > 0.0) || cells < 1)
    throw std::invalid_argument("radial_ball: need R > 0, cells >= 1");
  std::vector<double> breaks(static_cast<size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i)
    breaks[static_cast<size_t>(i)] = R * i / cells;
  return radial_shells(n, breaks, placement, w);
}

WeightedDomain WeightedDomain::radial_ball_graded(int n, double R,
                                                  double r_min,
                                                  int cells_per_octave,
                                                  NodePlacement placement,
                                                  const WeightFn& w) {
  if (!(r_min > 0.0) || !(r_min < R) || cells_per_octave < 1)
    throw std::invalid_argument("radial_ball_graded: need 0 < r_min < R");
  std::vector<double> breaks{0.0, r_min};
  const double g = std::pow(2.0, 1.0 / cells_per_octave);
  double r = r_min;
  while (r * g < R * (1.0 - 1e-12)) {
    r *= g;
    breaks.push_back(r);
  }
  breaks.push_back(R);
  return radial_shells(n, breaks, placement, w);
}

WeightedDomain WeightedDomain::box(
    const std::vector<std::vector<double>>& axis_breaks,
    const std::function<double(const std::vector<double>&)>& w) {
  if (axis_breaks.empty()) throw std::invalid_argument("box: no axes");
  for (const auto& br : axis_breaks) {
    if (br.size() < 2) throw std::invalid_argument("box: axis needs >= 2 breaks");
    for (size_t i = 1; i < br.size(); ++i)
      if (!(br[i] > br[i - 1]))
        throw std::invalid_argument("box: breaks must increase");
  }
  WeightedDomain d;
  d.geometry = GeometryKind::Box;
  d.placement = NodePlacement::CellCentered;
  d.ambient_dim = static_cast<int>(axis_breaks.size());
  const size_t dim = axis_breaks.size();
  std::vector<size_t> counts(dim), idx(dim, 0);
  size_t total = 1;
  for (size_t a = 0; a < dim; ++a) {
    counts[a] = axis_breaks[a].size() - 1;
    total *= counts[a];
  }
  for (size_t flat = 0; flat < total; ++flat) {
    std::vector<double> c(dim);
    double vol = 1.0;
    for (size_t a = 0; a < dim; ++a) {
      const auto& br = axis_breaks[a];
      c[a] = 0.5 * (br[idx[a]] + br[idx[a] + 1]);
      vol *= br[idx[a] + 1] - br[idx[a]];
    }
    d.box_nodes.push_back(c);
    d.cell_volumes.push_back(vol);
    d.weight.push_back(w(c));
    for (size_t a = dim; a-- > 0;) {
      if (++idx[a] < counts[a]) break;
      idx[a] = 0;
    }
  }
  finalize(d);
  return d;
}

WeightedDomain WeightedDomain::from_samples(std::vector<double> nodes,
                                            std::vector<double> volumes,
                                            std::vector<double> weights) {
  if (nodes.size() != volumes.size() || nodes.size() != weights.size())
    throw std::invalid_argument("from_samples: size mismatch");
  WeightedDomain d;
  d.geometry = GeometryKind::Custom;
  d.nodes = std::move(nodes);
  d.cell_volumes = std::move(volumes);
  d.weight = std::move(weights);
  finalize(d);
  return d;
}

ScalarField sample(const WeightedDomain& dom, const WeightFn& f) {
  if (dom.geometry == GeometryKind::Box)
    throw std::invalid_argument("sample: box domains need a box sampler");
  ScalarField g;
  g.reserve(dom.size());
  for (double x : dom.nodes) g.push_back(f(x));
  return g;
}

void validate_field(const WeightedDomain& dom, const ScalarField& f) {
  if (f.size() != dom.size())
    throw std::invalid_argument("field does not live on this domain");
  for (double v : f)
    if (!std::isfinite(v))
      throw std::invalid_argument("field has non-finite values");
}

double integrate(const WeightedDomain& dom, const ScalarField& g) {
  validate_field(dom, g);
  Accum acc;
  for (size_t i = 0; i < g.size(); ++i)
    acc.add(g[i] * dom.weight[i] * dom.cell_volumes[i]);
  return acc.s;
}

double integrate_lebesgue(const WeightedDomain& dom, const ScalarField& g) {
  validate_field(dom, g);
  Accum acc;
  for (size_t i = 0; i < g.size(); ++i) acc.add(g[i] * dom.cell_volumes[i]);
  return acc.s;
}

double lp_norm(const WeightedDomain& dom, const ScalarField& g, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  validate_field(dom, g);
  Accum acc;
  for (size_t i = 0; i < g.size(); ++i)
    acc.add(std::pow(std::fabs(g[i]), p) * dom.weight[i] * dom.cell_volumes[i]);
  return std::pow(acc.s, 1.0 / p);
}

double linf_norm(const WeightedDomain& dom, const ScalarField& g) {
  validate_field(dom, g);
  double m = 0.0;
  for (size_t i = 0; i < g.size(); ++i)
    if (dom.weight[i] * dom.cell_volumes[i] > 0.0)
      m = std::max(m, std::fabs(g[i]));
  return m;
}

double level_set_measure(const WeightedDomain& dom, const ScalarField& u,
                         double r) {
  validate_field(dom, u);
  Accum acc;
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] > r) acc.add(dom.weight[i] * dom.cell_volumes[i]);
  return acc.s;
}

double a2_constant_estimate(
    const WeightedDomain& dom,
    const std::vector<std::pair<double, double>>& ball_family) {
  if (ball_family.empty())
    throw std::invalid_argument("a2_constant_estimate: empty ball family");
  if (dom.geometry == GeometryKind::Box)
    throw std::invalid_argument("a2_constant_estimate: box domains unsupported");
  double worst = 0.0;
  for (const auto& [center, rad] : ball_family) {
    if (!(rad > 0.0))
      throw std::invalid_argument("a2_constant_estimate: radius must be > 0");
    if (dom.geometry == GeometryKind::RadialBall && center != 0.0)
      throw std::invalid_argument(
          "a2_constant_estimate: radial domains support origin-centered balls only");
    std::vector<double> va, vi, vol;
    for (size_t i = 0; i < dom.size(); ++i) {
      const bool inside = dom.geometry == GeometryKind::RadialBall
                              ? dom.nodes[i] <= rad
                              : std::fabs(dom.nodes[i] - center) <= rad;
      if (!inside) continue;
      if (dom.weight[i] == 0.0) return std::numeric_limits<double>::infinity();
      va.push_back(dom.weight[i] * dom.cell_volumes[i]);
      vi.push_back(dom.cell_volumes[i] / dom.weight[i]);
      vol.push_back(dom.cell_volumes[i]);
    }
    if (vol.empty())
      throw std::invalid_argument(
          "a2_constant_estimate: ball resolves no cells");
    const double b = kahan_sum(vol);
    worst = std::max(worst, (kahan_sum(va) / b) * (kahan_sum(vi) / b));
  }
  return worst;
}

namespace {
std::string coord_name(const WeightedDomain& d) {
  return d.geometry == GeometryKind::RadialBall ? "r" : "x";
}
}  // namespace

void write_field_csv(const std::string& path, const WeightedDomain& dom,
                     const ScalarField& f) {
  validate_field(dom, f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  char buf[512];
  if (dom.geometry == GeometryKind::Box) {
    for (int a = 0; a < dom.ambient_dim; ++a) out << "x" << a << ",";
    out << "volume,weight,value\n";
    for (size_t i = 0; i < dom.size(); ++i) {
      for (double c : dom.box_nodes[i]) {
        std::snprintf(buf, sizeof buf, "%.17g,", c);
        out << buf;
      }
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", dom.cell_volumes[i],
                    dom.weight[i], f[i]);
      out << buf;
    }
    return;
  }
  out << coord_name(dom) << ",volume,weight,value\n";
  for (size_t i = 0; i < dom.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", dom.nodes[i],
                  dom.cell_volumes[i], dom.weight[i], f[i]);
    out << buf;
  }
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  size_t ncols = 1 + static_cast<size_t>(std::count(line.begin(), line.end(), ','));
  if (ncols < 4) throw std::runtime_error("field csv needs >= 4 columns");
  const size_t ncoord = ncols - 3;
  std::vector<double> nodes, vols, weights, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != ncols) throw std::runtime_error("ragged csv row");
    nodes.push_back(row[0]);  // first coordinate only
    vols.push_back(row[ncoord]);
    weights.push_back(row[ncoord + 1]);
    values.push_back(row[ncoord + 2]);
  }
  FieldCsv r;
  r.domain = WeightedDomain::from_samples(std::move(nodes), std::move(vols),
                                          std::move(weights));
  r.field = std::move(values);
  return r;
}

}  // namespace orlicz_lab
