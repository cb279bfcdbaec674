#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace orlicz_lab {

enum class GeometryKind { Interval, RadialBall, Box, Custom };
enum class NodePlacement { CellCentered, Vertex };

/// Nodal scalar data (f, u, test functions).  Lives on one domain; all
/// operations check the size against the domain they are given.
using ScalarField = std::vector<double>;

using WeightFn = std::function<double(double)>;

/// Discrete weighted domain: nodes, per-node cell volumes and weight
/// samples.  Radial balls are reduced to 1-D via the measure
/// omega_{n-1} r^{n-1} dr; cell volumes are exact shell/dual volumes so the
/// total geometric volume is reproduced to rounding.
struct WeightedDomain {
  GeometryKind geometry = GeometryKind::Custom;
  NodePlacement placement = NodePlacement::CellCentered;
  int ambient_dim = 1;
  double radius = 0.0;          // radial ball
  double lo = 0.0, hi = 0.0;    // interval endpoints

  std::vector<double> nodes;                   // 1-D coordinate (x or r)
  std::vector<std::vector<double>> box_nodes;  // box geometry only
  std::vector<double> cell_volumes;
  std::vector<double> weight;

  double total_mass = 0.0;        // v(Omega) = sum v_i vol_i
  double geometric_volume = 0.0;  // sum vol_i

  size_t size() const { return cell_volumes.size(); }

  static WeightedDomain interval(double a, double b, int cells,
                                 NodePlacement placement, const WeightFn& w);
  static WeightedDomain radial_ball(int n, double R, int cells,
                                    NodePlacement placement, const WeightFn& w);
  /// Geometrically graded radial shells: breakpoints r_min * 2^{j/cpo}
  /// up to R, plus the innermost shell [0, r_min].
  static WeightedDomain radial_ball_graded(int n, double R, double r_min,
                                           int cells_per_octave,
                                           NodePlacement placement,
                                           const WeightFn& w);
  /// From explicit radial shell breakpoints 0 = b_0 < ... < b_N = R.
  static WeightedDomain radial_shells(int n, const std::vector<double>& breaks,
                                      NodePlacement placement,
                                      const WeightFn& w);
  /// Mesh for Dirichlet solves: nodes at shell centers plus the boundary
  /// vertex R, so no node sits at the origin and the dual cells tile the
  /// ball exactly.
  static WeightedDomain radial_solver_mesh(int n, double R, int cells,
                                           const WeightFn& w);
  static WeightedDomain radial_solver_mesh_graded(int n, double R,
                                                  double r_min,
                                                  int cells_per_octave,
                                                  const WeightFn& w);
  /// Tensor-product cell-centered grid from per-axis breakpoints.
  static WeightedDomain box(
      const std::vector<std::vector<double>>& axis_breaks,
      const std::function<double(const std::vector<double>&)>& w);
  /// Raw samples (used when reloading CSV exports).
  static WeightedDomain from_samples(std::vector<double> nodes,
                                     std::vector<double> volumes,
                                     std::vector<double> weights);
};

/// Surface area of the unit sphere S^{n-1}.
double unit_sphere_area(int n);
/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

WeightFn weight_one();
WeightFn weight_powerlaw(double alpha);  // |x|^alpha

/// Sample a function of the 1-D coordinate on the domain nodes.
ScalarField sample(const WeightedDomain& dom, const WeightFn& f);

void validate_field(const WeightedDomain& dom, const ScalarField& f);

/// Weighted integral  sum_i g_i v_i vol_i.
double integrate(const WeightedDomain& dom, const ScalarField& g);
/// Unweighted (Lebesgue) integral  sum_i g_i vol_i.
double integrate_lebesgue(const WeightedDomain& dom, const ScalarField& g);

/// L^p(v) norm, p >= 1.
double lp_norm(const WeightedDomain& dom, const ScalarField& g, double p);
/// v-essential sup: max |g_i| over nodes with v_i vol_i > 0.
double linf_norm(const WeightedDomain& dom, const ScalarField& g);

/// v(S(r)) with S(r) = { u > r } counted by whole cells.
double level_set_measure(const WeightedDomain& dom, const ScalarField& u,
                         double r);

/// Max over the ball family of (avg_B v)(avg_B v^{-1}); a lower bound for
/// the Muckenhoupt A2 constant.  Returns +inf if v vanishes on a ball.
/// Radial domains only support balls centered at the origin.
double a2_constant_estimate(
    const WeightedDomain& dom,
    const std::vector<std::pair<double, double>>& ball_family);

void write_field_csv(const std::string& path, const WeightedDomain& dom,
                     const ScalarField& f);

struct FieldCsv {
  WeightedDomain domain;
  ScalarField field;
};
FieldCsv read_field_csv(const std::string& path);

}  // namespace orlicz_lab
