#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dwrates/geom.hpp"
#include "dwrates/semigroups.hpp"

namespace dw {

struct HMEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
  double shell_eps = 0.0;
};

// A closed subset of a domain boundary. Arcs run counterclockwise from a to b.
struct BoundarySet {
  enum Kind { disk_arc, boundary_ray, radial_slit, vertical_segment, polyline, whole } kind = whole;
  double a = 0.0, b = 0.0;  // arc angles; ray tip x0 (a) and side (b = -1 left, +1 right)
  std::vector<Cx> points;   // slit, segment and polyline vertices

  static BoundarySet arc(double theta1, double theta2);
  static BoundarySet arc_of_diameter(double d);  // centered at angle 0
  static BoundarySet ray_left(double x0);         // (-inf, x0]
  static BoundarySet ray_right(double x0);        // [x0, inf)
  static BoundarySet slit(double r, double angle);  // [r e^{i angle}, e^{i angle}]
  static BoundarySet vertical(double x, double y0, double y1);
  static BoundarySet path(std::vector<Cx> vertices);
  static BoundarySet everything();

  // Euclidean distance from a boundary point to the set.
  double distance(Cx p) const;
};

enum class DomainKind { disk, slit_disk, upper_halfplane, halfplane_minus_ray, catalog };

// Simply connected domains the walk-on-spheres estimator can sample.
class WosDomain {
 public:
  static WosDomain disk();
  static WosDomain slit_disk(double r, double angle = 0.0);
  static WosDomain upper_halfplane();
  // H minus the horizontal ray {x + i y0 : x >= x0}.
  static WosDomain halfplane_minus_ray(double y0, double x0);
  static WosDomain catalog(const SemigroupModel& s);

  DomainKind kind() const { return kind_; }
  bool contains(Cx z) const;
  double delta(Cx z) const;
  Cx nearest(Cx z) const;

 private:
  DomainKind kind_ = DomainKind::disk;
  double r_ = 0.0, angle_ = 0.0, y0_ = 0.0, x0_ = 0.0;
  std::optional<DomainDescriptor> desc_;
};

// Closed forms: disk with an arc, disk slit along E with E itself (z on the slit's
// axis, on the far side of the tip), upper half-plane with a boundary ray.
double hm_exact(DomainKind domain, Cx z, const BoundarySet& E);

// Walks split across `workers` threads; the result is reproducible for a fixed seed
// and worker count.
HMEstimate hm_wos(const WosDomain& domain, Cx z, const BoundarySet& E, std::size_t n = 200000,
                  double eps = 1e-4, std::uint64_t seed = 1, unsigned workers = 1);

double diameter_lower_bound(double d);
double extremal_rectangle(double a, double b);
double serial_lower_bound(const std::vector<std::pair<double, double>>& pieces);
double beurling_upper(double lambda_ext);
// Integral of ds / theta(s) over [x0, x1].
double strip_module(const std::function<double(double)>& theta, double x0, double x1);

}  // namespace dw
