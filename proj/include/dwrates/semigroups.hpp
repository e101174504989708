#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dwrates/geom.hpp"

namespace dw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;
// Points closer than this to a cut or slit are treated as outside.
inline constexpr double kCutTol = 1e-12;

enum class Kind {
  hyperbolic_group,
  parabolic_group,
  koebe,
  sector,
  slit_halfplane,
  slit_strip,
  elliptic
};

enum class Classification { elliptic, hyperbolic, parabolic_positive, parabolic_zero };
enum class PetalType { hyperbolic, parabolic };
enum class Direction { forward, backward };

std::string to_string(Kind k);
std::string to_string(Classification c);
std::string to_string(PetalType p);
std::string to_string(Direction d);

// Parabolic petal image: {Im > alpha} (side = +1) or {Im < alpha} (side = -1).
// Hyperbolic petal image: the strip {alpha < Im < alpha - pi/nu}.
// Levels are in raw Koenigs coordinates; for the elliptic entry they refer to
// the Koenigs map of the lifted semigroup.
struct Petal {
  PetalType type = PetalType::parabolic;
  Cx sigma;
  double nu = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.0;
  int side = 1;
  bool verified = true;
  std::string image;
};

struct BoundaryPiece {
  enum Shape { segment, ray, line } shape = segment;
  Cx p;    // start point (segment, ray) or a point on the line
  Cx q;    // end point (segment) or unit direction (ray, line)
};

enum class Geometry { strip, halfplane, slit_plane, sector, stepped_halfplane, slit_strip };

class DomainDescriptor {
 public:
  Geometry geometry = Geometry::halfplane;
  double width = 0.0;   // strip width
  double cut = 0.0;     // slit-plane cut tip: C \ (-inf, cut]
  double theta = 0.0;   // sector opening below the real axis
  std::vector<BoundaryPiece> boundary;

  static DomainDescriptor make(Geometry g, double param = 0.0);

  bool contains(Cx w) const;
  double delta(Cx w) const;
  Cx nearest_boundary_point(Cx w) const;
  bool segment_inside(Cx a, Cx b) const;
  // Length of the component of {Re w = x} through x + i y_ref.
  double cross_section_width(double x, double y_ref) const;
  // Gap d between the boundary points bracketing a hyperbolic petal on {Re w = x}.
  double petal_gap_width(double x, const Petal& petal) const;
  // {lo < Im < hi} when the domain sits in a horizontal strip.
  std::optional<std::pair<double, double>> minimal_strip() const;
  // (level, orientation): {Im > level} for +1, {Im < level} for -1.
  std::optional<std::pair<double, int>> minimal_halfplane() const;

 private:
  bool open_region(Cx w) const;
};

struct SemigroupModel {
  Kind kind = Kind::koebe;
  std::string id;
  double lambda = 0.0;  // spectral value (0 for parabolic kinds)
  double theta = 0.0;   // sector parameter
  Cx tau;
  Cx spectral;
  Classification classification = Classification::parabolic_zero;
  DomainDescriptor domain;
  std::vector<Petal> petals;
  Cx shift;  // bound evaluators use h - shift
};

SemigroupModel make_semigroup(Kind kind, double param = std::numeric_limits<double>::quiet_NaN());
SemigroupModel semigroup_from_id(const std::string& id);
std::vector<std::string> catalog_ids();

Cx koenigs(const SemigroupModel& s, Cx z);
Cx koenigs_inv(const SemigroupModel& s, Cx w);
Cx koenigs_derivative(const SemigroupModel& s, Cx z);

Cx phi(const SemigroupModel& s, Cx z, double t);
Cx backward(const SemigroupModel& s, Cx z, double t);
double escape_time(const SemigroupModel& s, Cx z);

// Koenigs value of the orbit point at time t; the ray is h(z) +/- t, or
// e^{-/+ lambda t} h(z) for the elliptic entry.
Cx orbit_koenigs_value(const SemigroupModel& s, Cx z, double t, Direction dir);

// log |h^{-1}(w) - target| without cancellation near the landing points.
double log_gap(const SemigroupModel& s, Cx w, Cx target);

Cx generator(const SemigroupModel& s, Cx z);
Cx berkson_p(const SemigroupModel& s, Cx z);

Classification classify(const SemigroupModel& s);
const std::vector<Petal>& petals(const SemigroupModel& s);
// Index of the petal containing z, if any.
std::optional<std::size_t> petal_of(const SemigroupModel& s, Cx z);

struct OrbitSeries {
  Direction direction = Direction::forward;
  Cx start;
  std::vector<double> times;
  std::vector<Cx> points;
  std::vector<double> log_gaps;  // log |point - landing|
  Cx landing;
  bool landing_confirmed = false;
  double escape_time = kInf;
};

OrbitSeries orbit_sample(const SemigroupModel& s, Cx z, const std::vector<double>& times,
                         Direction dir);

// Lifting of the elliptic entry: exp(-psi_t(w)) = phi_t(exp(-w)) on Re w > 0,
// and phi_hat_t = C^{-1} o psi_t o C on the disk.
class EllipticLift {
 public:
  explicit EllipticLift(const SemigroupModel& s);
  Cx psi(Cx w, double t) const;
  Cx phi_hat(Cx zeta, double t) const;
  // Koenigs map of phi_hat: hhat(phi_hat_t) = hhat + t.
  Cx koenigs_hat(Cx zeta) const;
  Cx koenigs_lifted(Cx w) const;  // the same on the right half-plane
  double nu() const;
  double alpha() const;
  double residual(Cx w, double t) const;

 private:
  SemigroupModel s_;
};

EllipticLift lift_elliptic(const SemigroupModel& s);

}  // namespace dw
