#include <algorithm>
#include <cmath>

#include "dwrates/errors.hpp"
#include "dwrates/semigroups.hpp"

namespace dw {
namespace {

double piece_param(const BoundaryPiece& b, Cx w) {
  switch (b.shape) {
    case BoundaryPiece::segment: {
      const Cx d = b.q - b.p;
      const double u = std::real((w - b.p) * std::conj(d)) / std::norm(d);
      return std::clamp(u, 0.0, 1.0);
    }
    case BoundaryPiece::ray:
      return std::max(0.0, std::real((w - b.p) * std::conj(b.q)));
    case BoundaryPiece::line:
      return std::real((w - b.p) * std::conj(b.q));
  }
  return 0.0;
}

Cx piece_point(const BoundaryPiece& b, double u) {
  return b.shape == BoundaryPiece::segment ? b.p + u * (b.q - b.p) : b.p + u * b.q;
}

Cx nearest_on_piece(const BoundaryPiece& b, Cx w) { return piece_point(b, piece_param(b, w)); }

double cross(Cx a, Cx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Whether the segment [a, b] meets the piece.
bool meets(const BoundaryPiece& pc, Cx a, Cx b) {
  const Cx d = b - a;
  const Cx e = pc.shape == BoundaryPiece::segment ? pc.q - pc.p : pc.q;
  const double den = cross(d, e);
  if (den == 0.0) return false;  // parallel; endpoint distances cover contact
  const Cx ap = pc.p - a;
  const double s = cross(ap, e) / den;
  const double u = cross(ap, d) / den;
  if (s < 0.0 || s > 1.0) return false;
  switch (pc.shape) {
    case BoundaryPiece::segment: return u >= 0.0 && u <= 1.0;
    case BoundaryPiece::ray: return u >= 0.0;
    case BoundaryPiece::line: return true;
  }
  return false;
}

double point_segment_distance(Cx w, Cx a, Cx b) {
  BoundaryPiece seg{BoundaryPiece::segment, a, b};
  if (a == b) return std::abs(w - a);
  return std::abs(w - nearest_on_piece(seg, w));
}

BoundaryPiece seg(Cx p, Cx q) { return {BoundaryPiece::segment, p, q}; }
BoundaryPiece ray(Cx p, Cx dir) { return {BoundaryPiece::ray, p, dir}; }
BoundaryPiece hline(double y) { return {BoundaryPiece::line, Cx(0.0, y), Cx(1.0, 0.0)}; }

}  // namespace

DomainDescriptor DomainDescriptor::make(Geometry g, double param) {
  DomainDescriptor d;
  d.geometry = g;
  switch (g) {
    case Geometry::strip:
      d.width = param;
      d.boundary = {hline(0.0), hline(param)};
      break;
    case Geometry::halfplane:
      d.boundary = {hline(0.0)};
      break;
    case Geometry::slit_plane:
      d.cut = param;
      d.boundary = {ray(Cx(param, 0.0), Cx(-1.0, 0.0))};
      break;
    case Geometry::sector:
      d.theta = param;
      d.boundary = {ray(0.0, Cx(-1.0, 0.0)), ray(0.0, std::polar(1.0, -param))};
      break;
    case Geometry::stepped_halfplane:
      d.boundary = {ray(0.0, Cx(1.0, 0.0)), seg(0.0, Cx(0.0, 1.0)),
                    ray(Cx(0.0, 1.0), Cx(-1.0, 0.0))};
      break;
    case Geometry::slit_strip:
      d.width = kPi;
      d.boundary = {hline(0.0), hline(kPi), ray(Cx(0.0, kPi / 2), Cx(-1.0, 0.0))};
      break;
  }
  return d;
}

bool DomainDescriptor::open_region(Cx w) const {
  const double x = w.real(), y = w.imag();
  switch (geometry) {
    case Geometry::strip: return y > 0.0 && y < width;
    case Geometry::halfplane: return y > 0.0;
    case Geometry::slit_plane: return !(y == 0.0 && x <= cut);
    case Geometry::sector: {
      if (w == Cx(0.0)) return false;
      const double a = std::arg(w);
      return a > -theta && a < kPi;
    }
    case Geometry::stepped_halfplane: return y > 0.0 && !(x <= 0.0 && y <= 1.0);
    case Geometry::slit_strip:
      return y > 0.0 && y < kPi && !(y == kPi / 2 && x <= 0.0);
  }
  return false;
}

bool DomainDescriptor::contains(Cx w) const {
  return finite(w) && open_region(w) && delta(w) > kCutTol;
}

Cx DomainDescriptor::nearest_boundary_point(Cx w) const {
  Cx best = nearest_on_piece(boundary.front(), w);
  double dist = std::abs(w - best);
  for (std::size_t k = 1; k < boundary.size(); ++k) {
    const Cx c = nearest_on_piece(boundary[k], w);
    const double r = std::abs(w - c);
    if (r < dist) dist = r, best = c;
  }
  return best;
}

double DomainDescriptor::delta(Cx w) const {
  if (!finite(w)) throw DomainError("delta: non-finite point");
  return std::abs(w - nearest_boundary_point(w));
}

bool DomainDescriptor::segment_inside(Cx a, Cx b) const {
  if (!contains(a) || !contains(b)) return false;
  for (const auto& pc : boundary) {
    if (meets(pc, a, b)) return false;
    if (std::abs(a - nearest_on_piece(pc, a)) <= kCutTol) return false;
    if (std::abs(b - nearest_on_piece(pc, b)) <= kCutTol) return false;
    if (pc.shape != BoundaryPiece::line && point_segment_distance(pc.p, a, b) <= kCutTol)
      return false;
    if (pc.shape == BoundaryPiece::segment && point_segment_distance(pc.q, a, b) <= kCutTol)
      return false;
  }
  return true;
}

double DomainDescriptor::cross_section_width(double x, double /*y_ref*/) const {
  switch (geometry) {
    case Geometry::strip: return width;
    case Geometry::slit_strip: return x > 0.0 ? kPi : kPi / 2;
    default: return kInf;
  }
}

double DomainDescriptor::petal_gap_width(double x, const Petal& petal) const {
  if (petal.type != PetalType::hyperbolic) return kInf;
  switch (geometry) {
    case Geometry::strip: return width;
    case Geometry::slit_strip: return x > 0.0 ? kPi : kPi / 2;
    default: return kInf;
  }
}

std::optional<std::pair<double, double>> DomainDescriptor::minimal_strip() const {
  if (geometry == Geometry::strip || geometry == Geometry::slit_strip)
    return std::make_pair(0.0, width);
  return std::nullopt;
}

std::optional<std::pair<double, int>> DomainDescriptor::minimal_halfplane() const {
  switch (geometry) {
    case Geometry::strip:
    case Geometry::slit_strip:
    case Geometry::halfplane:
    case Geometry::stepped_halfplane:
      return std::make_pair(0.0, 1);
    default:
      return std::nullopt;
  }
}

}  // namespace dw
