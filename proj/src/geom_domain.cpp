#include <algorithm>
#include <cmath>

#include "dwrates/errors.hpp"
#include "dwrates/geom.hpp"
#include "dwrates/quadrature.hpp"
#include "dwrates/semigroups.hpp"

namespace dw {
namespace {

void require_inside(const SemigroupModel& s, Cx w) {
  if (!finite(w) || !s.domain.contains(w))
    throw DomainError("point outside the Koenigs domain or on a slit");
}

double segment_integral(const SemigroupModel& s, Cx a, Cx b) {
  if (!s.domain.segment_inside(a, b)) throw PathError("segment leaves the Koenigs domain");
  const double len = std::abs(b - a);
  return adaptive_simpson([&](double u) { return len / s.domain.delta(a + u * (b - a)); }, 0.0,
                          1.0, 1e-9, 40);
}

}  // namespace

double hyp_dist_domain(const SemigroupModel& s, Cx w1, Cx w2) {
  require_inside(s, w1);
  require_inside(s, w2);
  if (w1 == w2) return 0.0;
  return hyp_dist_disk(koenigs_inv(s, w1), koenigs_inv(s, w2));
}

double delta_boundary(const SemigroupModel& s, Cx w) {
  require_inside(s, w);
  return s.domain.delta(w);
}

DistanceBounds distance_lemma_bounds(const SemigroupModel& s, Cx w1, Cx w2) {
  return distance_lemma_bounds(s, std::vector<Cx>{w1, w2});
}

DistanceBounds distance_lemma_bounds(const SemigroupModel& s, const std::vector<Cx>& path) {
  if (path.empty()) throw PathError("empty path");
  for (Cx w : path) require_inside(s, w);
  const Cx a = path.front(), b = path.back();
  DistanceBounds out;
  if (a != b) {
    const double dmin = std::min(s.domain.delta(a), s.domain.delta(b));
    out.lower = 0.25 * std::log1p(std::abs(a - b) / dmin);
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (path[k] != path[k + 1]) out.upper += segment_integral(s, path[k], path[k + 1]);
  return out;
}

}  // namespace dw
