#include "dwrates/geom.hpp"

#include <algorithm>
#include <cmath>

#include "dwrates/errors.hpp"

namespace dw {

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

MoebiusMap make_moebius(Cx a, Cx b, Cx c, Cx d) {
  if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
    throw DomainError("moebius: non-finite coefficient");
  if (a * d - b * c == Cx(0.0)) throw DomainError("moebius: ad - bc = 0");
  return {a, b, c, d};
}

Cx mobius_apply(const MoebiusMap& m, Cx z) {
  if (!finite(z)) throw DomainError("mobius_apply: non-finite point");
  const Cx den = m.c * z + m.d;
  if (den == Cx(0.0)) throw PoleError("mobius_apply: cz + d = 0");
  return (m.a * z + m.b) / den;
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  return make_moebius(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                      f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

MoebiusMap cayley() { return {1.0, 1.0, -1.0, 1.0}; }
MoebiusMap cayley_inverse() { return {1.0, -1.0, 1.0, 1.0}; }

MoebiusMap disk_automorphism(Cx tau) {
  if (!(std::abs(tau) < 1.0)) throw DomainError("disk_automorphism: |tau| >= 1");
  return {-1.0, tau, -std::conj(tau), 1.0};
}

double hyp_dist_disk(Cx z1, Cx z2) {
  if (!finite(z1) || !finite(z2)) throw DomainError("hyp_dist_disk: non-finite point");
  if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0))
    throw DomainError("hyp_dist_disk: point outside the open disk");
  if (z1 == z2) return 0.0;
  const double r = std::abs(z1 - z2) / std::abs(1.0 - std::conj(z1) * z2);
  return std::atanh(std::min(r, std::nextafter(1.0, 0.0)));
}

double hyp_dist_right_halfplane(Cx w1, Cx w2) {
  if (!finite(w1) || !finite(w2))
    throw DomainError("hyp_dist_right_halfplane: non-finite point");
  if (!(w1.real() > 0.0) || !(w2.real() > 0.0))
    throw DomainError("hyp_dist_right_halfplane: point outside Re w > 0");
  if (w1 == w2) return 0.0;
  // artanh(B/A) equals the (A+B)/(A-B) log form without the subtraction.
  const double a = std::abs(w1 + std::conj(w2));
  const double b = std::abs(w1 - w2);
  return std::atanh(std::min(b / a, std::nextafter(1.0, 0.0)));
}

}  // namespace dw
