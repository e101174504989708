#include <cmath>

#include "dwrates/errors.hpp"
#include "dwrates/semigroups.hpp"

namespace dw {

EllipticLift::EllipticLift(const SemigroupModel& s) : s_(s) {
  if (s.kind != Kind::elliptic) throw LiftError("lift_elliptic: needs the elliptic catalog entry");
}

EllipticLift lift_elliptic(const SemigroupModel& s) { return EllipticLift(s); }

// psi_t(w) = -log phi_t(e^{-w}), with the log branch followed from psi_0 = w.
Cx EllipticLift::psi(Cx w, double t) const {
  if (!finite(w) || !(w.real() > 0.0) || w.real() > 700.0)
    throw DomainError("psi: w outside the right half-plane (or e^{-w} underflows)");
  if (!(t >= 0.0)) throw DomainError("psi: t must be >= 0");
  const Cx z0 = std::exp(-w);
  Cx prev = w;
  double s = 0.0;
  const double base = t / 64.0;
  double dt = base;
  while (s < t) {
    const double next = std::min(t, s + dt);
    Cx v = -std::log(phi(s_, z0, next));
    const double k = std::round((prev.imag() - v.imag()) / (2.0 * kPi));
    v += Cx(0.0, 2.0 * kPi * k);
    // Each accepted step must move less than a quarter turn.
    if (std::abs(v - prev) < kPi / 2) {
      prev = v;
      s = next;
      dt = std::min(base, 2.0 * dt);
    } else {
      dt *= 0.5;
      if (dt < 1e-12 * std::max(1.0, t)) throw BranchError("psi: branch tracking failed");
    }
  }
  return prev;
}

Cx EllipticLift::koenigs_lifted(Cx w) const {
  if (!finite(w) || !(w.real() > 0.0)) throw DomainError("koenigs_lifted: Re w must be > 0");
  return -(std::log(4.0) - w - 2.0 * std::log(1.0 - std::exp(-w))) / s_.lambda;
}

Cx EllipticLift::phi_hat(Cx zeta, double t) const {
  const Cx w = mobius_apply(cayley(), zeta);
  return mobius_apply(cayley_inverse(), psi(w, t));
}

Cx EllipticLift::koenigs_hat(Cx zeta) const { return koenigs_lifted(mobius_apply(cayley(), zeta)); }

double EllipticLift::nu() const { return -s_.lambda / 2; }
double EllipticLift::alpha() const { return -kPi / s_.lambda; }

double EllipticLift::residual(Cx w, double t) const {
  return std::abs(std::exp(-psi(w, t)) - phi(s_, std::exp(-w), t));
}

}  // namespace dw
