#include "dwrates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "dwrates/errors.hpp"
#include "dwrates/geom.hpp"
#include "dwrates/hmeasure.hpp"

namespace dw {
namespace {

constexpr double kSlack = 1e-12;
const double kE = std::exp(1.0);

Cx normalized(const SemigroupModel& s, Cx z) { return koenigs(s, z) - s.shift; }

void require_nonelliptic(const SemigroupModel& s) {
  if (s.classification == Classification::elliptic)
    throw TypeError("non-elliptic evaluator called on an elliptic semigroup");
}

bool is_boundary_fixed_point(const SemigroupModel& s, Cx z) {
  if (z == s.tau) return true;
  for (const auto& p : s.petals)
    if (p.type == PetalType::hyperbolic && z == p.sigma) return true;
  return false;
}

double log_upper_a(const SemigroupModel& s, Cx z, double t) {
  const double hp0 = std::abs(koenigs_derivative(s, 0.0));
  const double hz = std::abs(normalized(s, z));
  return std::log(4.0 * std::sqrt(2.0) * kPi) + std::log(std::sqrt(hp0) + std::sqrt(hz)) -
         0.5 * std::log(t);
}

double log_upper_b(const SemigroupModel& s, Cx z, double t) {
  const double m = std::max(std::abs(normalized(s, 0.0)), std::abs(normalized(s, z)));
  return std::log(8.0 * m) - std::log(t);
}

double log_upper_c_forward(const SemigroupModel& s, Cx z, double t) {
  return std::log(16.0) - s.lambda * normalized(s, z).real() - s.lambda * t;
}

char backward_case(const SemigroupModel& s, const Petal& p) {
  if (p.type == PetalType::hyperbolic) return 'c';
  return s.classification == Classification::parabolic_zero ? 'a' : 'b';
}

void require_in_petal(const SemigroupModel& s, Cx z, const Petal& p) {
  const auto k = petal_of(s, z);
  if (!k) throw PetalError("z lies in no petal");
  const Petal& q = s.petals[*k];
  if (q.sigma != p.sigma || q.alpha != p.alpha || q.side != p.side || q.type != p.type)
    throw PetalError("z lies in a different petal");
}

void require_eps_c(double nu, double eps) {
  if (!(eps > 0.0 && eps < -nu)) throw EpsilonError("epsilon must lie in (0, -nu)");
}

double log_upper_c_backward(double nu, double eps, double tze, double t) {
  return std::log(16.0) - (nu + eps) * tze + (nu + eps) * t;
}

double log_nonregular(const SemigroupModel& s, Cx z, NonregularCase c, double eps, double t,
                      const Petal* petal, std::optional<NonregularGeometry> g) {
  if (!(t > 0.0)) throw DomainError("nonregular_upper: t must be > 0");
  switch (c) {
    case NonregularCase::a:
      require_nonelliptic(s);
      if (s.classification != Classification::parabolic_zero)
        throw TypeError("case (a) needs a parabolic semigroup of zero step");
      return log_upper_a(s, z, t);
    case NonregularCase::b:
      require_nonelliptic(s);
      if (s.classification != Classification::parabolic_positive)
        throw TypeError("case (b) needs a parabolic semigroup of positive step");
      return log_upper_b(s, z, t);
    case NonregularCase::c: {
      if (!petal || petal->type != PetalType::hyperbolic)
        throw PetalError("case (c) needs the hyperbolic petal hosting the orbit");
      require_eps_c(petal->nu, eps);
      return log_upper_c_backward(petal->nu, eps, t_z_eps(s, z, *petal, eps), t);
    }
    case NonregularCase::d: {
      if (!g) throw GeometryError("case (d) needs the pair (T, d_T)");
      if (!(eps > 0.0)) throw EpsilonError("epsilon must be > 0");
      if (!(g->d_T > 0.0) || !(g->d_T < kPi / eps)) throw GeometryError("case (d) needs d_T < pi/eps");
      return std::log(16.0) + kPi * g->T / g->d_T - eps * t;
    }
  }
  return kInf;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json jnum(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

double Bounds::lower() const { return std::exp(log_lower); }
double Bounds::upper() const { return std::exp(log_upper); }

double log_forward_upper(const SemigroupModel& s, Cx z, double t) {
  require_nonelliptic(s);
  if (!(t > 0.0)) throw DomainError("forward_upper: t must be > 0");
  if (!(std::abs(z) < 1.0)) {
    if (is_boundary_fixed_point(s, z)) return kInf;
    throw DomainError("forward_upper: z outside the disk");
  }
  switch (s.classification) {
    case Classification::parabolic_zero: return log_upper_a(s, z, t);
    case Classification::parabolic_positive: return log_upper_b(s, z, t);
    case Classification::hyperbolic: return log_upper_c_forward(s, z, t);
    case Classification::elliptic: break;
  }
  throw TypeError("forward_upper: elliptic");
}

double forward_upper(const SemigroupModel& s, Cx z, double t) {
  return std::exp(log_forward_upper(s, z, t));
}

Bounds forward_lower(const SemigroupModel& s, Cx z, double eps, double t) {
  require_nonelliptic(s);
  if (!(eps > 0.0)) throw EpsilonError("forward_lower: epsilon must be > 0");
  if (!(std::abs(z) < 1.0)) throw DomainError("forward_lower: z outside the disk");
  const double lam = s.lambda;
  const Cx h = koenigs(s, z);
  const double target = kPi / (lam + eps);
  auto wide = [&](double T) { return s.domain.cross_section_width(h.real() + T, h.imag()) >= target; };
  double T = 0.0;
  if (!wide(0.0)) {
    double hi = 1.0;
    while (!wide(hi)) {
      hi *= 2.0;
      if (hi > 1e12) throw GeometryError("forward_lower: cross-sections never reach pi/(lambda+eps)");
    }
    double lo = 0.0;
    for (int k = 0; k < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++k) {
      const double mid = 0.5 * (lo + hi);
      (wide(mid) ? hi : lo) = mid;
    }
    T = hi;
  }
  const double az = std::abs(z);
  const double dh = (1.0 - az) * std::abs(koenigs_derivative(s, z));
  const double c_ze = 4.0 * (T + 1.0 + target) / std::min(4.0, dh);
  const double c_ze_disp = 4.0 * (T + 1.0 + target) / std::max(4.0, dh);
  const double m = std::min(std::sinh(lam + eps), 1.0 / (1.0 + az));
  const double m_disp = std::min(std::sinh(lam), 1.0 / (1.0 + az));
  const double log_c = std::log(1.0 - az) - 2.0 * c_ze + std::log(m);
  const double log_c_disp = std::log(1.0 - az) - 2.0 * c_ze_disp + std::log(m_disp);

  Bounds b;
  b.log_lower = log_c - (lam + eps) * t;
  b.constants = {{"lambda", lam},   {"epsilon", eps},       {"T", T},
                 {"Re_h_z", (h - s.shift).real()},         {"c_z_eps", c_ze},
                 {"log_c", log_c}, {"c", std::exp(log_c)}, {"c_displayed", std::exp(log_c_disp)}};
  return b;
}

double t_z_eps(const SemigroupModel& s, Cx z, const Petal& petal, double eps) {
  require_eps_c(petal.nu, eps);
  const Cx h = koenigs(s, z);
  const double target = -kPi / (petal.nu + eps);
  auto narrow = [&](double t) { return s.domain.petal_gap_width(h.real() - t, petal) <= target; };
  double t0 = 0.0;
  if (!narrow(0.0)) {
    double lo = 0.0, hi = 1e6;
    if (!narrow(hi)) throw GeometryError("t_z_eps: petal gap never narrows enough");
    for (int k = 0; k < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++k) {
      const double mid = 0.5 * (lo + hi);
      (narrow(mid) ? hi : lo) = mid;
    }
    t0 = hi;
  }
  return std::max(t0, std::abs(h - koenigs(s, 0.0)));
}

Bounds backward_bounds(const SemigroupModel& s, Cx z, const Petal& petal, double eps, double t) {
  require_nonelliptic(s);
  if (!(t > 0.0)) throw DomainError("backward_bounds: t must be > 0");
  require_in_petal(s, z, petal);
  const Cx h = koenigs(s, z);
  const double az = std::abs(z);
  Bounds b;
  const char c = backward_case(s, petal);
  b.constants = {{"alpha", petal.alpha}, {"Im_h_z", h.imag()}};
  if (c == 'a' || c == 'b') {
    const double m = std::min(1.0, std::abs(h.imag() - petal.alpha));
    b.log_lower = std::log(std::abs(z - s.tau)) + std::log(m) - std::log(2.0 * (1.0 + az) * t);
    b.log_upper = c == 'a' ? log_upper_a(s, z, t) : log_upper_b(s, z, t);
    b.constants.emplace_back("abs_h_tilde_0", std::abs(normalized(s, 0.0)));
    b.constants.emplace_back("abs_h_tilde_z", std::abs(normalized(s, z)));
    b.constants.emplace_back("abs_h_prime_0", std::abs(koenigs_derivative(s, 0.0)));
    return b;
  }
  const double nu = petal.nu;
  require_eps_c(nu, eps);
  const double tze = t_z_eps(s, z, petal, eps);
  const double sn = std::sin(nu * (h.imag() - petal.alpha));
  b.log_lower = std::log((1.0 - az) / (1.0 + az)) + 2.0 * std::log(std::abs(sn)) + nu * t;
  b.log_upper = log_upper_c_backward(nu, eps, tze, t);
  b.constants.emplace_back("nu", nu);
  b.constants.emplace_back("epsilon", eps);
  b.constants.emplace_back("t_z_eps", tze);
  return b;
}

double log_nonregular_upper(const SemigroupModel& s, Cx z, NonregularCase c, double eps, double t,
                            const Petal* petal, std::optional<NonregularGeometry> geometry) {
  return log_nonregular(s, z, c, eps, t, petal, geometry);
}

double nonregular_upper(const SemigroupModel& s, Cx z, NonregularCase c, double eps, double t,
                        const Petal* petal, std::optional<NonregularGeometry> geometry) {
  return std::exp(log_nonregular(s, z, c, eps, t, petal, geometry));
}

Bounds elliptic_bounds(const SemigroupModel& s, Cx z, double t) {
  if (s.classification != Classification::elliptic) throw TypeError("elliptic_bounds: non-elliptic");
  if (!(t >= 0.0)) throw DomainError("elliptic_bounds: t must be >= 0");
  const Cx tau = s.tau;
  const double f = std::abs(tau - z) / std::abs(1.0 - std::conj(tau) * z);
  const double d = hyp_dist_disk(tau, z);
  const double lam = s.spectral.real();
  Bounds b;
  b.log_lower = std::log(1.0 - std::abs(tau)) + std::log(f) - lam * std::exp(2.0 * d) * t;
  b.log_upper = std::log(1.0 + std::abs(tau)) + std::log(f) - lam * std::exp(-2.0 * d) * t;
  b.constants = {{"lambda", lam}, {"d_disk", d}, {"pseudo_distance", f}};
  return b;
}

EllipticBackwardSetup elliptic_backward_setup(const SemigroupModel& s, Cx z, double eps,
                                              std::optional<double> nu_override) {
  if (s.kind != Kind::elliptic) throw TypeError("elliptic_backward: needs the elliptic catalog entry");
  if (!petal_of(s, z)) throw PetalError("elliptic_backward: z outside the petal");
  const EllipticLift lift = lift_elliptic(s);
  EllipticBackwardSetup out;
  out.nu = nu_override.value_or(lift.nu());
  out.alpha = lift.alpha();
  out.eps = eps;
  require_eps_c(out.nu, eps);

  // Scan a 1/64 grid until the orbit is within 1e-8 of 1; T follows the last
  // grid time with |Log gamma| >= 1.
  long last_bad = -1;
  for (long k = 0;; ++k) {
    const double t = k / 64.0;
    const Cx g = backward(s, z, t);
    if (std::abs(std::log(g)) >= 1.0) last_bad = k;
    if (std::abs(g - 1.0) < 1e-8 || t > 400.0) break;
  }
  out.T = (last_bad + 1) / 64.0;
  const Cx g = backward(s, z, out.T);
  const Cx L = std::log(g);
  out.zeta = (L + 1.0) / (L - 1.0);
  const double im_hhat = lift.koenigs_lifted(-L).imag();
  const double az = std::abs(out.zeta);
  const double sn = std::sin(out.nu * (im_hhat - out.alpha));
  out.c1 = (3.0 - kE) / 2.0 * (1.0 - az) / (1.0 + az) * sn * sn;
  const double lg = std::log(std::abs(g)) + 1.0;
  out.c2 = 8.0 * (kE - 1.0) * (lg * lg + kPi * kPi) * std::exp(-(out.nu + eps) * out.T);
  out.constants = {{"T", out.T},          {"nu", out.nu},       {"alpha", out.alpha},
                   {"epsilon", eps},      {"zeta_re", out.zeta.real()},
                   {"zeta_im", out.zeta.imag()},               {"Im_hhat_zeta", im_hhat},
                   {"c1", out.c1},        {"c2", out.c2}};
  return out;
}

Bounds elliptic_backward_bounds(const SemigroupModel& s, Cx z, double eps, double t,
                                std::optional<double> nu_override) {
  if (!(t >= 0.0)) throw DomainError("elliptic_backward_bounds: t must be >= 0");
  const auto st = elliptic_backward_setup(s, z, eps, nu_override);
  Bounds b;
  b.constants = st.constants;
  b.log_lower = std::log(st.c1) + st.nu * t;
  b.log_upper = std::log(st.c2) + (st.nu + eps) * t;
  return b;
}

bool BoundReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.ok_lower && r.ok_upper; });
}

BoundReport verify_orbit_bounds(const SemigroupModel& s, Cx z, Direction dir, double eps,
                                const std::vector<double>& times, const VerifyOptions& opt) {
  SemigroupModel m = s;
  if (opt.shift) m.shift = *opt.shift;
  BoundReport r;
  r.semigroup_id = s.id;
  r.z = z;
  r.direction = dir;
  r.epsilon = eps;
  r.shift = m.shift;
  const bool elliptic = s.classification == Classification::elliptic;

  std::optional<std::size_t> pk;
  if (dir == Direction::forward) {
    r.landing = s.tau;
    if (elliptic) r.bound_case = "elliptic-forward";
    else
      r.bound_case = s.classification == Classification::parabolic_zero       ? "forward-parabolic-zero"
                     : s.classification == Classification::parabolic_positive ? "forward-parabolic-positive"
                                                                               : "forward-hyperbolic";
  } else {
    pk = petal_of(s, z);
    if (!pk) throw PetalError("verify_orbit_bounds: backward orbit is not regular (no petal)");
    r.landing = s.petals[*pk].sigma;
    static const char* kBackward[] = {"backward-parabolic-zero", "backward-parabolic-positive",
                                      "backward-hyperbolic-petal"};
    r.bound_case = elliptic ? "elliptic-backward" : kBackward[backward_case(s, s.petals[*pk]) - 'a'];
  }

  std::optional<EllipticBackwardSetup> est;
  if (elliptic && dir == Direction::backward) est = elliptic_backward_setup(s, z, eps, opt.nu_override);

  const double log_scale = std::log(opt.upper_scale);
  bool recorded = false;
  for (double t : times) {
    BoundRow row;
    row.t = t;
    row.log_measured = t == 0.0 ? std::log(std::abs(z - r.landing))
                                : log_gap(s, orbit_koenigs_value(s, z, t, dir), r.landing);
    Bounds b;
    if (dir == Direction::forward) {
      if (elliptic) {
        b = elliptic_bounds(m, z, t);
      } else if (t > 0.0) {
        if (eps > 0.0) b = forward_lower(m, z, eps, t);
        b.log_upper = log_forward_upper(m, z, t);
      }
    } else if (elliptic) {
      if (t > est->T) {
        b.log_lower = std::log(est->c1) + est->nu * t;
        b.log_upper = std::log(est->c2) + (est->nu + eps) * t;
      }
      b.constants = est->constants;
    } else if (t > 1.0) {
      b = backward_bounds(m, z, s.petals[*pk], eps, t);
    }
    row.log_lower = b.log_lower;
    row.log_upper = b.log_upper + log_scale;
    row.ok_lower = row.log_measured >= row.log_lower - kSlack;
    row.ok_upper = row.log_measured <= row.log_upper + kSlack;
    if (!recorded && !b.constants.empty()) {
      r.constants = b.constants;
      recorded = true;
    }
    r.rows.push_back(row);
  }
  r.constants.emplace_back("shift_re", m.shift.real());
  r.constants.emplace_back("shift_im", m.shift.imag());
  if (!elliptic) {
    r.constants.emplace_back("abs_h_tilde_0", std::abs(normalized(m, 0.0)));
    r.constants.emplace_back("abs_h_tilde_z", std::abs(normalized(m, z)));
    r.constants.emplace_back("abs_h_prime_0", std::abs(koenigs_derivative(m, 0.0)));
    r.constants.emplace_back("Re_h_tilde_z", normalized(m, z).real());
  }
  r.constants.emplace_back("upper_scale", opt.upper_scale);
  return r;
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t count) {
  if (count < 2 || !(t_min > 0.0) || !(t_max > t_min)) throw DomainError("log_grid: bad spec");
  std::vector<double> g(count);
  const double a = std::log(t_min), b = std::log(t_max);
  for (std::size_t k = 0; k < count; ++k) g[k] = std::exp(a + (b - a) * k / (count - 1.0));
  g.front() = t_min;
  g.back() = t_max;
  return g;
}

std::vector<double> linear_grid(double t_min, double t_max, std::size_t count) {
  if (count < 2 || !(t_max > t_min)) throw DomainError("linear_grid: bad spec");
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k) g[k] = t_min + (t_max - t_min) * k / (count - 1.0);
  g.back() = t_max;
  return g;
}

RateFit rate_exponent_fit(const OrbitSeries& series, double min_horizon) {
  const std::size_t n = series.times.size();
  if (n < 8 || series.log_gaps.size() != n) throw DataError("rate_exponent_fit: need >= 8 samples");
  const double tmax = series.times.back();
  if (!(tmax >= min_horizon)) throw DataError("rate_exponent_fit: horizon too short");
  if (!std::isfinite(series.log_gaps.back())) throw DataError("rate_exponent_fit: no landing point");

  auto window_slope = [&](std::size_t from) {
    double mt = 0, my = 0;
    for (std::size_t k = from; k < from + 4; ++k) mt += series.times[k], my += series.log_gaps[k];
    mt /= 4, my /= 4;
    double num = 0, den = 0;
    for (std::size_t k = from; k < from + 4; ++k) {
      num += (series.times[k] - mt) * (series.log_gaps[k] - my);
      den += (series.times[k] - mt) * (series.times[k] - mt);
    }
    return num / den;
  };
  RateFit f;
  f.exponent = series.log_gaps.back() / tmax;
  f.slope = window_slope(n - 4);
  // Super-repelling signature: slopes keep falling over the last three windows.
  const double s1 = window_slope(n - 6), s2 = window_slope(n - 5);
  f.diverging = f.slope < s2 && s2 < s1 && f.slope < -10.0;
  return f;
}

std::vector<std::string> sharpness_ids() {
  return {"koebe-backward", "hyperbolic-group-limit", "parabolic-group-limit", "elliptic-near-sigma"};
}

SharpnessReport sharpness_suite(const std::string& id) {
  SharpnessReport r;
  r.id = id;
  if (id == "koebe-backward") {
    const auto s = make_semigroup(Kind::koebe);
    const Cx z(0.0, 0.4);
    r.t = 1e8;
    r.limit_estimate = std::sqrt(r.t) * std::exp(log_gap(s, koenigs(s, z) - r.t, 1.0));
    r.expected = 2.0;
    r.tolerance = 1e-3;
  } else if (id == "hyperbolic-group-limit") {
    const auto s = make_semigroup(Kind::hyperbolic_group, 1.0);
    r.t = 30.0;
    r.limit_estimate = std::exp(r.t + log_gap(s, koenigs(s, 0.0) + r.t, 1.0));
    r.expected = 2.0;
    r.tolerance = 1e-6;
  } else if (id == "parabolic-group-limit") {
    const auto s = make_semigroup(Kind::parabolic_group);
    r.t = 1e4;
    r.limit_estimate = r.t * std::exp(log_gap(s, koenigs(s, 0.0) + r.t, 1.0));
    r.expected = 2.0;
    r.tolerance = 1e-3;
  } else if (id == "elliptic-near-sigma") {
    const auto s = make_semigroup(Kind::elliptic, 1.0);
    const double x = 1.0 - 1e-4;
    r.t = 1.0;
    const double denom = x * std::exp(-s.lambda * (1.0 - x) / (1.0 + x) * r.t);
    r.limit_estimate = std::abs(phi(s, x, r.t)) / denom;
    r.expected = 1.0;
    r.tolerance = 1e-3;
  } else {
    throw ParamError("unknown sharpness id: " + id);
  }
  r.pass = std::abs(r.limit_estimate - r.expected) < r.tolerance;
  return r;
}

double envelope_evaluators(const EnvelopeSpec& e, double t) {
  if (!(t > 0.0)) throw DomainError("envelope: t must be > 0");
  if (e.kind == EnvelopeSpec::forward_lower_sharpness) {
    if (!e.f) throw ShapeError("envelope: f missing");
    // Samples on a geometric grid: increasing, concave, f(x)/x falling to 0.
    std::vector<double> xs;
    for (double x = 1e-2; x <= 1e8; x *= 1.5) xs.push_back(e.x0 + x);
    double prev_ratio = kInf;
    for (std::size_t k = 0; k + 2 < xs.size(); ++k) {
      const double f0 = e.f(xs[k]), f1 = e.f(xs[k + 1]), f2 = e.f(xs[k + 2]);
      const double s01 = (f1 - f0) / (xs[k + 1] - xs[k]), s12 = (f2 - f1) / (xs[k + 2] - xs[k + 1]);
      if (!(f1 > f0)) throw ShapeError("envelope: f is not increasing");
      if (s12 > s01 * (1.0 + 1e-9) + 1e-15) throw ShapeError("envelope: f is not concave");
      const double ratio = f2 / (xs[k + 2] - e.x0 + 1.0);
      if (k > xs.size() / 2 && ratio > prev_ratio * (1.0 + 1e-9)) throw ShapeError("envelope: f(t)/t does not decay");
      prev_ratio = ratio;
    }
    if (!(prev_ratio < 1e-2)) throw ShapeError("envelope: f(t)/t does not decay");
    return 16.0 * std::exp(e.f(e.x0) - e.f(t));
  }
  if (!e.theta) throw ShapeError("envelope: theta missing");
  if (!(e.zabs >= 0.0 && e.zabs < 1.0)) throw DomainError("envelope: |z| must lie in [0, 1)");
  const double x = e.x0 - t;
  for (int k = 0; k <= 64; ++k) {
    const double a = x + (e.x0 - x) * k / 64.0, b = x + (e.x0 - x) * (k + 1) / 64.0;
    const double ta = e.theta(a), tb = e.theta(b);
    if (!(ta > 0.0)) throw ShapeError("envelope: theta must be positive");
    if (k < 64 && tb < ta) throw ShapeError("envelope: theta must be increasing");
  }
  return 2.0 * e.K * (1.0 + e.zabs) / (1.0 - e.zabs) * std::sqrt(e.theta(x) / t);
}

double envelope_strip_certificate(const EnvelopeSpec& e, double t) {
  if (!e.f || !e.fprime) throw ShapeError("envelope: f and f' needed");
  const double module = strip_module([&](double s) { return kPi / e.fprime(s); }, e.x0, t);
  return module - (e.f(t) - e.f(e.x0)) / kPi;
}

std::string report_csv(const BoundReport& r) {
  std::ostringstream os;
  os << "t,measured,lower,upper,ok_lower,ok_upper\n";
  for (const auto& row : r.rows)
    os << num(row.t) << ',' << num(std::exp(row.log_measured)) << ',' << num(std::exp(row.log_lower))
       << ',' << num(std::exp(row.log_upper)) << ',' << (row.ok_lower ? 1 : 0) << ','
       << (row.ok_upper ? 1 : 0) << '\n';
  return os.str();
}

std::string report_json(const BoundReport& r) {
  nlohmann::json j;
  j["semigroup"] = r.semigroup_id;
  j["z"] = {{"re", r.z.real()}, {"im", r.z.imag()}};
  j["direction"] = to_string(r.direction);
  j["epsilon"] = r.epsilon;
  j["case"] = r.bound_case;
  j["landing"] = {{"re", r.landing.real()}, {"im", r.landing.imag()}};
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : r.constants) c[k] = jnum(v);
  j["constants"] = c;
  j["pass"] = r.pass();
  return j.dump(2);
}

}  // namespace dw
