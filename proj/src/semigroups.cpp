#include "dwrates/semigroups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dwrates/errors.hpp"

namespace dw {
namespace {

const Cx I(0.0, 1.0);

void require_disk(Cx z) {
  if (!finite(z) || !(std::abs(z) < 1.0)) throw DomainError("point outside the open disk");
}

// Principal square root / log with the cut (-inf, 0]; inputs within kCutTol of
// the cut are rejected so the chain stays single-valued.
void check_cut(Cx u, const char* where) {
  if (u.real() <= 0.0 && std::abs(u.imag()) <= kCutTol)
    throw BranchError(std::string(where) + ": argument on the branch cut");
}
Cx csqrt(Cx u, const char* where) {
  check_cut(u, where);
  return std::sqrt(u);
}
Cx clog(Cx u, const char* where) {
  check_cut(u, where);
  return std::log(u);
}

Cx cayley_of(Cx z) { return (1.0 + z) / (1.0 - z); }
Cx cayley_prime(Cx z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }

// z = C^{-1}(e^L) without overflow for large Re L.
Cx disk_from_log_cayley(Cx L) {
  if (L.real() > 0.0) {
    const Cx q = std::exp(-L);
    return (1.0 - q) / (1.0 + q);
  }
  const Cx c = std::exp(L);
  return (c - 1.0) / (c + 1.0);
}

Cx disk_from_cayley(Cx c) { return (c - 1.0) / (c + 1.0); }

// log|1 + e^L|.
double log_abs_one_plus_exp(Cx L) {
  if (L.real() > 30.0) return L.real() + std::log(std::abs(1.0 + std::exp(-L)));
  if (L.real() < -30.0) return std::log(std::abs(1.0 + std::exp(L)));
  return std::log(std::abs(1.0 + std::exp(L)));
}

double sector_power(const SemigroupModel& s) { return (kPi + s.theta) / kPi; }

// Stepped half-plane: f(zeta) = (sqrt(zeta-1) sqrt(zeta+1) + Log(zeta + ...)) / pi maps the
// upper half-plane onto H minus {Re <= 0, 0 < Im <= 1}; with zeta = cosh s this is
// (sinh s + s) / pi on the half-strip {Re s > 0, 0 < Im s < pi}.
Cx stepped_forward(Cx zeta) {
  const Cx r = csqrt(zeta - 1.0, "stepped sqrt") * csqrt(zeta + 1.0, "stepped sqrt");
  return (r + clog(zeta + r, "stepped log")) / kPi;
}

bool in_half_strip(Cx s) { return s.real() >= 0.0 && s.imag() >= 0.0 && s.imag() <= kPi; }

std::optional<Cx> stepped_newton(Cx target, Cx s) {
  const double tol = 1e-14 * std::max(1.0, std::abs(target));
  for (int it = 0; it < 200; ++it) {
    const Cx g = std::sinh(s) + s - target;
    if (std::abs(g) <= tol) return s;
    const Cx step = g / (std::cosh(s) + 1.0);
    double damp = 1.0;
    Cx next = s - step;
    while (damp > 1e-6) {
      next = s - damp * step;
      if (in_half_strip(next) && std::abs(std::sinh(next) + next - target) < std::abs(g)) break;
      damp *= 0.5;
    }
    if (damp <= 1e-6) return std::nullopt;
    s = next;
  }
  const Cx g = std::sinh(s) + s - target;
  if (std::abs(g) <= 1e3 * tol) return s;
  return std::nullopt;
}

Cx stepped_inverse_s(Cx w) {
  const Cx target = kPi * w;
  std::vector<Cx> starts;
  if (std::abs(w) > 2.0) starts.push_back(std::log(2.0 * target));
  for (double a : {0.2, 1.0, 2.0})
    for (double b : {0.3, 1.57, 2.8}) starts.emplace_back(a, b);
  for (Cx s0 : starts) {
    if (!in_half_strip(s0)) s0 = Cx(std::max(s0.real(), 1e-3), std::clamp(s0.imag(), 1e-3, kPi - 1e-3));
    if (auto s = stepped_newton(target, s0)) return *s;
  }
  throw ConvergenceError("stepped half-plane inverse: Newton did not converge");
}

// Slit strip: C = sqrt(-1 - s^2) with s = e^w, evaluated on whichever of the two
// equivalent forms keeps its radicand off the cut.
Cx slit_strip_cayley(Cx w) {
  const Cx sv = std::exp(w);
  const Cx u = -1.0 - sv * sv;
  if (u.real() >= 0.0) return csqrt(u, "slit-strip sqrt");
  // The sign of Im s^2 is the side of the slit line Im w = pi/2.
  const double side = w.imag() < kPi / 2 ? 1.0 : -1.0;
  return -I * side * std::sqrt(1.0 + sv * sv);
}

// log C for the slit strip when Re w is large, where e^w overflows.
Cx slit_strip_log_cayley(Cx w) {
  if (w.real() < 30.0) return std::log(slit_strip_cayley(w));
  const Cx x = std::exp(-2.0 * w);
  const Cx l1p = std::abs(x) < 1e-8 ? x - 0.5 * x * x : std::log(1.0 + x);
  Cx lg = 2.0 * w + Cx(0.0, kPi) + l1p;
  while (lg.imag() > kPi) lg -= Cx(0.0, 2.0 * kPi);
  while (lg.imag() <= -kPi) lg += Cx(0.0, 2.0 * kPi);
  return 0.5 * lg;
}

Cx sector_cayley(const SemigroupModel& s, Cx w) {
  const Cx u = w * std::polar(1.0, s.theta);
  double a = std::arg(u);
  if (a < 0.0) a += 2.0 * kPi;
  const double p = sector_power(s);
  return -I * std::polar(std::pow(std::abs(u), 1.0 / p), a / p);
}

// log C(h^{-1}(w)), finite for every w in the domain.
Cx log_cayley_of_inverse(const SemigroupModel& s, Cx w) {
  switch (s.kind) {
    case Kind::hyperbolic_group: return s.lambda * w - Cx(0.0, kPi / 2);
    case Kind::parabolic_group: return std::log(-I * w);
    case Kind::koebe: return 0.5 * std::log(w);
    case Kind::sector: return std::log(sector_cayley(s, w));
    case Kind::slit_halfplane: return std::log(-I * std::cosh(stepped_inverse_s(w)));
    case Kind::slit_strip: return slit_strip_log_cayley(w);
    case Kind::elliptic: return 0.5 * std::log(1.0 + w);
  }
  return 0.0;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double param_or(double p, double dflt) { return std::isnan(p) ? dflt : p; }

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::hyperbolic_group: return "hyperbolic-group";
    case Kind::parabolic_group: return "parabolic-group";
    case Kind::koebe: return "koebe";
    case Kind::sector: return "sector";
    case Kind::slit_halfplane: return "slit-halfplane";
    case Kind::slit_strip: return "slit-strip";
    case Kind::elliptic: return "elliptic-explicit";
  }
  return "?";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::elliptic: return "elliptic";
    case Classification::hyperbolic: return "hyperbolic";
    case Classification::parabolic_positive: return "parabolic-positive";
    case Classification::parabolic_zero: return "parabolic-zero";
  }
  return "?";
}

std::string to_string(PetalType p) { return p == PetalType::hyperbolic ? "hyperbolic" : "parabolic"; }
std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

SemigroupModel make_semigroup(Kind kind, double param) {
  SemigroupModel s;
  s.kind = kind;
  s.tau = 1.0;
  switch (kind) {
    case Kind::hyperbolic_group: {
      const double lam = param_or(param, 1.0);
      if (!(lam > 0.0) || !std::isfinite(lam)) throw ParamError("hyperbolic-group: lambda must be > 0");
      s.lambda = lam;
      s.id = "hyperbolic-group:lambda=" + fmt(lam);
      s.domain = DomainDescriptor::make(Geometry::strip, kPi / lam);
      s.petals = {{PetalType::hyperbolic, -1.0, -lam, 0.0, 1, true, "0<Im<pi/lambda (whole disk)"}};
      break;
    }
    case Kind::parabolic_group:
      s.id = "parabolic-group";
      s.domain = DomainDescriptor::make(Geometry::halfplane);
      s.petals = {{PetalType::parabolic, 1.0, std::nan(""), 0.0, 1, true, "Im>0 (whole disk)"}};
      break;
    case Kind::koebe:
      s.id = "koebe";
      s.domain = DomainDescriptor::make(Geometry::slit_plane, 0.0);
      s.petals = {{PetalType::parabolic, 1.0, std::nan(""), 0.0, 1, true, "Im>0"},
                  {PetalType::parabolic, 1.0, std::nan(""), 0.0, -1, true, "Im<0"}};
      s.shift = 1.0;
      break;
    case Kind::sector: {
      const double th = param_or(param, 1.0);
      if (!(th > 0.0 && th < kPi)) throw ParamError("sector: theta must lie in (0, pi)");
      s.theta = th;
      s.id = "sector:theta=" + fmt(th);
      s.domain = DomainDescriptor::make(Geometry::sector, th);
      s.petals = {{PetalType::parabolic, 1.0, std::nan(""), 0.0, 1, true, "Im>0"}};
      break;
    }
    case Kind::slit_halfplane:
      s.id = "slit-halfplane";
      s.domain = DomainDescriptor::make(Geometry::stepped_halfplane);
      s.petals = {{PetalType::parabolic, 1.0, std::nan(""), 1.0, 1, true, "Im>1"}};
      break;
    case Kind::slit_strip:
      if (!std::isnan(param) && param != 1.0) throw ParamError("slit-strip: lambda is fixed at 1");
      s.lambda = 1.0;
      s.id = "slit-strip";
      s.domain = DomainDescriptor::make(Geometry::slit_strip);
      s.petals = {{PetalType::hyperbolic, -I, -2.0, 0.0, 1, true, "0<Im<pi/2"},
                  {PetalType::hyperbolic, I, -2.0, kPi / 2, 1, true, "pi/2<Im<pi"}};
      break;
    case Kind::elliptic: {
      const double lam = param_or(param, 1.0);
      if (!(lam > 0.0) || !std::isfinite(lam)) throw ParamError("elliptic-explicit: lambda must be > 0");
      s.lambda = lam;
      s.tau = 0.0;
      s.id = "elliptic-explicit:lambda=" + fmt(lam);
      s.domain = DomainDescriptor::make(Geometry::slit_plane, -1.0);
      // h(1 - x) ~ 4/x^2, so backward orbits approach 1 like e^{-lambda t/2}.
      s.petals = {{PetalType::hyperbolic, 1.0, -lam / 2, -kPi / lam, 1, true,
                   "disk minus (-1,0]; lifted strip |Im| < pi/lambda"}};
      break;
    }
  }
  s.spectral = s.lambda;
  s.classification = classify(s);
  if (kind == Kind::sector || kind == Kind::slit_halfplane || kind == Kind::slit_strip) {
    const Cx h0 = koenigs(s, 0.0);
    // Zero step: h(0) -> 0; positive step and hyperbolic: Re h(0) -> 0.
    s.shift = s.classification == Classification::parabolic_zero ? h0 : Cx(h0.real(), 0.0);
  }
  return s;
}

SemigroupModel semigroup_from_id(const std::string& id) {
  const auto colon = id.find(':');
  const std::string head = id.substr(0, colon);
  double param = std::nan("");
  std::string key;
  if (colon != std::string::npos) {
    const std::string rest = id.substr(colon + 1);
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw ParamError("bad catalog id: " + id);
    key = rest.substr(0, eq);
    try {
      std::size_t used = 0;
      param = std::stod(rest.substr(eq + 1), &used);
      if (used != rest.size() - eq - 1) throw ParamError("bad catalog id: " + id);
    } catch (const std::logic_error&) {
      throw ParamError("bad catalog id: " + id);
    }
  }
  auto expect_key = [&](const char* k) {
    if (colon != std::string::npos && key != k) throw ParamError("bad parameter in id: " + id);
  };
  if (head == "hyperbolic-group") return expect_key("lambda"), make_semigroup(Kind::hyperbolic_group, param);
  if (head == "elliptic-explicit") return expect_key("lambda"), make_semigroup(Kind::elliptic, param);
  if (head == "sector") return expect_key("theta"), make_semigroup(Kind::sector, param);
  if (colon == std::string::npos) {
    if (head == "parabolic-group") return make_semigroup(Kind::parabolic_group);
    if (head == "koebe" || head == "koebe-parabolic-zero") return make_semigroup(Kind::koebe);
    if (head == "slit-halfplane") return make_semigroup(Kind::slit_halfplane);
    if (head == "slit-strip") return make_semigroup(Kind::slit_strip);
  }
  throw ParamError("unknown catalog id: " + id);
}

std::vector<std::string> catalog_ids() {
  return {"hyperbolic-group:lambda=1", "parabolic-group", "koebe", "sector:theta=1",
          "slit-halfplane", "slit-strip", "elliptic-explicit:lambda=1"};
}

Cx koenigs(const SemigroupModel& s, Cx z) {
  require_disk(z);
  const Cx c = cayley_of(z);
  switch (s.kind) {
    case Kind::hyperbolic_group: return (clog(c, "Log C") + Cx(0.0, kPi / 2)) / s.lambda;
    case Kind::parabolic_group: return I * c;
    case Kind::koebe: return c * c;
    case Kind::sector: {
      const Cx v = I * c;
      return std::polar(1.0, -s.theta) * std::pow(v, sector_power(s));
    }
    case Kind::slit_halfplane: return stepped_forward(I * c);
    case Kind::slit_strip: return clog(I * csqrt(1.0 + c * c, "slit-strip sqrt"), "slit-strip log");
    case Kind::elliptic: return 4.0 * z / ((1.0 - z) * (1.0 - z));
  }
  return 0.0;
}

Cx koenigs_inv(const SemigroupModel& s, Cx w) {
  if (!s.domain.contains(w)) throw DomainError("koenigs_inv: point outside the Koenigs domain");
  switch (s.kind) {
    case Kind::hyperbolic_group: return disk_from_log_cayley(s.lambda * w - Cx(0.0, kPi / 2));
    case Kind::parabolic_group: return disk_from_cayley(-I * w);
    case Kind::koebe: return disk_from_cayley(csqrt(w, "koebe sqrt"));
    case Kind::sector: return disk_from_cayley(sector_cayley(s, w));
    case Kind::slit_halfplane: return disk_from_cayley(-I * std::cosh(stepped_inverse_s(w)));
    case Kind::slit_strip:
      if (w.real() > 30.0) return disk_from_log_cayley(slit_strip_log_cayley(w));
      return disk_from_cayley(slit_strip_cayley(w));
    case Kind::elliptic: {
      const Cx c = csqrt(1.0 + w, "elliptic sqrt");
      // (C-1)/(C+1) with C - 1 = w/(C+1), exact near the origin.
      return w / ((c + 1.0) * (c + 1.0));
    }
  }
  return 0.0;
}

Cx koenigs_derivative(const SemigroupModel& s, Cx z) {
  require_disk(z);
  const Cx c = cayley_of(z);
  const Cx cp = cayley_prime(z);
  switch (s.kind) {
    case Kind::hyperbolic_group: return 2.0 / (s.lambda * (1.0 - z * z));
    case Kind::parabolic_group: return I * cp;
    case Kind::koebe: return 2.0 * c * cp;
    case Kind::sector: return sector_power(s) * koenigs(s, z) * cp / c;
    case Kind::slit_halfplane: {
      const Cx zeta = I * c;
      const Cx fp = std::sqrt(zeta + 1.0) / (kPi * std::sqrt(zeta - 1.0));
      return fp * I * cp;
    }
    case Kind::slit_strip: return c * cp / (1.0 + c * c);
    case Kind::elliptic: return 2.0 * c * cp;
  }
  return 0.0;
}

Cx orbit_koenigs_value(const SemigroupModel& s, Cx z, double t, Direction dir) {
  const Cx h = koenigs(s, z);
  const double sgn = dir == Direction::forward ? 1.0 : -1.0;
  if (s.kind == Kind::elliptic) return std::exp(-sgn * s.lambda * t) * h;
  return h + sgn * t;
}

Cx phi(const SemigroupModel& s, Cx z, double t) {
  if (!(t >= 0.0)) throw DomainError("phi: t must be >= 0");
  require_disk(z);
  if (t == 0.0) return z;
  return koenigs_inv(s, orbit_koenigs_value(s, z, t, Direction::forward));
}

double escape_time(const SemigroupModel& s, Cx z) {
  const Cx h = koenigs(s, z);
  switch (s.kind) {
    case Kind::hyperbolic_group:
    case Kind::parabolic_group:
      return kInf;
    case Kind::koebe:
      return std::abs(h.imag()) <= kCutTol ? h.real() : kInf;
    case Kind::sector:
      if (h.imag() > 0.0) return kInf;
      return h.real() + h.imag() / std::tan(s.theta);
    case Kind::slit_halfplane:
      return h.imag() > 1.0 ? kInf : h.real();
    case Kind::slit_strip:
      return std::abs(h.imag() - kPi / 2) <= kCutTol ? h.real() : kInf;
    case Kind::elliptic:
      if (h == Cx(0.0)) return kInf;
      if (std::abs(h.imag()) <= kCutTol && h.real() < 0.0)
        return std::log(-1.0 / h.real()) / s.lambda;
      return kInf;
  }
  return kInf;
}

Cx backward(const SemigroupModel& s, Cx z, double t) {
  if (!(t >= 0.0)) throw DomainError("backward: t must be >= 0");
  require_disk(z);
  if (t == 0.0) return z;
  if (t >= escape_time(s, z)) throw EscapeError("backward: t beyond the escape time");
  return koenigs_inv(s, orbit_koenigs_value(s, z, t, Direction::backward));
}

double log_gap(const SemigroupModel& s, Cx w, Cx target) {
  if (!s.domain.contains(w)) throw DomainError("log_gap: point outside the Koenigs domain");
  if (target == Cx(1.0)) {
    if (s.kind == Kind::elliptic) {
      const Cx c = csqrt(1.0 + w, "elliptic sqrt");
      return std::log(2.0) - std::log(std::abs(c + 1.0));
    }
    return std::log(2.0) - log_abs_one_plus_exp(log_cayley_of_inverse(s, w));
  }
  if (s.kind == Kind::hyperbolic_group && target == Cx(-1.0)) {
    const Cx L = log_cayley_of_inverse(s, w);
    return std::log(2.0) + L.real() - log_abs_one_plus_exp(L);
  }
  if (s.kind == Kind::slit_strip && (target == I || target == -I) && w.real() < 0.0) {
    // C(-i) = -i and C(i) = i; C^2 - C0^2 = -s^2 gives the gap without cancellation.
    const Cx c0 = target;
    const Cx c = slit_strip_cayley(w);
    const double log_dc = 2.0 * w.real() - std::log(std::abs(c + c0));
    return std::log(2.0) + log_dc - std::log(std::abs(c + 1.0)) - std::log(std::abs(c0 + 1.0));
  }
  if (s.kind == Kind::elliptic && target == Cx(0.0)) {
    const Cx c = csqrt(1.0 + w, "elliptic sqrt");
    return std::log(std::abs(w)) - 2.0 * std::log(std::abs(c + 1.0));
  }
  return std::log(std::abs(koenigs_inv(s, w) - target));
}

Cx generator(const SemigroupModel& s, Cx z) {
  require_disk(z);
  if (s.kind == Kind::elliptic) return -s.lambda * z * (1.0 - z) / (1.0 + z);
  return 1.0 / koenigs_derivative(s, z);
}

Cx berkson_p(const SemigroupModel& s, Cx z) {
  require_disk(z);
  if (s.kind == Kind::elliptic) return s.lambda * (1.0 - z) / (1.0 + z);
  const Cx tau = s.tau;
  const Cx den = (z - tau) * (std::conj(tau) * z - 1.0);
  if (den == Cx(0.0)) throw DomainError("berkson_p: z equals the Denjoy-Wolff point");
  return generator(s, z) / den;
}

Classification classify(const SemigroupModel& s) {
  if (std::abs(s.tau) < 1.0) return Classification::elliptic;
  if (s.domain.minimal_strip()) return Classification::hyperbolic;
  if (s.domain.minimal_halfplane()) return Classification::parabolic_positive;
  return Classification::parabolic_zero;
}

const std::vector<Petal>& petals(const SemigroupModel& s) { return s.petals; }

std::optional<std::size_t> petal_of(const SemigroupModel& s, Cx z) {
  const Cx h = koenigs(s, z);
  switch (s.kind) {
    case Kind::hyperbolic_group:
    case Kind::parabolic_group:
      return 0;
    case Kind::koebe:
      if (h.imag() > 0.0) return 0;
      if (h.imag() < 0.0) return 1;
      return std::nullopt;
    case Kind::sector:
      if (h.imag() > 0.0) return 0;
      return std::nullopt;
    case Kind::slit_halfplane:
      if (h.imag() > 1.0) return 0;
      return std::nullopt;
    case Kind::slit_strip:
      if (h.imag() < kPi / 2) return 0;
      if (h.imag() > kPi / 2) return 1;
      return std::nullopt;
    case Kind::elliptic:
      if (h.real() <= 0.0 && std::abs(h.imag()) <= kCutTol) return std::nullopt;
      return 0;
  }
  return std::nullopt;
}

OrbitSeries orbit_sample(const SemigroupModel& s, Cx z, const std::vector<double>& times,
                         Direction dir) {
  require_disk(z);
  if (!std::is_sorted(times.begin(), times.end())) throw DomainError("orbit_sample: times not ascending");
  OrbitSeries o;
  o.direction = dir;
  o.start = z;
  o.times = times;
  o.escape_time = dir == Direction::backward ? escape_time(s, z) : kInf;
  if (dir == Direction::forward) {
    o.landing = s.tau;
  } else {
    const auto k = petal_of(s, z);
    o.landing = k ? s.petals[*k].sigma : Cx(std::nan(""), std::nan(""));
  }
  const bool have_landing = finite(o.landing);
  for (double t : times) {
    if (dir == Direction::backward && t >= o.escape_time)
      throw EscapeError("orbit_sample: time beyond the escape time");
    if (t == 0.0) {
      o.points.push_back(z);
      o.log_gaps.push_back(have_landing ? std::log(std::abs(z - o.landing)) : std::nan(""));
      continue;
    }
    const Cx w = orbit_koenigs_value(s, z, t, dir);
    o.points.push_back(koenigs_inv(s, w));
    o.log_gaps.push_back(have_landing ? log_gap(s, w, o.landing) : std::nan(""));
  }
  if (have_landing && !o.log_gaps.empty()) {
    const std::size_t n = o.log_gaps.size();
    bool decreasing = true;
    for (std::size_t k = n >= 4 ? n - 4 : 0; k + 1 < n; ++k)
      decreasing = decreasing && o.log_gaps[k + 1] <= o.log_gaps[k] + 1e-12;
    o.landing_confirmed = decreasing && o.log_gaps.back() < std::log(1e-3);
  }
  return o;
}

}  // namespace dw
