#include "dwrates/hmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "dwrates/errors.hpp"
#include "dwrates/quadrature.hpp"

namespace dw {
namespace {

Cx nearest_on_segment(Cx p, Cx a, Cx b) {
  const Cx d = b - a;
  const double n = std::norm(d);
  if (n == 0.0) return a;
  const double u = std::clamp(std::real((p - a) * std::conj(d)) / n, 0.0, 1.0);
  return a + u * d;
}

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

}  // namespace

BoundarySet BoundarySet::arc(double theta1, double theta2) {
  BoundarySet e;
  e.kind = disk_arc;
  e.a = theta1;
  e.b = theta2;
  return e;
}

BoundarySet BoundarySet::arc_of_diameter(double d) {
  if (!(d > 0.0 && d <= 2.0)) throw DomainError("arc_of_diameter: d must lie in (0, 2]");
  const double half = std::asin(d / 2);
  return arc(-half, half);
}

BoundarySet BoundarySet::ray_left(double x0) {
  BoundarySet e;
  e.kind = boundary_ray;
  e.a = x0;
  e.b = -1.0;
  return e;
}

BoundarySet BoundarySet::ray_right(double x0) {
  BoundarySet e = ray_left(x0);
  e.b = 1.0;
  return e;
}

BoundarySet BoundarySet::slit(double r, double angle) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("slit: inner radius must lie in [0, 1)");
  BoundarySet e;
  e.kind = radial_slit;
  e.points = {std::polar(r, angle), std::polar(1.0, angle)};
  return e;
}

BoundarySet BoundarySet::vertical(double x, double y0, double y1) {
  BoundarySet e;
  e.kind = vertical_segment;
  e.points = {Cx(x, y0), Cx(x, y1)};
  return e;
}

BoundarySet BoundarySet::path(std::vector<Cx> vertices) {
  if (vertices.empty()) throw DomainError("path: no vertices");
  BoundarySet e;
  e.kind = polyline;
  e.points = std::move(vertices);
  return e;
}

BoundarySet BoundarySet::everything() { return {}; }

double BoundarySet::distance(Cx p) const {
  switch (kind) {
    case whole: return 0.0;
    case disk_arc: {
      if (b - a >= 2.0 * kPi) return std::abs(std::abs(p) - 1.0);
      if (p != Cx(0.0) && wrap_2pi(std::arg(p) - a) <= b - a) return std::abs(std::abs(p) - 1.0);
      return std::min(std::abs(p - std::polar(1.0, a)), std::abs(p - std::polar(1.0, b)));
    }
    case boundary_ray: {
      const bool inside = b < 0.0 ? p.real() <= a : p.real() >= a;
      return inside ? std::abs(p.imag()) : std::abs(p - Cx(a, 0.0));
    }
    case radial_slit:
    case vertical_segment:
    case polyline: {
      if (points.size() == 1) return std::abs(p - points[0]);
      double best = kInf;
      for (std::size_t k = 0; k + 1 < points.size(); ++k)
        best = std::min(best, std::abs(p - nearest_on_segment(p, points[k], points[k + 1])));
      return best;
    }
  }
  return kInf;
}

WosDomain WosDomain::disk() { return {}; }

WosDomain WosDomain::slit_disk(double r, double angle) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("slit_disk: r must lie in [0, 1)");
  WosDomain d;
  d.kind_ = DomainKind::slit_disk;
  d.r_ = r;
  d.angle_ = angle;
  return d;
}

WosDomain WosDomain::upper_halfplane() {
  WosDomain d;
  d.kind_ = DomainKind::upper_halfplane;
  return d;
}

WosDomain WosDomain::halfplane_minus_ray(double y0, double x0) {
  if (!(y0 > 0.0)) throw DomainError("halfplane_minus_ray: height must be > 0");
  WosDomain d;
  d.kind_ = DomainKind::halfplane_minus_ray;
  d.y0_ = y0;
  d.x0_ = x0;
  return d;
}

WosDomain WosDomain::catalog(const SemigroupModel& s) {
  WosDomain d;
  d.kind_ = DomainKind::catalog;
  d.desc_ = s.domain;
  return d;
}

Cx WosDomain::nearest(Cx z) const {
  switch (kind_) {
    case DomainKind::disk:
      return z == Cx(0.0) ? Cx(1.0) : z / std::abs(z);
    case DomainKind::slit_disk: {
      const Cx c = z == Cx(0.0) ? Cx(1.0) : z / std::abs(z);
      const Cx s = nearest_on_segment(z, std::polar(r_, angle_), std::polar(1.0, angle_));
      return std::abs(z - s) < std::abs(z - c) ? s : c;
    }
    case DomainKind::upper_halfplane:
      return Cx(z.real(), 0.0);
    case DomainKind::halfplane_minus_ray: {
      const Cx axis(z.real(), 0.0);
      const Cx ray(std::max(z.real(), x0_), y0_);
      return std::abs(z - ray) < std::abs(z - axis) ? ray : axis;
    }
    case DomainKind::catalog:
      return desc_->nearest_boundary_point(z);
  }
  return z;
}

double WosDomain::delta(Cx z) const { return std::abs(z - nearest(z)); }

bool WosDomain::contains(Cx z) const {
  if (!finite(z)) return false;
  switch (kind_) {
    case DomainKind::disk: return std::abs(z) < 1.0;
    case DomainKind::slit_disk: return std::abs(z) < 1.0 && delta(z) > 0.0;
    case DomainKind::upper_halfplane: return z.imag() > 0.0;
    case DomainKind::halfplane_minus_ray: return z.imag() > 0.0 && delta(z) > 0.0;
    case DomainKind::catalog: return desc_->contains(z);
  }
  return false;
}

double hm_exact(DomainKind domain, Cx z, const BoundarySet& E) {
  if (domain == DomainKind::disk && E.kind == BoundarySet::disk_arc) {
    if (!(std::abs(z) < 1.0)) throw DomainError("hm_exact: z outside the disk");
    const double len = E.b - E.a;
    if (len >= 2.0 * kPi) return 1.0;
    // Inscribed-angle form: the arc subtends angle beta at z.
    const double beta =
        wrap_2pi(std::arg((std::polar(1.0, E.b) - z) / (std::polar(1.0, E.a) - z)));
    return beta / kPi - len / (2.0 * kPi);
  }
  if (domain == DomainKind::slit_disk && E.kind == BoundarySet::radial_slit) {
    const double r = std::abs(E.points[0]);
    const Cx u = z * std::polar(1.0, -std::arg(E.points[1]));
    if (std::abs(u.imag()) > 1e-12 || !(u.real() < r) || !(u.real() > -1.0))
      throw UnsupportedConfig("hm_exact: slit disk needs z on the slit axis before the tip");
    const double x = u.real();
    const double rr = (r - x) / (1.0 - x * r);  // slit tip after moving z to 0
    return 2.0 / kPi * std::asin((1.0 - rr) / (1.0 + rr));
  }
  if (domain == DomainKind::upper_halfplane && E.kind == BoundarySet::boundary_ray) {
    if (!(z.imag() > 0.0)) throw DomainError("hm_exact: z outside the upper half-plane");
    const double a = std::arg(z - Cx(E.a, 0.0)) / kPi;
    return E.b < 0.0 ? a : 1.0 - a;
  }
  throw UnsupportedConfig("hm_exact: no closed form for this domain and set");
}

HMEstimate hm_wos(const WosDomain& domain, Cx z, const BoundarySet& E, std::size_t n, double eps,
                  std::uint64_t seed, unsigned workers) {
  if (!(eps > 0.0)) throw DomainError("hm_wos: eps must be > 0");
  if (n == 0) throw DomainError("hm_wos: need at least one walk");
  if (!domain.contains(z)) throw DomainError("hm_wos: start point outside the domain");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  constexpr std::size_t max_steps = 1000000;

  std::vector<std::size_t> hits(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w, std::size_t count) {
    try {
      std::seed_seq seq{seed, static_cast<std::uint64_t>(w)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
      std::size_t local = 0;
      for (std::size_t k = 0; k < count; ++k) {
        Cx p = z;
        for (std::size_t step = 0;; ++step) {
          if (step >= max_steps) throw ConvergenceError("hm_wos: walk exceeded 1e6 steps");
          const Cx q = domain.nearest(p);
          const double d = std::abs(p - q);
          if (d <= eps) {
            if (E.distance(q) <= eps) ++local;
            break;
          }
          p += std::polar(d, angle(rng));
        }
      }
      hits[w] = local;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  const std::size_t share = n / workers;
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run, w, share + (w + 1 == workers ? n - share * workers : 0));
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t total = 0;
  for (auto h : hits) total += h;
  HMEstimate est;
  est.samples = n;
  est.shell_eps = eps;
  est.value = static_cast<double>(total) / static_cast<double>(n);
  const double var = n > 1 ? est.value * (1.0 - est.value) * n / (n - 1.0) : 0.0;
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

double diameter_lower_bound(double d) {
  if (!(d > 0.0 && d <= 2.0)) throw DomainError("diameter_lower_bound: d must lie in (0, 2]");
  return std::asin(d / 2) / kPi;
}

double extremal_rectangle(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extremal_rectangle: sides must be > 0");
  return a / b;
}

double serial_lower_bound(const std::vector<std::pair<double, double>>& pieces) {
  double sum = 0.0;
  for (const auto& [a, b] : pieces) {
    if (a < 0.0 || !(b > 0.0)) throw DomainError("serial_lower_bound: need a >= 0 and b > 0");
    sum += a / b;
  }
  return sum;
}

double beurling_upper(double lambda_ext) {
  if (!(lambda_ext >= 0.0)) throw DomainError("beurling_upper: extremal distance must be >= 0");
  return 8.0 / kPi * std::exp(-kPi * lambda_ext);
}

double strip_module(const std::function<double(double)>& theta, double x0, double x1) {
  if (!(x0 < x1)) throw DomainError("strip_module: need x0 < x1");
  return adaptive_simpson(
      [&](double s) {
        const double th = theta(s);
        if (!(th > 0.0)) throw DomainError("strip_module: theta must be > 0");
        return 1.0 / th;
      },
      x0, x1, 1e-9, 40);
}

}  // namespace dw
