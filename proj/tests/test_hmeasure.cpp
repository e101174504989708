#include <cmath>

#include "catch_amalgamated.hpp"

#include "dwrates/errors.hpp"
#include "dwrates/hmeasure.hpp"

using namespace dw;
using Catch::Approx;

namespace {

bool within(const HMEstimate& e, double exact, double floor = 0.01) {
  return std::abs(e.value - exact) < std::max(4.0 * e.std_error, floor);
}

}  // namespace

TEST_CASE("hm_exact closed forms") {
  CHECK(hm_exact(DomainKind::slit_disk, 0.0, BoundarySet::slit(1.0 / 3.0, 0.0)) == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(hm_exact(DomainKind::upper_halfplane, Cx(0, 1), BoundarySet::ray_left(0.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(hm_exact(DomainKind::disk, 0.0, BoundarySet::arc_of_diameter(1.0)) == Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(hm_exact(DomainKind::disk, 0.0, BoundarySet::arc_of_diameter(2.0)) == Approx(0.5).epsilon(1e-14));
  // Off-center arc: Poisson kernel integrated numerically.
  const Cx z(0.3, -0.2);
  double poisson = 0.0;
  const int m = 20000;
  for (int k = 0; k < m; ++k) {
    const double th = -0.7 + 1.9 * (k + 0.5) / m;
    poisson += (1.0 - std::norm(z)) / std::norm(std::polar(1.0, th) - z) * 1.9 / m / (2 * kPi);
  }
  CHECK(hm_exact(DomainKind::disk, z, BoundarySet::arc(-0.7, 1.2)) == Approx(poisson).epsilon(1e-7));
  // Slit disk off the origin: moving z to 0 keeps the slit radial.
  CHECK(hm_exact(DomainKind::slit_disk, -0.3, BoundarySet::slit(0.5, 0.0)) ==
        Approx(2 / kPi * std::asin((1 - (0.5 + 0.3) / 1.15) / (1 + (0.5 + 0.3) / 1.15))).epsilon(1e-14));
  CHECK_THROWS_AS(hm_exact(DomainKind::halfplane_minus_ray, Cx(0, 1), BoundarySet::ray_left(0)),
                  UnsupportedConfig);
  CHECK_THROWS_AS(hm_exact(DomainKind::disk, 0.0, BoundarySet::ray_left(0)), UnsupportedConfig);
  CHECK_THROWS_AS(hm_exact(DomainKind::slit_disk, Cx(0, 0.2), BoundarySet::slit(0.5, 0.0)), UnsupportedConfig);
}

TEST_CASE("partition of the circle into three arcs") {
  const Cx z(0.1, 0.4);
  const double s = hm_exact(DomainKind::disk, z, BoundarySet::arc(0, 2)) +
                   hm_exact(DomainKind::disk, z, BoundarySet::arc(2, 4)) +
                   hm_exact(DomainKind::disk, z, BoundarySet::arc(4, 2 * kPi));
  CHECK(s == Approx(1.0).epsilon(1e-14));
  const auto d = WosDomain::disk();
  const auto a = hm_wos(d, z, BoundarySet::arc(0, 2), 50000, 1e-4, 3);
  const auto b = hm_wos(d, z, BoundarySet::arc(2, 4), 50000, 1e-4, 3);
  const auto c = hm_wos(d, z, BoundarySet::arc(4, 2 * kPi), 50000, 1e-4, 3);
  const double sigma = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error + c.std_error * c.std_error);
  CHECK(std::abs(a.value + b.value + c.value - 1.0) <= 4 * sigma + 1e-3);
}

TEST_CASE("hm_wos against closed forms") {
  SECTION("slit disk") {
    const auto e = hm_wos(WosDomain::slit_disk(1.0 / 3.0), 0.0, BoundarySet::slit(1.0 / 3.0, 0.0));
    CHECK(within(e, 1.0 / 3.0));
    CHECK(e.samples == 200000);
    CHECK(e.shell_eps == 1e-4);
  }
  SECTION("half-plane ray") {
    const Cx z = std::polar(1.0, 3 * kPi / 4);
    const auto e = hm_wos(WosDomain::upper_halfplane(), z, BoundarySet::ray_left(0.0));
    CHECK(std::abs(e.value - 0.75) < 4 * e.std_error);
  }
  SECTION("whole boundary") {
    const auto e = hm_wos(WosDomain::disk(), Cx(0.2, 0.5), BoundarySet::everything(), 20000);
    CHECK(e.value == 1.0);
  }
  SECTION("five settings per exact configuration") {
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto E = BoundarySet::slit(r, 1.0);
      const Cx z = std::polar(-0.2, 1.0);
      CHECK(within(hm_wos(WosDomain::slit_disk(r, 1.0), z, E, 40000, 1e-4, 5), hm_exact(DomainKind::slit_disk, z, E)));
    }
    for (double x0 : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      const auto E = BoundarySet::ray_right(x0);
      const Cx z(0.3, 0.8);
      CHECK(within(hm_wos(WosDomain::upper_halfplane(), z, E, 40000, 1e-4, 5),
                   hm_exact(DomainKind::upper_halfplane, z, E)));
    }
    for (double d : {0.2, 0.6, 1.0, 1.5, 2.0}) {
      const auto E = BoundarySet::arc_of_diameter(d);
      const Cx z(-0.1, 0.3);
      CHECK(within(hm_wos(WosDomain::disk(), z, E, 40000, 1e-4, 5), hm_exact(DomainKind::disk, z, E)));
    }
  }
}

TEST_CASE("hm_wos reproducibility") {
  const auto E = BoundarySet::slit(0.5, 0.0);
  const auto a = hm_wos(WosDomain::slit_disk(0.5), 0.0, E, 20000, 1e-4, 42);
  const auto b = hm_wos(WosDomain::slit_disk(0.5), 0.0, E, 20000, 1e-4, 42);
  CHECK(a.value == b.value);
  const auto p = hm_wos(WosDomain::slit_disk(0.5), 0.0, E, 20000, 1e-4, 42, 4);
  const auto q = hm_wos(WosDomain::slit_disk(0.5), 0.0, E, 20000, 1e-4, 42, 4);
  CHECK(p.value == q.value);
  CHECK(std::abs(p.value - a.value) < 4 * std::hypot(p.std_error, a.std_error));
  CHECK(std::abs(a.std_error - std::sqrt(a.value * (1 - a.value) / (20000 - 1))) < 1e-12);
  CHECK_THROWS_AS(hm_wos(WosDomain::disk(), 2.0, E), DomainError);
  CHECK_THROWS_AS(hm_wos(WosDomain::disk(), 0.0, E, 10, 0.0), DomainError);
}

TEST_CASE("domain monotonicity for slit disks") {
  const auto circle = BoundarySet::arc(0.0, 2 * kPi);
  double prev = 1.0, prev_se = 0.0;
  for (double r : {0.8, 0.6, 0.4, 0.2}) {
    const auto e = hm_wos(WosDomain::slit_disk(r), 0.0, circle, 40000, 1e-4, 9);
    // Scoring on the circle alone; the slit's outer end is shared, so fattening
    // adds at most a sliver near z = 1.
    CHECK(e.value <= prev + 4 * std::hypot(e.std_error, prev_se));
    prev = e.value;
    prev_se = e.std_error;
  }
}

TEST_CASE("projection onto a radial slit") {
  for (double r : {0.3, 0.6}) {
    for (double zabs : {0.0, 0.3}) {
      const double angle = 2.0;
      const auto E = BoundarySet::slit(r, angle);
      const Cx z = std::polar(zabs, angle + 1.3);
      const auto e = hm_wos(WosDomain::slit_disk(r, angle), z, E, 40000, 1e-4, 13);
      const double ref = hm_exact(DomainKind::slit_disk, -zabs, BoundarySet::slit(r, 0.0));
      CHECK(e.value >= ref - 4 * e.std_error);
    }
  }
}

TEST_CASE("strong Markov doubling for an interior ray") {
  for (double y0 : {0.5, 1.0, 2.0}) {
    const double x0 = 1.0;
    const Cx z(0.0, y0);
    const auto A = BoundarySet::path({Cx(x0, y0), Cx(1e12, y0)});
    const auto e = hm_wos(WosDomain::halfplane_minus_ray(y0, x0), z, A, 40000, 1e-4, 21);
    const double proj = hm_exact(DomainKind::upper_halfplane, z, BoundarySet::ray_right(x0));
    CHECK(e.value <= 2 * proj + 4 * e.std_error);
  }
}

TEST_CASE("diameter_lower_bound") {
  CHECK(diameter_lower_bound(2.0) == Approx(0.5).epsilon(1e-15));
  CHECK(diameter_lower_bound(1.0) == Approx(1.0 / 6.0).epsilon(1e-15));
  for (int k = 1; k <= 9; ++k) {
    const double r = k / 10.0;
    CHECK(2 / kPi * std::asin((1 - r) / (1 + r)) >= diameter_lower_bound(1 - r));
  }
  CHECK_THROWS_AS(diameter_lower_bound(0.0), DomainError);
  CHECK_THROWS_AS(diameter_lower_bound(2.5), DomainError);
}

TEST_CASE("extremal length rules") {
  CHECK(extremal_rectangle(2, 1) == 2.0);
  CHECK(extremal_rectangle(1.7, 1.7) == 1.0);
  CHECK(extremal_rectangle(kPi, 2) == kPi / 2);
  CHECK_THROWS_AS(extremal_rectangle(0, 1), DomainError);
  CHECK(serial_lower_bound({{1, 1}, {1, 1}}) == 2.0);
  CHECK(serial_lower_bound({{0.7, 1}, {1.3, 1}}) == extremal_rectangle(2, 1));
  const double t = 7.5, t0 = 2.25, d = kPi / 3;
  CHECK(serial_lower_bound({{t - t0, d}}) == (t - t0) / d);
  CHECK_THROWS_AS(serial_lower_bound({{-1, 1}}), DomainError);
  CHECK(beurling_upper(0) == 8 / kPi);
  CHECK(beurling_upper(1) == Approx(0.1100).margin(5e-5));
  CHECK(beurling_upper(serial_lower_bound({{3, kPi / 2}})) == Approx(8 / kPi * std::exp(-6.0)).epsilon(1e-14));
  double prev = kInf;
  for (double a = 0.1; a < 5; a += 0.1) {
    const double v = beurling_upper(extremal_rectangle(a, 1.3));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("strip_module antiderivatives") {
  CHECK(strip_module([](double) { return 0.5; }, 0, 3) == Approx(extremal_rectangle(3, 0.5)).epsilon(1e-12));
  auto f = [](double s) { return std::sqrt(1 + s); };
  auto theta = [](double s) { return kPi * 2 * std::sqrt(1 + s); };  // pi / f'
  CHECK(std::abs(strip_module(theta, 0, 3) - (f(3) - f(0)) / kPi) < 1e-8);
  CHECK(std::abs(strip_module(theta, 0, 3) - 1 / kPi) < 1e-8);
  CHECK(std::abs(strip_module([](double s) { return 1 + s; }, 0, 1) - std::log(2.0)) < 1e-8);
  CHECK_THROWS_AS(strip_module([](double s) { return s - 1; }, 0, 2), DomainError);
  CHECK_THROWS_AS(strip_module([](double) { return 1.0; }, 2, 1), DomainError);
}
