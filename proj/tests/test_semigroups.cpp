#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "dwrates/errors.hpp"
#include "dwrates/semigroups.hpp"

using namespace dw;
using Catch::Approx;

namespace {

Cx random_disk_point(std::mt19937_64& rng, double rmax = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

// Elliptic orbit from k w^2 - (2k + 4) w + k = 0 with k = 4 e^{-lambda t} z/(1-z)^2,
// whose roots are k/(1 +/- sqrt(1+k))^2; the one in the disk is the orbit point.
Cx elliptic_orbit_oracle(double lambda, Cx z, double t) {
  const Cx k = 4.0 * std::exp(-lambda * t) * z / ((1.0 - z) * (1.0 - z));
  const Cx r = std::sqrt(1.0 + k);
  const Cx w1 = k / ((1.0 + r) * (1.0 + r));
  return std::abs(w1) < 1.0 ? w1 : k / ((1.0 - r) * (1.0 - r));
}

}  // namespace

TEST_CASE("catalog construction and classification") {
  const auto koebe = semigroup_from_id("koebe");
  CHECK(koebe.tau == Cx(1.0));
  CHECK(classify(koebe) == Classification::parabolic_zero);
  CHECK(semigroup_from_id("koebe-parabolic-zero").kind == Kind::koebe);
  const auto ell = semigroup_from_id("elliptic-explicit:lambda=1");
  CHECK(ell.tau == Cx(0.0));
  CHECK(ell.spectral == Cx(1.0));
  CHECK(classify(ell) == Classification::elliptic);
  CHECK(classify(semigroup_from_id("slit-strip")) == Classification::hyperbolic);
  CHECK(classify(semigroup_from_id("slit-halfplane")) == Classification::parabolic_positive);
  CHECK(classify(semigroup_from_id("sector:theta=1")) == Classification::parabolic_zero);
  CHECK(classify(semigroup_from_id("parabolic-group")) == Classification::parabolic_positive);
  CHECK(classify(semigroup_from_id("hyperbolic-group:lambda=1")) == Classification::hyperbolic);
  const auto hg2 = semigroup_from_id("hyperbolic-group:lambda=2");
  const auto strip = hg2.domain.minimal_strip();
  REQUIRE(strip);
  CHECK(strip->second - strip->first == Approx(kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(make_semigroup(Kind::hyperbolic_group, 0.0), ParamError);
  CHECK_THROWS_AS(make_semigroup(Kind::sector, kPi), ParamError);
  CHECK_THROWS_AS(make_semigroup(Kind::elliptic, -1.0), ParamError);
  CHECK_THROWS(semigroup_from_id("moebius-9"));
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    CHECK(classify(s) == s.classification);
    if (s.kind == Kind::elliptic) {
      CHECK(std::abs(s.tau) < 1.0);
      CHECK(s.spectral.real() > 0.0);
    } else {
      CHECK(std::abs(s.tau) == 1.0);
    }
  }
}

TEST_CASE("Koenigs values and inverses") {
  CHECK(koenigs(semigroup_from_id("koebe"), 0.0) == Cx(1.0));
  const auto ell = semigroup_from_id("elliptic-explicit:lambda=1");
  CHECK(koenigs(ell, 0.0) == Cx(0.0));
  CHECK_THROWS_AS(koenigs_inv(ell, -1.0), DomainError);
  const Cx h0 = koenigs(semigroup_from_id("slit-strip"), 0.0);
  CHECK(h0.real() == Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(h0.imag() == Approx(kPi / 2).epsilon(1e-15));
  std::mt19937_64 rng(1);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    for (int k = 0; k < 200; ++k) {
      const Cx z = random_disk_point(rng, 0.95);
      INFO(id << " " << z);
      CHECK(std::abs(koenigs_inv(s, koenigs(s, z)) - z) < 1e-10);
      CHECK(s.domain.contains(koenigs(s, z)));
    }
  }
}

TEST_CASE("Koenigs derivative against finite differences") {
  std::mt19937_64 rng(2);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    for (int k = 0; k < 20; ++k) {
      const Cx z = random_disk_point(rng, 0.8);
      const double d = 1e-6;
      const Cx fd = (koenigs(s, z + d) - koenigs(s, z - d)) / (2 * d);
      INFO(id << " " << z);
      CHECK(std::abs(fd - koenigs_derivative(s, z)) < 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("semigroup law and linearization") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    for (int k = 0; k < 100; ++k) {
      const Cx z = random_disk_point(rng);
      const double a = ut(rng), b = ut(rng);
      INFO(id << " z=" << z << " s=" << a << " t=" << b);
      CHECK(std::abs(phi(s, phi(s, z, a), b) - phi(s, z, a + b)) < 1e-9);
      const Cx hz = koenigs(s, z), hp = koenigs(s, phi(s, z, b));
      if (s.kind == Kind::elliptic) CHECK(std::abs(hp - std::exp(-s.lambda * b) * hz) < 1e-9);
      else CHECK(std::abs(hp - hz - b) < 1e-9);
      CHECK(std::abs(phi(s, z, b)) < 1.0);
      CHECK(phi(s, z, 0.0) == z);
    }
  }
}

TEST_CASE("closed-form orbits") {
  CHECK(phi(semigroup_from_id("koebe"), 0.0, 3.0).real() == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(phi(semigroup_from_id("hyperbolic-group:lambda=1"), 0.0, 2.0).real() ==
        Approx(std::tanh(1.0)).epsilon(1e-15));
  const auto koebe = semigroup_from_id("koebe");
  for (double t : {0.5, 10.0, 1e3, 1e6}) {
    const double r = std::sqrt(1 + t);
    CHECK(std::abs(phi(koebe, 0.0, t) - (r - 1) / (r + 1)) < 1e-15);
  }
  std::mt19937_64 rng(4);
  for (double lam : {0.5, 1.0, 2.0}) {
    const auto ell = make_semigroup(Kind::elliptic, lam);
    for (int k = 0; k < 50; ++k) {
      const Cx z = random_disk_point(rng);
      const double t = 5.0 * k / 49.0;
      CHECK(std::abs(phi(ell, z, t) - elliptic_orbit_oracle(lam, z, t)) < 1e-12);
    }
  }
}

TEST_CASE("forward orbits converge to the Denjoy-Wolff point") {
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    const Cx z(0.2, -0.3);
    double prev = kInf;
    for (int k = 5; k <= 12; ++k) {
      const double gap = std::abs(phi(s, z, std::ldexp(1.0, k)) - s.tau);
      INFO(id << " k=" << k);
      // Exponential rates reach tau exactly in double precision by t = 2^11.
      CHECK((gap < prev || (gap == 0.0 && prev == 0.0)));
      prev = gap;
    }
  }
}

TEST_CASE("backward orbits and escape times") {
  const auto koebe = semigroup_from_id("koebe");
  CHECK(escape_time(koebe, 0.0) == Approx(1.0).epsilon(1e-15));
  CHECK(escape_time(koebe, Cx(0, 0.4)) == kInf);
  CHECK_NOTHROW(backward(koebe, Cx(0, 0.4), 1e6));
  CHECK_THROWS_AS(backward(koebe, 0.0, 2.0), EscapeError);
  const auto ell = semigroup_from_id("elliptic-explicit:lambda=1");
  CHECK(escape_time(ell, 0.5) == kInf);
  CHECK(std::isfinite(escape_time(ell, -0.5)));

  // t <= 5 keeps the round trip well conditioned: near a repelling point the
  // forward map amplifies rounding by e^{-nu t}, which is e^{20} for slit-strip at t = 10.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    int n = 0;
    for (int k = 0; n < 100 && k < 10000; ++k) {
      const Cx z = random_disk_point(rng);
      if (!petal_of(s, z)) continue;
      const double t = ut(rng);
      INFO(id << " " << z << " t=" << t);
      const Cx b = backward(s, z, t);
      CHECK(std::abs(b) < 1.0);
      CHECK(std::abs(phi(s, b, t) - z) < 1e-9);
      ++n;
    }
    CHECK(n == 100);
  }
}

TEST_CASE("generator and Berkson-Porta function") {
  const auto koebe = semigroup_from_id("koebe");
  CHECK(std::abs(generator(koebe, 0.0) - 0.25) < 1e-15);
  for (double lam : {0.5, 1.0, 2.0}) {
    const auto ell = make_semigroup(Kind::elliptic, lam);
    CHECK(std::abs(berkson_p(ell, 0.0) - lam) < 1e-9);
    const Cx z(0.3, -0.4);
    CHECK(std::abs(berkson_p(ell, z) - lam * (1.0 - z) / (1.0 + z)) < 1e-12);
  }
  std::mt19937_64 rng(6);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    for (int k = 0; k < 20; ++k) {
      const Cx z = random_disk_point(rng, 0.8);
      const double d = 1e-6;
      INFO(id << " " << z);
      CHECK(std::abs((phi(s, z, d) - z) / d - generator(s, z)) < 1e-4);
    }
    for (int i = 1; i <= 25; ++i)
      for (int j = 0; j < 40; ++j) {
        const Cx z = std::polar(0.99 * i / 25.0, 2 * kPi * (j + 0.5) / 40.0);
        CHECK(berkson_p(s, z).real() >= -1e-12);
      }
  }
}

TEST_CASE("petal metadata") {
  const auto ss = semigroup_from_id("slit-strip");
  REQUIRE(petals(ss).size() == 2);
  for (const auto& p : petals(ss)) {
    CHECK(p.type == PetalType::hyperbolic);
    CHECK(p.nu == -2.0);
  }
  CHECK(petals(ss)[0].alpha == 0.0);
  CHECK(petals(ss)[1].alpha == Approx(kPi / 2).epsilon(1e-15));
  CHECK(petals(semigroup_from_id("koebe")).size() == 2);
  CHECK(petals(semigroup_from_id("parabolic-group")).size() == 1);
  CHECK(petals(semigroup_from_id("slit-halfplane"))[0].alpha == 1.0);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    const bool parabolic_kind =
        s.classification == Classification::parabolic_zero || s.classification == Classification::parabolic_positive;
    for (const auto& p : petals(s)) {
      if (p.type == PetalType::parabolic) CHECK(parabolic_kind);
      if (p.type == PetalType::hyperbolic && s.kind != Kind::elliptic) {
        // Width law: nu = -pi / (maximal strip width).
        const double width = s.kind == Kind::slit_strip ? kPi / 2 : kPi / s.lambda;
        CHECK(p.nu == -kPi / width);
      }
      CHECK(std::abs(std::abs(p.sigma) - 1.0) < 1e-15);
    }
  }
  // Every point of the group disks lies in their single petal.
  CHECK(petal_of(semigroup_from_id("hyperbolic-group:lambda=1"), Cx(0.5, -0.8)));
  CHECK(petal_of(semigroup_from_id("parabolic-group"), Cx(-0.9, 0.1)));
  // Koebe petals are the half-disks.
  CHECK(petal_of(semigroup_from_id("koebe"), Cx(0, 0.4)) == 0u);
  CHECK(petal_of(semigroup_from_id("koebe"), Cx(0, -0.4)) == 1u);
  CHECK(!petal_of(semigroup_from_id("koebe"), 0.3));
}

TEST_CASE("Koenigs domains are convex in the positive direction") {
  std::mt19937_64 rng(8);
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    if (s.kind == Kind::elliptic) continue;
    for (int k = 0; k < 100; ++k) {
      const Cx w = koenigs(s, random_disk_point(rng));
      for (double t : {0.1, 1.0, 10.0, 1e3}) CHECK(s.domain.contains(w + t));
    }
    double prev = 0.0;
    for (double x = -20; x <= 20; x += 0.25) {
      const double l = s.domain.cross_section_width(x, 1.0);
      CHECK(l >= prev);
      prev = l;
    }
  }
}

TEST_CASE("orbit_sample landing points") {
  std::vector<double> times;
  for (int k = 0; k < 40; ++k) times.push_back(std::pow(10.0, -1 + 9.0 * k / 39));
  const auto koebe = semigroup_from_id("koebe");
  const auto f = orbit_sample(koebe, 0.0, times, Direction::forward);
  CHECK(f.landing == Cx(1.0));
  CHECK(f.landing_confirmed);
  const auto b = orbit_sample(koebe, Cx(0, 0.4), times, Direction::backward);
  CHECK(b.landing == Cx(1.0));
  CHECK(b.landing_confirmed);
  for (const Cx& p : b.points) CHECK(std::abs(p) < 1.0);
  std::vector<double> short_times;
  for (int k = 0; k < 40; ++k) short_times.push_back(0.1 + 20.0 * k / 39);
  const auto ss = semigroup_from_id("slit-strip");
  const auto s = orbit_sample(ss, Cx(0.1, -0.3), short_times, Direction::backward);
  const auto pk = petal_of(ss, Cx(0.1, -0.3));
  REQUIRE(pk);
  CHECK(s.landing == petals(ss)[*pk].sigma);
  CHECK(s.landing_confirmed);
  CHECK_THROWS_AS(orbit_sample(koebe, 0.0, {0.5, 2.0}, Direction::backward), EscapeError);
}

TEST_CASE("elliptic lift") {
  const auto ell = semigroup_from_id("elliptic-explicit:lambda=1");
  const auto lift = lift_elliptic(ell);
  CHECK(lift.psi(Cx(0.7, 0.2), 0.0) == Cx(0.7, 0.2));
  CHECK(lift.residual(1.0, 1.0) < 1e-9);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Cx w(0.1 + 0.4 * i, -3.0 + 0.6 * j);
      const double t = 5.0 * j / 9.0 + 0.1 * i;
      CHECK(lift.residual(w, t) < 1e-9);
    }
  // Multiplier of phi_hat_t at -1, measured along the radius, is e^{-nu t}.
  const double t = 1.0, d = 1e-7;
  const double mult = std::abs(lift.phi_hat(Cx(-1.0 + d, 0.0), t) + 1.0) / d;
  CHECK(mult == Approx(std::exp(-lift.nu() * t)).epsilon(1e-5));
  CHECK(lift.nu() == -0.5);
  CHECK_THROWS_AS(lift_elliptic(semigroup_from_id("koebe")), LiftError);
  // Lifted Koenigs map linearizes phi_hat.
  const Cx zeta(-0.2, 0.3);
  CHECK(std::abs(lift.koenigs_hat(lift.phi_hat(zeta, 2.0)) - lift.koenigs_hat(zeta) - 2.0) < 1e-9);
}
