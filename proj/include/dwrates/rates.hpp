#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dwrates/semigroups.hpp"

namespace dw {

// Ordered name/value record of every constant an evaluator used.
using Constants = std::vector<std::pair<std::string, double>>;

// Bounds are carried as logarithms so that e^{-lambda t} at t = 1e4 stays exact;
// lower = -inf and upper = +inf mean "no claim".
struct Bounds {
  double log_lower = -kInf;
  double log_upper = kInf;
  Constants constants;
  double lower() const;
  double upper() const;
};

// Forward upper bound, in normalized Koenigs values h - shift.
double forward_upper(const SemigroupModel& s, Cx z, double t);
double log_forward_upper(const SemigroupModel& s, Cx z, double t);

// Forward lower bound. The exponent constant uses sinh(lambda + eps); the displayed variant
// (sinh lambda, max{4, .}) is recorded under "c_displayed".
Bounds forward_lower(const SemigroupModel& s, Cx z, double eps, double t);

// Two-sided backward bounds for z in `petal`; case (a)/(b)/(c) follows from the petal type and the
// classification.
Bounds backward_bounds(const SemigroupModel& s, Cx z, const Petal& petal, double eps, double t);

// First t >= 0 with petal gap width d(Re h(z) - t) <= -pi/(nu + eps), raised to
// |h(z) - h(0)|.
double t_z_eps(const SemigroupModel& s, Cx z, const Petal& petal, double eps);

enum class NonregularCase { a, b, c, d };
struct NonregularGeometry {
  double T = 0.0;
  double d_T = 0.0;
};
// Non-regular backward upper bound. Cases (a), (b) share the regular upper
// evaluators; case (c) needs the petal whose boundary hosts the orbit; case (d)
// needs (T, d_T).
double nonregular_upper(const SemigroupModel& s, Cx z, NonregularCase c, double eps, double t,
                        const Petal* petal = nullptr,
                        std::optional<NonregularGeometry> geometry = std::nullopt);
double log_nonregular_upper(const SemigroupModel& s, Cx z, NonregularCase c, double eps, double t,
                            const Petal* petal = nullptr,
                            std::optional<NonregularGeometry> geometry = std::nullopt);

// Elliptic forward bounds.
Bounds elliptic_bounds(const SemigroupModel& s, Cx z, double t);

// Elliptic backward bounds via the lift. nu defaults to the petal's repelling value; an override
// exists to evaluate the bound with another exponent. The bounds are claimed only
// for t > T; the evaluator itself returns c1 e^{nu t} and c2 e^{(nu+eps) t} for any t >= 0.
struct EllipticBackwardSetup {
  double T = 0.0;           // first 1/64-grid time after which |Log gamma(t)| < 1
  double c1 = 0.0, c2 = 0.0;
  double nu = 0.0, alpha = 0.0, eps = 0.0;
  Cx zeta;
  Constants constants;
};
EllipticBackwardSetup elliptic_backward_setup(const SemigroupModel& s, Cx z, double eps,
                                              std::optional<double> nu_override = std::nullopt);
Bounds elliptic_backward_bounds(const SemigroupModel& s, Cx z, double eps, double t,
                                std::optional<double> nu_override = std::nullopt);

struct BoundRow {
  double t = 0.0;
  double log_measured = 0.0;
  double log_lower = -kInf;
  double log_upper = kInf;
  bool ok_lower = true;
  bool ok_upper = true;
};

struct BoundReport {
  std::string semigroup_id;
  Cx z;
  Direction direction = Direction::forward;
  double epsilon = 0.0;
  Cx shift;
  Cx landing;
  std::string bound_case;
  std::vector<BoundRow> rows;
  Constants constants;
  bool pass() const;
};

struct VerifyOptions {
  std::optional<Cx> shift;   // replaces the model's normalization shift
  double upper_scale = 1.0;  // multiplies every upper bound (test hook)
  std::optional<double> nu_override;  // elliptic backward only
};

BoundReport verify_orbit_bounds(const SemigroupModel& s, Cx z, Direction dir, double eps,
                                const std::vector<double>& times, const VerifyOptions& opt = {});

std::vector<double> log_grid(double t_min, double t_max, std::size_t count);
std::vector<double> linear_grid(double t_min, double t_max, std::size_t count);

struct RateFit {
  double exponent = 0.0;   // log|gamma(t_max) - landing| / t_max
  double slope = 0.0;      // least-squares slope over the last 4 samples
  bool diverging = false;  // window slopes keep falling (super-repelling signature)
};
// min_horizon is the smallest admissible t_max.
RateFit rate_exponent_fit(const OrbitSeries& series, double min_horizon = 100.0);

struct SharpnessReport {
  std::string id;
  double t = 0.0;
  double limit_estimate = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
std::vector<std::string> sharpness_ids();
SharpnessReport sharpness_suite(const std::string& id);

struct EnvelopeSpec {
  enum Kind { forward_lower_sharpness, nonregular_backward } kind = forward_lower_sharpness;
  std::function<double(double)> f, fprime;  // forward envelope: f increasing, concave
  std::function<double(double)> theta;      // backward envelope: increasing, positive
  double x0 = 0.0;    // Re h(0) (forward) or Re h(z) (backward)
  double K = 1.0;
  double zabs = 0.0;  // |z|
};
double envelope_evaluators(const EnvelopeSpec& spec, double t);
// strip_module of pi/f' over [x0, t] minus (f(t) - f(x0))/pi.
double envelope_strip_certificate(const EnvelopeSpec& spec, double t);

// Serialization of bound reports.
std::string report_csv(const BoundReport& r);
std::string report_json(const BoundReport& r);

}  // namespace dw
