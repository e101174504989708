#include "dwrates/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dwrates/errors.hpp"
#include "dwrates/hmeasure.hpp"
#include "dwrates/rates.hpp"

namespace dw {
namespace {

using nlohmann::json;

const std::vector<std::string> kExperiments = {"orbit", "bounds", "sharpness", "hm-check", "envelope"};

bool one_of(const std::string& s, const std::vector<std::string>& set) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cx_text(Cx z) {
  if (z.imag() == 0.0) return num(z.real() == 0.0 ? 0.0 : z.real());
  if (z.real() == 0.0) return num(z.imag()) + "i";
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

json jnum(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json jcx(Cx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// Field readers raise ParseError naming the offending field.
template <class T>
T get(const json& j, const char* key, const std::string& path, T dflt) {
  if (!j.contains(key)) return dflt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError("field '" + path + key + "' has the wrong type");
  }
}

Cx get_cx(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
      !j["im"].is_number())
    throw ParseError("field '" + path + "' must be an object {\"re\": number, \"im\": number}");
  return {j["re"].get<double>(), j["im"].get<double>()};
}

const json& sub(const json& j, const char* key) {
  static const json empty = json::object();
  if (!j.contains(key)) return empty;
  if (!j[key].is_object()) throw ParseError(std::string("field '") + key + "' must be an object");
  return j[key];
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  if (!one_of(c.experiment, kExperiments)) v.push_back("experiment: unknown kind '" + c.experiment + "'");
  const bool needs_model = c.experiment == "orbit" || c.experiment == "bounds";
  if (needs_model && c.semigroup.empty()) v.push_back("semigroup: required for " + c.experiment);
  if (!c.semigroup.empty()) {
    try {
      semigroup_from_id(c.semigroup);
    } catch (const Error& e) {
      v.push_back(std::string("semigroup: ") + e.what());
    }
  }
  if (needs_model && c.start.empty()) v.push_back("start: at least one start point required");
  for (std::size_t k = 0; k < c.start.size(); ++k)
    if (!finite(c.start[k]) || !(std::abs(c.start[k]) < 1.0))
      v.push_back("start[" + std::to_string(k) + "]: must lie in the open unit disk");
  if (!(c.epsilon >= 0.0)) v.push_back("epsilon: must be >= 0");
  if (c.grid.count < 2) v.push_back("grid.count: must be >= 2");
  if (!(c.grid.t_min > 0.0)) v.push_back("grid.t_min: must be > 0");
  if (!(c.grid.t_max > c.grid.t_min)) v.push_back("grid.t_max: must exceed t_min");
  if (c.grid.spacing != "log" && c.grid.spacing != "linear") v.push_back("grid.spacing: log or linear");
  if (c.mc.n == 0) v.push_back("mc.n: must be > 0");
  if (!(c.mc.eps > 0.0)) v.push_back("mc.eps: must be > 0");
  if (c.experiment == "sharpness" && !one_of(c.sharpness_id, sharpness_ids()))
    v.push_back("sharpness_id: unknown id '" + c.sharpness_id + "'");
  if (c.experiment == "hm-check" && !one_of(c.hm.case_name, {"slit-disk", "halfplane-ray", "disk-arc"}))
    v.push_back("hm.case: unknown case '" + c.hm.case_name + "'");
  if (c.experiment == "envelope") {
    if (c.envelope.kind != "forward" && c.envelope.kind != "backward") v.push_back("envelope.kind: forward or backward");
    if (!one_of(c.envelope.f, {"sqrt1p", "log2p"})) v.push_back("envelope.f: sqrt1p or log2p");
    if (!one_of(c.envelope.theta, {"const", "logistic"})) v.push_back("envelope.theta: const or logistic");
    if (!(c.envelope.theta_param > 0.0)) v.push_back("envelope.theta_param: must be > 0");
  }
  if (!(c.inject_upper_scale > 0.0)) v.push_back("inject_upper_scale: must be > 0");
  if (c.workers == 0) v.push_back("workers: must be >= 1");
  if (c.out.empty()) v.push_back("out: empty prefix");
  if (!v.empty()) {
    std::string msg = "invalid config:";
    for (const auto& s : v) msg += "\n  " + s;
    throw ValidationError(msg);
  }
}

std::vector<double> grid_of(const ExperimentConfig& c) {
  return c.grid.spacing == "log" ? log_grid(c.grid.t_min, c.grid.t_max, c.grid.count)
                                 : linear_grid(c.grid.t_min, c.grid.t_max, c.grid.count);
}

EnvelopeSpec envelope_spec(const EnvelopeConfig& e) {
  EnvelopeSpec s;
  s.kind = e.kind == "forward" ? EnvelopeSpec::forward_lower_sharpness : EnvelopeSpec::nonregular_backward;
  if (e.f == "sqrt1p") {
    s.f = [](double x) { return std::sqrt(1.0 + x); };
    s.fprime = [](double x) { return 0.5 / std::sqrt(1.0 + x); };
  } else {
    s.f = [](double x) { return std::log(2.0 + x); };
    s.fprime = [](double x) { return 1.0 / (2.0 + x); };
  }
  const double a = e.theta_param;
  if (e.theta == "const") s.theta = [a](double) { return a; };
  else s.theta = [a](double x) { return a / (1.0 + std::exp(-x)); };
  s.x0 = e.x0;
  s.K = e.K;
  s.zabs = e.zabs;
  return s;
}

struct Csv {
  std::ostringstream os;
  Csv() { os << "t,measured,lower,upper,ok_lower,ok_upper\n"; }
  void row(double t, double measured, std::optional<double> lo, std::optional<double> up, bool okl, bool oku) {
    os << num(t) << ',' << num(measured) << ',' << (lo ? num(*lo) : "") << ',' << (up ? num(*up) : "")
       << ',' << (okl ? 1 : 0) << ',' << (oku ? 1 : 0) << '\n';
  }
};

json constants_json(const Constants& c) {
  json j = json::object();
  for (const auto& [k, v] : c) j[k] = jnum(v);
  return j;
}

void run_orbit(const ExperimentConfig& c, Csv& csv, json& meta, std::vector<std::string>& fails) {
  const auto s = semigroup_from_id(c.semigroup);
  const auto times = grid_of(c);
  json blocks = json::array();
  for (Cx z : c.start) {
    const auto o = orbit_sample(s, z, times, c.direction);
    for (std::size_t k = 0; k < times.size(); ++k)
      csv.row(times[k], std::exp(o.log_gaps[k]), std::nullopt, std::nullopt, true, true);
    blocks.push_back({{"start", jcx(z)},
                      {"rows", times.size()},
                      {"landing", jcx(o.landing)},
                      {"landing_confirmed", o.landing_confirmed},
                      {"escape_time", jnum(o.escape_time)}});
    if (!finite(o.landing)) fails.push_back("start " + cx_text(z) + ": orbit has no landing point");
  }
  meta["row_blocks"] = blocks;
  meta["constants"] = json::object();
}

void run_bounds(const ExperimentConfig& c, Csv& csv, json& meta, std::vector<std::string>& fails) {
  const auto s = semigroup_from_id(c.semigroup);
  const auto times = grid_of(c);
  VerifyOptions opt;
  opt.upper_scale = c.inject_upper_scale;
  json blocks = json::array();
  std::size_t row_index = 0;
  for (Cx z : c.start) {
    const auto r = verify_orbit_bounds(s, z, c.direction, c.epsilon, times, opt);
    for (const auto& row : r.rows) {
      csv.row(row.t, std::exp(row.log_measured), std::exp(row.log_lower), std::exp(row.log_upper),
              row.ok_lower, row.ok_upper);
      if (!row.ok_lower || !row.ok_upper)
        fails.push_back("row " + std::to_string(row_index) + " (start " + cx_text(z) + ", t=" + num(row.t) +
                        "): " + (row.ok_lower ? "" : "lower ") + (row.ok_upper ? "" : "upper ") + "violated");
      ++row_index;
    }
    blocks.push_back({{"start", jcx(z)},
                      {"rows", r.rows.size()},
                      {"case", r.bound_case},
                      {"landing", jcx(r.landing)},
                      {"constants", constants_json(r.constants)}});
  }
  meta["row_blocks"] = blocks;
  meta["constants"] = blocks.empty() ? json::object() : blocks[0]["constants"];
}

void run_sharpness(const ExperimentConfig& c, Csv& csv, json& meta, std::vector<std::string>& fails) {
  const auto r = sharpness_suite(c.sharpness_id);
  const double lo = r.expected - r.tolerance, hi = r.expected + r.tolerance;
  csv.row(r.t, r.limit_estimate, lo, hi, r.limit_estimate > lo, r.limit_estimate < hi);
  meta["limit_estimate"] = r.limit_estimate;
  meta["expected"] = r.expected;
  meta["tolerance"] = r.tolerance;
  meta["constants"] = {{"t", r.t}};
  if (!r.pass) fails.push_back("sharpness " + r.id + ": estimate outside tolerance");
}

void run_hm(const ExperimentConfig& c, Csv& csv, json& meta, std::vector<std::string>& fails) {
  const auto& h = c.hm;
  double exact = 0.0;
  HMEstimate est;
  if (h.case_name == "slit-disk") {
    const auto E = BoundarySet::slit(h.param, 0.0);
    exact = hm_exact(DomainKind::slit_disk, h.z, E);
    est = hm_wos(WosDomain::slit_disk(h.param), h.z, E, c.mc.n, c.mc.eps, c.mc.seed, c.workers);
  } else if (h.case_name == "halfplane-ray") {
    const auto E = BoundarySet::ray_left(h.param);
    exact = hm_exact(DomainKind::upper_halfplane, h.z, E);
    est = hm_wos(WosDomain::upper_halfplane(), h.z, E, c.mc.n, c.mc.eps, c.mc.seed, c.workers);
  } else {
    const auto E = BoundarySet::arc_of_diameter(h.param);
    exact = hm_exact(DomainKind::disk, h.z, E);
    est = hm_wos(WosDomain::disk(), h.z, E, c.mc.n, c.mc.eps, c.mc.seed, c.workers);
  }
  const double tol = std::max(4.0 * est.std_error, 0.01);
  const bool ok = std::abs(est.value - exact) < tol;
  csv.row(0.0, est.value, exact - tol, exact + tol, est.value > exact - tol, est.value < exact + tol);
  meta["exact"] = exact;
  meta["wos"] = est.value;
  meta["stderr"] = est.std_error;
  meta["samples"] = est.samples;
  meta["shell_eps"] = est.shell_eps;
  meta["tolerance"] = tol;
  meta["workers"] = c.workers;
  meta["constants"] = {{"param", h.param}};
  if (!ok) fails.push_back("hm-check " + h.case_name + ": estimate outside tolerance");
}

void run_envelope(const ExperimentConfig& c, Csv& csv, json& meta, std::vector<std::string>& fails) {
  const auto spec = envelope_spec(c.envelope);
  double worst = 0.0;
  for (double t : grid_of(c)) {
    const double v = envelope_evaluators(spec, t);
    bool ok = true;
    if (spec.kind == EnvelopeSpec::forward_lower_sharpness && t > spec.x0) {
      const double cert = std::abs(envelope_strip_certificate(spec, t));
      worst = std::max(worst, cert);
      ok = cert < 1e-8;
      if (!ok) fails.push_back("envelope t=" + num(t) + ": strip module certificate off by " + num(cert));
    }
    csv.row(t, v, std::nullopt, std::nullopt, ok, ok);
  }
  meta["constants"] = {{"x0", spec.x0}, {"K", spec.K}, {"zabs", spec.zabs}, {"certificate_max_error", worst}};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto ? upto - 1 : 0), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig c;
  c.experiment = get<std::string>(j, "experiment", "", "");
  c.semigroup = get<std::string>(j, "semigroup", "", "");
  if (j.contains("start")) {
    if (!j["start"].is_array()) throw ParseError("field 'start' must be an array");
    for (std::size_t k = 0; k < j["start"].size(); ++k)
      c.start.push_back(get_cx(j["start"][k], "start[" + std::to_string(k) + "]"));
  }
  const auto dir = get<std::string>(j, "direction", "", "forward");
  if (dir != "forward" && dir != "backward") throw ValidationError("invalid config:\n  direction: forward or backward");
  c.direction = dir == "forward" ? Direction::forward : Direction::backward;
  c.epsilon = get<double>(j, "epsilon", "", 0.0);
  const json& g = sub(j, "grid");
  c.grid.t_min = get<double>(g, "t_min", "grid.", c.grid.t_min);
  c.grid.t_max = get<double>(g, "t_max", "grid.", c.grid.t_max);
  c.grid.count = get<std::size_t>(g, "count", "grid.", c.grid.count);
  c.grid.spacing = get<std::string>(g, "spacing", "grid.", c.grid.spacing);
  const json& mc = sub(j, "mc");
  c.mc.n = get<std::size_t>(mc, "n", "mc.", c.mc.n);
  c.mc.eps = get<double>(mc, "eps", "mc.", c.mc.eps);
  c.mc.seed = get<std::uint64_t>(mc, "seed", "mc.", c.mc.seed);
  c.out = get<std::string>(j, "out", "", c.out);
  c.sharpness_id = get<std::string>(j, "sharpness_id", "", "");
  const json& hm = sub(j, "hm");
  c.hm.case_name = get<std::string>(hm, "case", "hm.", c.hm.case_name);
  c.hm.param = get<double>(hm, "param", "hm.", c.hm.param);
  if (hm.contains("z")) c.hm.z = get_cx(hm["z"], "hm.z");
  const json& env = sub(j, "envelope");
  c.envelope.kind = get<std::string>(env, "kind", "envelope.", c.envelope.kind);
  c.envelope.f = get<std::string>(env, "f", "envelope.", c.envelope.f);
  c.envelope.theta = get<std::string>(env, "theta", "envelope.", c.envelope.theta);
  c.envelope.theta_param = get<double>(env, "theta_param", "envelope.", c.envelope.theta_param);
  c.envelope.x0 = get<double>(env, "x0", "envelope.", c.envelope.x0);
  c.envelope.K = get<double>(env, "K", "envelope.", c.envelope.K);
  c.envelope.zabs = get<double>(env, "zabs", "envelope.", c.envelope.zabs);
  c.inject_upper_scale = get<double>(j, "inject_upper_scale", "", 1.0);
  c.workers = get<unsigned>(j, "workers", "", 1u);
  validate(c);
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["semigroup"] = c.semigroup;
  j["start"] = json::array();
  for (Cx z : c.start) j["start"].push_back(jcx(z));
  j["direction"] = to_string(c.direction);
  j["epsilon"] = c.epsilon;
  j["grid"] = {{"t_min", c.grid.t_min}, {"t_max", c.grid.t_max}, {"count", c.grid.count}, {"spacing", c.grid.spacing}};
  j["mc"] = {{"n", c.mc.n}, {"eps", c.mc.eps}, {"seed", c.mc.seed}};
  j["out"] = c.out;
  j["sharpness_id"] = c.sharpness_id;
  j["hm"] = {{"case", c.hm.case_name}, {"param", c.hm.param}, {"z", jcx(c.hm.z)}};
  j["envelope"] = {{"kind", c.envelope.kind}, {"f", c.envelope.f},       {"theta", c.envelope.theta},
                   {"theta_param", c.envelope.theta_param},              {"x0", c.envelope.x0},
                   {"K", c.envelope.K},       {"zabs", c.envelope.zabs}};
  j["inject_upper_scale"] = c.inject_upper_scale;
  j["workers"] = c.workers;
  return j.dump(2);
}

RunResult run(const ExperimentConfig& c, bool write_files) {
  validate(c);
  Csv csv;
  json meta;
  meta["experiment"] = c.experiment;
  meta["semigroup"] = c.semigroup;
  meta["seed"] = c.mc.seed;
  std::vector<std::string> fails;
  try {
    if (c.experiment == "orbit") run_orbit(c, csv, meta, fails);
    else if (c.experiment == "bounds") run_bounds(c, csv, meta, fails);
    else if (c.experiment == "sharpness") run_sharpness(c, csv, meta, fails);
    else if (c.experiment == "hm-check") run_hm(c, csv, meta, fails);
    else run_envelope(c, csv, meta, fails);
  } catch (const Error& e) {
    fails.push_back(std::string("error: ") + e.what());
  }
  if (!meta.contains("constants")) meta["constants"] = json::object();
  meta["pass"] = fails.empty();
  meta["failures"] = fails;

  RunResult r;
  r.exit_status = fails.empty() ? 0 : 1;
  r.csv = csv.os.str();
  r.meta_json = meta.dump(2) + "\n";
  r.failures = fails;
  if (write_files) {
    std::ofstream(c.out + ".csv", std::ios::binary) << r.csv;
    std::ofstream(c.out + ".meta.json", std::ios::binary) << r.meta_json;
  }
  return r;
}

std::string list_catalog() {
  std::ostringstream os;
  for (const auto& id : catalog_ids()) {
    const auto s = semigroup_from_id(id);
    os << id << "  tau=" << cx_text(s.tau) << "  lambda=" << num(s.lambda) << "  "
       << to_string(s.classification) << "  petals=" << s.petals.size();
    for (const auto& p : s.petals) {
      os << "  [" << to_string(p.type) << " sigma=" << cx_text(p.sigma);
      if (p.type == PetalType::hyperbolic) os << " nu=" << num(p.nu);
      os << " alpha=" << num(p.alpha) << " image=" << p.image << "]";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dw
