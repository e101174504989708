#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwrates/semigroups.hpp"

namespace dw {

struct GridSpec {
  double t_min = 0.1;
  double t_max = 1e4;
  std::size_t count = 64;
  std::string spacing = "log";  // log | linear
  bool operator==(const GridSpec&) const = default;
};

struct MonteCarloSpec {
  std::size_t n = 200000;
  double eps = 1e-4;
  std::uint64_t seed = 1;
  bool operator==(const MonteCarloSpec&) const = default;
};

// hm-check cases: slit-disk (param r), halfplane-ray (param x0, E = (-inf, x0]),
// disk-arc (param d, arc centered at angle 0).
struct HMCheckSpec {
  std::string case_name = "slit-disk";
  double param = 1.0 / 3.0;
  Cx z;
  bool operator==(const HMCheckSpec&) const = default;
};

// envelope kinds: forward (f = sqrt1p | log2p) and backward (theta = const | logistic,
// scaled by theta_param).
struct EnvelopeConfig {
  std::string kind = "forward";
  std::string f = "sqrt1p";
  std::string theta = "const";
  double theta_param = 1.0;
  double x0 = 0.0;
  double K = 1.0;
  double zabs = 0.0;
  bool operator==(const EnvelopeConfig&) const = default;
};

struct ExperimentConfig {
  std::string experiment;  // orbit | bounds | sharpness | hm-check | envelope
  std::string semigroup;
  std::vector<Cx> start;
  Direction direction = Direction::forward;
  double epsilon = 0.0;
  GridSpec grid;
  MonteCarloSpec mc;
  std::string out = "dwrates_out";
  std::string sharpness_id;
  HMCheckSpec hm;
  EnvelopeConfig envelope;
  double inject_upper_scale = 1.0;  // test hook: scales every upper bound
  unsigned workers = 1;
  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& c);

struct RunResult {
  int exit_status = 0;
  std::string csv;
  std::string meta_json;
  std::vector<std::string> failures;
};

// Writes <out>.csv and <out>.meta.json when write_files is set.
RunResult run(const ExperimentConfig& c, bool write_files = true);

std::string list_catalog();

}  // namespace dw
