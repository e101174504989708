#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwrates/cli.hpp"
#include "dwrates/errors.hpp"

namespace {

unsigned default_workers() {
  if (const char* env = std::getenv("DWRATES_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

// Exit codes: 0 pass, 1 bound or check failure, 2 bad config or usage.
int run_experiment(const std::string& kind, const std::string& path, const std::string& out,
                   long long seed, unsigned workers) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read config " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    std::string text = buf.str();
    // The subcommand supplies the experiment kind when the file omits it.
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.is_object()) {
      if (!j.contains("experiment")) {
        j["experiment"] = kind;
        text = j.dump();
      } else if (j["experiment"] != kind) {
        std::cerr << "config experiment " << j["experiment"] << " does not match subcommand " << kind << "\n";
        return 2;
      }
    }
    auto cfg = dw::parse_config(text);
    if (!out.empty()) cfg.out = out;
    if (seed >= 0) cfg.mc.seed = static_cast<std::uint64_t>(seed);
    cfg.workers = workers;
    const auto r = dw::run(cfg);
    for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
    std::cout << (r.exit_status == 0 ? "pass" : "fail") << ": " << cfg.out << ".csv\n";
    return r.exit_status;
  } catch (const dw::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit rate bounds for semigroups of holomorphic self-maps of the disk"};
  app.require_subcommand(1);

  std::string config, out;
  long long seed = -1;
  unsigned workers = default_workers();

  for (const char* kind : {"orbit", "bounds", "sharpness", "hm-check", "envelope"}) {
    auto* sub = app.add_subcommand(kind, std::string(kind) + " experiment");
    sub->add_option("--config", config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output prefix (overrides the config)");
    sub->add_option("--seed", seed, "Monte Carlo seed (overrides the config)");
    sub->add_option("--workers", workers, "worker threads (default DWRATES_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  }
  app.add_subcommand("list", "print the semigroup catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "list") {
    std::cout << dw::list_catalog();
    return 0;
  }
  return run_experiment(chosen->get_name(), config, out, seed, workers);
}
