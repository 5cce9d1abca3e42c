// Command-line front end: near-field tip models, scan synthesis, field maps,
// two-level photodynamics, and the invariant suite.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nsom/cli.hpp"
#include "nsom/errors.hpp"
#include "nsom/kernels.hpp"

namespace {

struct SubArgs {
  std::string config_path;
  std::string out_dir;
  int threads = -1;
};

int run(const std::string& name, const SubArgs& args, bool config_required) {
  nsom::RunConfig cfg;
  if (!args.config_path.empty()) {
    std::ifstream f(args.config_path);
    if (!f) {
      std::cerr << "i/o error: cannot read config " << args.config_path << "\n";
      return 3;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      cfg = nsom::parse_config(ss.str());
    } catch (const nsom::ParseError& e) {
      std::cerr << "config error: " << args.config_path << ": " << e.what() << "\n";
      return 1;
    } catch (const nsom::ValidationError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
  } else if (config_required) {
    std::cerr << "config error: --config is required for '" << name << "'\n";
    return 1;
  }
  return nsom::run_subcommand(name, cfg, args.out_dir, args.threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-field tip-field simulator"};
  app.require_subcommand(1);

  SubArgs args;
  const bool needs_config[] = {true, true, true, true, false};
  const char* names[] = {"fieldmap", "scan", "sweep", "quantum", "validate"};
  const char* descs[] = {
      "log-intensity field map, field lines (PGM + CSV)",
      "constant-height scan over the sample (CSV)",
      "height sweep with the resolution criterion (CSV)",
      "two-level population dynamics and saturation (CSV)",
      "run the library invariant suite"};

  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", args.config_path, "run configuration file");
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  for (int i = 0; i < 5; ++i)
    if (sub == names[i]) return run(sub, args, needs_config[i]);
  return 1;
}
