#include "nsom/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "nsom/csvio.hpp"
#include "nsom/emitter.hpp"
#include "nsom/errors.hpp"
#include "nsom/kernels.hpp"
#include "nsom/selftest.hpp"

namespace nsom {

TipModel tip_from_config(const RunConfig& cfg) {
  TipModel tip;
  tip.height = cfg.tip.height;
  tip.lambda = cfg.tip.wavelength;
  if (cfg.tip.kind == "point") {
    tip.kind = PointDipoleTip{cfg.tip.orientation};
  } else {
    RingAperture ring;
    ring.radius = cfg.tip.a;
    ring.sigma0 = cfg.tip.sigma0;
    ring.include_magnetic = cfg.tip.include_magnetic;
    ring.n_segments = cfg.tip.n_segments;
    tip.kind = ApertureTip{ring};
  }
  return tip;
}

Sample sample_from_config(const RunConfig& cfg) {
  Sample s;
  for (double x : cfg.sample.emitters) s.emitters.push_back({x, 0.0, 0.0});
  return s;
}

Environment env_from_config(const RunConfig& cfg) {
  if (cfg.environment.type == "vacuum") return Vacuum{};
  DielectricHalfSpace d;
  d.hs.epsilon = cfg.environment.epsilon;
  d.side_at_zero = cfg.environment.interface_side == "above" ? InterfaceSide::above
                                                             : InterfaceSide::below;
  return d;
}

namespace {

int resolve_thread_request(const RunConfig& cfg, int threads_override) {
  if (const char* env = std::getenv("NSOM_THREADS")) {
    int v = 0;
    const std::string s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
      throw ValidationError("NSOM_THREADS must be a non-negative integer");
    return v;
  }
  if (threads_override >= 0) return threads_override;
  return cfg.scan.threads;
}

std::vector<Vec3> default_line_seeds(const TipModel& tip) {
  std::vector<Vec3> seeds;
  const double r = 3.0;
  auto circle = [&](double cx, double cz, int n) {
    for (int i = 0; i < n; ++i) {
      const double ang = 2.0 * M_PI * i / n;
      seeds.push_back({cx + r * std::cos(ang), 0.0, cz + r * std::sin(ang)});
    }
  };
  if (const auto* ap = std::get_if<ApertureTip>(&tip.kind)) {
    circle(ap->ring.radius, tip.height, 12);
    circle(-ap->ring.radius, tip.height, 12);
  } else {
    circle(0.0, tip.height, 24);
  }
  return seeds;
}

void run_scan(const RunConfig& cfg, OutputSet& out, int threads) {
  const ScanResult sr =
      scan_line(tip_from_config(cfg), sample_from_config(cfg), env_from_config(cfg),
                cfg.scan.x_min, cfg.scan.x_max, cfg.scan.step, threads);
  out.write("scan.csv", scan_csv(sr, render_config(cfg), cfg.output.normalize));
}

void run_sweep(const RunConfig& cfg, OutputSet& out, int threads) {
  if (cfg.sample.emitters.size() != 2)
    throw ValidationError("sweep needs exactly two emitters");
  const double d = std::abs(cfg.sample.emitters[1] - cfg.sample.emitters[0]);
  SweepScanParams params;
  params.x_min = cfg.scan.x_min;
  params.x_max = cfg.scan.x_max;
  params.step = cfg.scan.step;
  params.threads = threads;
  const SweepResult sweep = resolution_sweep(tip_from_config(cfg), d,
                                             cfg.scan.heights, env_from_config(cfg),
                                             params);
  out.write("sweep.csv", sweep_csv(sweep, render_config(cfg)));
}

void run_fieldmap(const RunConfig& cfg, OutputSet& out, int threads) {
  const TipModel tip = tip_from_config(cfg);
  const Environment env = env_from_config(cfg);
  const FieldGrid grid{cfg.grid.x_min, cfg.grid.x_max, cfg.grid.z_min,
                       cfg.grid.z_max, cfg.grid.nx, cfg.grid.nz};
  const FieldMap map = field_map(tip, env, grid, threads);

  LineOptions lopt;
  lopt.domain = Box{{grid.x_min, -50.0, grid.z_min}, {grid.x_max, 50.0, grid.z_max}};
  const std::vector<Polyline> lines =
      field_lines(tip, env, default_line_seeds(tip), lopt);

  const std::string cfg_text = render_config(cfg);
  out.write("fieldmap.pgm", map_pgm(map));
  out.write("fieldmap.csv", map_csv(map, cfg_text));
  out.write("fieldlines.csv", lines_csv(lines, cfg_text));
}

void run_quantum(const RunConfig& cfg, OutputSet& out) {
  // paper-scale photophysics: 10 ns lifetime, drive at saturation threshold
  const double gamma = 0.1;         // 1/ns
  const double gamma_prime = 0.1;   // = gamma, steady state 1/3
  const std::string cfg_text = render_config(cfg);

  std::string pops = comment_block(cfg_text);
  pops += "# gamma_per_ns = " + fmt_value(gamma) + "\n";
  pops += "# gamma_prime_per_ns = " + fmt_value(gamma_prime) + "\n";
  pops += "# columns: t_ns,sigma_ee,sigma_gg\n";
  const double t_max = 10.0 / gamma;
  const int steps = 200;
  for (int i = 0; i <= steps; ++i) {
    const double t = t_max * i / steps;
    const Populations p = evolve_populations(0.0, gamma, gamma_prime, t);
    pops += fmt_value(t) + "," + fmt_value(p.ee) + "," + fmt_value(p.gg) + "\n";
  }
  out.write("quantum_populations.csv", pops);

  std::string sat = comment_block(cfg_text);
  sat += "# columns: gamma_prime_over_gamma,sigma_ss\n";
  sat += "0," + fmt_value(stationary_population(gamma, 0.0).sigma_ee) + "\n";
  for (int i = 0; i <= 60; ++i) {
    const double ratio = std::pow(10.0, -3.0 + 0.1 * i);
    sat += fmt_value(ratio) + "," +
           fmt_value(stationary_population(gamma, ratio * gamma).sigma_ee) + "\n";
  }
  out.write("quantum_saturation.csv", sat);
}

int run_validate() {
  std::cout << "field kernel: " << kernels::active_kernel() << "\n";
  const auto results = selftest::run_all();
  int failures = 0;
  for (const auto& r : results) {
    if (r.pass) {
      std::cout << "PASS " << r.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
    }
  }
  std::cout << (failures == 0 ? "all properties hold\n"
                              : std::to_string(failures) + " properties failed\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int run_subcommand(const std::string& name, const RunConfig& cfg,
                   const std::string& out_dir_override, int threads_override) {
  std::optional<OutputSet> out;
  try {
    if (name == "validate") return run_validate();
    out.emplace(out_dir_override.empty() ? cfg.output.dir : out_dir_override);
    const int threads = resolve_thread_request(cfg, threads_override);
    if (name == "scan") run_scan(cfg, *out, threads);
    else if (name == "sweep") run_sweep(cfg, *out, threads);
    else if (name == "fieldmap") run_fieldmap(cfg, *out, threads);
    else if (name == "quantum") run_quantum(cfg, *out);
    else throw ValidationError("unknown subcommand '" + name + "'");
    return 0;
  } catch (const ValidationError& e) {
    if (out) out->discard_all();
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    if (out) out->discard_all();
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidGeometry& e) {
    if (out) out->discard_all();
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const SingularPoint& e) {
    if (out) out->discard_all();
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const NonConverged& e) {
    if (out) out->discard_all();
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    if (out) out->discard_all();
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace nsom
