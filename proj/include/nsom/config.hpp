// Run configuration: a flat sectioned key = value text format with strict
// validation, canonical rendering, and exact parse(render(cfg)) round-trips.
#pragma once

#include <string>
#include <vector>

#include "nsom/geometry.hpp"

namespace nsom {

struct TipConfig {
  std::string kind = "point";  // "point" | "aperture"
  Vec3 orientation{0.0, 0.0, 1.0};
  double a = 40.0;
  double sigma0 = 1.0;
  bool include_magnetic = true;
  int n_segments = 360;
  double height = 10.0;
  double wavelength = 600.0;
  bool operator==(const TipConfig&) const = default;
};

struct EnvConfig {
  std::string type = "halfspace";  // "vacuum" | "halfspace"
  double epsilon = 2.25;
  std::string interface_side = "below";  // branch used exactly at z = 0
  bool operator==(const EnvConfig&) const = default;
};

struct SampleConfig {
  std::vector<double> emitters{0.0};  // x positions on the interface, nm
  bool operator==(const SampleConfig&) const = default;
};

struct ScanConfig {
  double x_min = -200.0, x_max = 200.0, step = 1.0;
  std::vector<double> heights{10.0, 20.0, 30.0, 40.0, 50.0, 100.0};  // sweep
  int threads = 0;  // 0 = auto
  bool operator==(const ScanConfig&) const = default;
};

struct GridConfig {
  // default lattice keeps >= 5 nm clear of the default tips (a = 40, h = 10 or 20)
  double x_min = -150.0, x_max = 150.0;
  double z_min = -103.0, z_max = 197.0;
  int nx = 26, nz = 26;
  bool operator==(const GridConfig&) const = default;
};

struct OutputConfig {
  std::string dir = ".";
  bool normalize = false;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  TipConfig tip;
  EnvConfig environment;
  SampleConfig sample;
  ScanConfig scan;
  GridConfig grid;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;
};

// Throws ParseError (with line number) for malformed text or unknown keys,
// ValidationError for violated invariants.
RunConfig parse_config(const std::string& text);

// Canonical text form; every key is written so outputs embed the full
// resolved configuration.
std::string render_config(const RunConfig& cfg);

}  // namespace nsom
