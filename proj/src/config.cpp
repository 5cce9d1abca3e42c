#include "nsom/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nsom/errors.hpp"

namespace nsom {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& v, int line) {
  const std::string t = trim(v);
  char* end = nullptr;
  const double d = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || t.empty() || !std::isfinite(d))
    throw ParseError(line, "expected a number, got '" + t + "'");
  return d;
}

int parse_int(const std::string& v, int line) {
  const std::string t = trim(v);
  int out = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw ParseError(line, "expected an integer, got '" + t + "'");
  return out;
}

bool parse_bool(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ParseError(line, "expected true/false, got '" + t + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, line));
  if (out.empty()) throw ParseError(line, "expected a comma-separated list");
  return out;
}

Vec3 parse_orientation(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t == "x") return {1, 0, 0};
  if (t == "y") return {0, 1, 0};
  if (t == "z") return {0, 0, 1};
  const std::vector<double> c = parse_list(v, line);
  if (c.size() != 3)
    throw ParseError(line, "orientation needs x|y|z or three components");
  Vec3 o{c[0], c[1], c[2]};
  const double n = o.norm();
  if (!(n > 0.0)) throw ValidationError("orientation must be a nonzero vector");
  if (std::abs(n - 1.0) <= 1e-12) return o;  // keep already-unit vectors bit-exact
  return o * (1.0 / n);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.tip.kind != "point" && c.tip.kind != "aperture")
    throw ValidationError("tip kind must be point or aperture");
  if (!(c.tip.height > 0.0)) throw ValidationError("height must be positive");
  if (!(c.tip.wavelength > 0.0)) throw ValidationError("wavelength must be positive");
  if (!(c.tip.a > 0.0)) throw ValidationError("aperture radius must be positive");
  if (!(c.tip.sigma0 > 0.0)) throw ValidationError("sigma0 must be positive");
  if (c.tip.n_segments < 16 || c.tip.n_segments % 2 != 0)
    throw ValidationError("n_segments must be >= 16 and even");
  if (std::abs(c.tip.orientation.norm() - 1.0) > 1e-12)
    throw ValidationError("orientation must be a unit vector");
  if (c.environment.type != "vacuum" && c.environment.type != "halfspace")
    throw ValidationError("environment type must be vacuum or halfspace");
  if (!(c.environment.epsilon > 0.0))
    throw ValidationError("epsilon must be positive");
  if (c.environment.interface_side != "below" && c.environment.interface_side != "above")
    throw ValidationError("interface_side must be below or above");
  if (c.sample.emitters.empty())
    throw ValidationError("sample needs at least one emitter");
  if (!(c.scan.step > 0.0)) throw ValidationError("scan step must be positive");
  if (!(c.scan.x_max > c.scan.x_min))
    throw ValidationError("scan range must be increasing");
  for (double h : c.scan.heights)
    if (!(h > 0.0)) throw ValidationError("sweep heights must be positive");
  if (c.scan.threads < 0) throw ValidationError("threads must be >= 0");
  if (c.grid.nx < 2 || c.grid.nz < 2)
    throw ValidationError("grid needs nx, nz >= 2");
  if (!(c.grid.x_max > c.grid.x_min) || !(c.grid.z_max > c.grid.z_min))
    throw ValidationError("grid ranges must be increasing");
  if (c.output.dir.empty()) throw ValidationError("output dir must not be empty");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (const auto hash = s.find('#'); hash != std::string::npos)
      s = trim(s.substr(0, hash));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "tip" && section != "environment" && section != "sample" &&
          section != "scan" && section != "grid" && section != "output")
        throw ParseError(line, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (section.empty()) throw ParseError(line, "key before any [section]");
    if (key.empty()) throw ParseError(line, "empty key");

    if (section == "tip") {
      if (key == "kind") cfg.tip.kind = val;
      else if (key == "orientation") cfg.tip.orientation = parse_orientation(val, line);
      else if (key == "a") cfg.tip.a = parse_double(val, line);
      else if (key == "sigma0") cfg.tip.sigma0 = parse_double(val, line);
      else if (key == "include_magnetic") cfg.tip.include_magnetic = parse_bool(val, line);
      else if (key == "n_segments") cfg.tip.n_segments = parse_int(val, line);
      else if (key == "height") cfg.tip.height = parse_double(val, line);
      else if (key == "wavelength") cfg.tip.wavelength = parse_double(val, line);
      else throw ParseError(line, "unknown key 'tip." + key + "'");
    } else if (section == "environment") {
      if (key == "type") cfg.environment.type = val;
      else if (key == "epsilon") cfg.environment.epsilon = parse_double(val, line);
      else if (key == "interface_side") cfg.environment.interface_side = val;
      else throw ParseError(line, "unknown key 'environment." + key + "'");
    } else if (section == "sample") {
      if (key == "emitters") cfg.sample.emitters = parse_list(val, line);
      else throw ParseError(line, "unknown key 'sample." + key + "'");
    } else if (section == "scan") {
      if (key == "x_min") cfg.scan.x_min = parse_double(val, line);
      else if (key == "x_max") cfg.scan.x_max = parse_double(val, line);
      else if (key == "step") cfg.scan.step = parse_double(val, line);
      else if (key == "heights") cfg.scan.heights = parse_list(val, line);
      else if (key == "threads") cfg.scan.threads = parse_int(val, line);
      else throw ParseError(line, "unknown key 'scan." + key + "'");
    } else if (section == "grid") {
      if (key == "x_min") cfg.grid.x_min = parse_double(val, line);
      else if (key == "x_max") cfg.grid.x_max = parse_double(val, line);
      else if (key == "z_min") cfg.grid.z_min = parse_double(val, line);
      else if (key == "z_max") cfg.grid.z_max = parse_double(val, line);
      else if (key == "nx") cfg.grid.nx = parse_int(val, line);
      else if (key == "nz") cfg.grid.nz = parse_int(val, line);
      else throw ParseError(line, "unknown key 'grid." + key + "'");
    } else {  // output
      if (key == "dir") cfg.output.dir = val;
      else if (key == "normalize") cfg.output.normalize = parse_bool(val, line);
      else throw ParseError(line, "unknown key 'output." + key + "'");
    }
  }

  validate(cfg);
  return cfg;
}

std::string render_config(const RunConfig& c) {
  std::string out;
  out += "[tip]\n";
  out += "kind = " + c.tip.kind + "\n";
  out += "orientation = " + fmt(c.tip.orientation.x) + "," + fmt(c.tip.orientation.y) +
         "," + fmt(c.tip.orientation.z) + "\n";
  out += "a = " + fmt(c.tip.a) + "\n";
  out += "sigma0 = " + fmt(c.tip.sigma0) + "\n";
  out += std::string("include_magnetic = ") + (c.tip.include_magnetic ? "true" : "false") + "\n";
  out += "n_segments = " + std::to_string(c.tip.n_segments) + "\n";
  out += "height = " + fmt(c.tip.height) + "\n";
  out += "wavelength = " + fmt(c.tip.wavelength) + "\n";
  out += "[environment]\n";
  out += "type = " + c.environment.type + "\n";
  out += "epsilon = " + fmt(c.environment.epsilon) + "\n";
  out += "interface_side = " + c.environment.interface_side + "\n";
  out += "[sample]\n";
  out += "emitters = " + fmt_list(c.sample.emitters) + "\n";
  out += "[scan]\n";
  out += "x_min = " + fmt(c.scan.x_min) + "\n";
  out += "x_max = " + fmt(c.scan.x_max) + "\n";
  out += "step = " + fmt(c.scan.step) + "\n";
  out += "heights = " + fmt_list(c.scan.heights) + "\n";
  out += "threads = " + std::to_string(c.scan.threads) + "\n";
  out += "[grid]\n";
  out += "x_min = " + fmt(c.grid.x_min) + "\n";
  out += "x_max = " + fmt(c.grid.x_max) + "\n";
  out += "z_min = " + fmt(c.grid.z_min) + "\n";
  out += "z_max = " + fmt(c.grid.z_max) + "\n";
  out += "nx = " + std::to_string(c.grid.nx) + "\n";
  out += "nz = " + std::to_string(c.grid.nz) + "\n";
  out += "[output]\n";
  out += "dir = " + c.output.dir + "\n";
  out += std::string("normalize = ") + (c.output.normalize ? "true" : "false") + "\n";
  return out;
}

}  // namespace nsom
