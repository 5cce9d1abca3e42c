#include "nsom/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nsom/errors.hpp"

namespace nsom {

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string comment_block(const std::string& config_text) {
  std::string out;
  std::istringstream in(config_text);
  std::string line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

std::string scan_csv(const ScanResult& sr, const std::string& config_text,
                     bool normalize) {
  std::string out = comment_block(config_text);
  out += "# columns: position_nm,signal\n";
  double scale = 1.0;
  if (normalize) {
    const double mx = *std::max_element(sr.signal.begin(), sr.signal.end());
    if (mx > 0.0) scale = 1.0 / mx;
  }
  for (std::size_t i = 0; i < sr.positions.size(); ++i)
    out += fmt_value(sr.positions[i]) + "," + fmt_value(sr.signal[i] * scale) + "\n";
  return out;
}

std::string sweep_csv(const SweepResult& sweep, const std::string& config_text) {
  std::string out = comment_block(config_text);
  if (!sweep.contrast_monotone)
    out += "# note: dip contrast is not monotone over the height list\n";
  out += "# columns: h_nm,resolved,dip_contrast\n";
  for (const SweepRow& r : sweep.rows)
    out += fmt_value(r.h) + "," + (r.resolved ? "1" : "0") + "," +
           fmt_value(r.dip_contrast) + "\n";
  return out;
}

std::string map_csv(const FieldMap& map, const std::string& config_text) {
  std::string out = comment_block(config_text);
  out += "# columns: x_nm,z_nm,log10_E2\n";
  const double dx = (map.grid.x_max - map.grid.x_min) / (map.grid.nx - 1);
  const double dz = (map.grid.z_max - map.grid.z_min) / (map.grid.nz - 1);
  for (int iz = 0; iz < map.grid.nz; ++iz)
    for (int ix = 0; ix < map.grid.nx; ++ix)
      out += fmt_value(map.grid.x_min + ix * dx) + "," +
             fmt_value(map.grid.z_min + iz * dz) + "," +
             fmt_value(map.log10_e2[std::size_t(iz) * map.grid.nx + ix]) + "\n";
  return out;
}

namespace {

const char* stop_name(LineStop s) {
  switch (s) {
    case LineStop::singularity: return "singularity";
    case LineStop::domain_exit: return "domain_exit";
    case LineStop::max_steps: return "max_steps";
    default: return "stagnation";
  }
}

}  // namespace

std::string lines_csv(const std::vector<Polyline>& lines,
                      const std::string& config_text) {
  std::string out = comment_block(config_text);
  for (std::size_t i = 0; i < lines.size(); ++i)
    out += "# line " + std::to_string(i) + ": backward=" +
           stop_name(lines[i].backward_stop) + " forward=" +
           stop_name(lines[i].forward_stop) + "\n";
  out += "# columns: line_id,vertex,x_nm,y_nm,z_nm\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t v = 0; v < lines[i].points.size(); ++v) {
      const Vec3& p = lines[i].points[v];
      out += std::to_string(i) + "," + std::to_string(v) + "," + fmt_value(p.x) +
             "," + fmt_value(p.y) + "," + fmt_value(p.z) + "\n";
    }
  return out;
}

std::string map_pgm(const FieldMap& map, double decades) {
  const double top = *std::max_element(map.log10_e2.begin(), map.log10_e2.end());
  const double bottom = top - decades;
  std::string out = "P2\n" + std::to_string(map.grid.nx) + " " +
                    std::to_string(map.grid.nz) + "\n65535\n";
  // image rows top-to-bottom = decreasing z
  for (int iz = map.grid.nz - 1; iz >= 0; --iz) {
    for (int ix = 0; ix < map.grid.nx; ++ix) {
      const double v = map.log10_e2[std::size_t(iz) * map.grid.nx + ix];
      const double t = std::clamp((v - bottom) / decades, 0.0, 1.0);
      out += std::to_string(static_cast<int>(std::lround(t * 65535.0)));
      out += ix + 1 == map.grid.nx ? "\n" : " ";
    }
  }
  return out;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::ios_base::failure("cannot create output directory " + dir_.string());
}

void OutputSet::write(const std::string& filename, const std::string& content) {
  const std::filesystem::path path = dir_ / filename;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot open " + path.string());
  written_.push_back(path);
  f << content;
  if (!f.good()) throw std::ios_base::failure("write failed for " + path.string());
}

void OutputSet::discard_all() {
  for (const auto& p : written_) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
  written_.clear();
}

}  // namespace nsom
