// Deterministic CSV and PGM writers.  Every tabular file carries the full
// resolved run configuration in #-prefixed header lines.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nsom/scanner.hpp"

namespace nsom {

// %.15g rendering; identical input bits give identical text.
std::string fmt_value(double v);

// Prefix every line of `config_text` with "# ".
std::string comment_block(const std::string& config_text);

std::string scan_csv(const ScanResult& sr, const std::string& config_text,
                     bool normalize);
std::string sweep_csv(const SweepResult& sweep, const std::string& config_text);
std::string map_csv(const FieldMap& map, const std::string& config_text);
std::string lines_csv(const std::vector<Polyline>& lines,
                      const std::string& config_text);

// P2 (ASCII) PGM, maxval 65535; values map the top `decades` decades of
// log10|E|^2 linearly onto the gray range.
std::string map_pgm(const FieldMap& map, double decades = 6.0);

// Tracks files written by one run so a failure can remove partial output.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  void write(const std::string& filename, const std::string& content);
  void discard_all();  // remove everything written so far

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace nsom
