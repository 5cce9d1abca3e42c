// Scan-image synthesis over isotropic fluorescent emitters, field maps,
// field-line tracing, and peak-based resolution criteria.
#pragma once

#include <variant>
#include <vector>

#include "nsom/environment.hpp"

namespace nsom {

struct PointDipoleTip {
  Vec3 orientation{0.0, 0.0, 1.0};  // unit vector
};

struct ApertureTip {
  RingAperture ring{};  // ring.position is ignored; the scanner places the tip
};

struct TipModel {
  std::variant<PointDipoleTip, ApertureTip> kind = PointDipoleTip{};
  double height = 10.0;   // h above the interface, nm
  double lambda = 600.0;  // illumination wavelength, nm

  void validate() const;
};

struct Sample {
  std::vector<Vec3> emitters;  // on the interface plane, z = 0

  void validate() const;
};

struct ScanResult {
  std::vector<double> positions;  // tip x, nm, uniform step
  std::vector<double> signal;     // detected signal, relative units
  double height = 0.0;
  double lambda = 0.0;
};

// Field of the tip placed laterally at the origin with its apex/center at
// (0, 0, h).  Ring batches (and their images over a substrate) are prebuilt,
// so evaluation is cheap and the object is safe to share across threads.
class TipFieldEvaluator {
 public:
  TipFieldEvaluator(const TipModel& tip, const Environment& env,
                    const RingFieldOptions& opts = {});

  EMField fields(const Vec3& r) const;
  // distance to the singular set (apex point or rim circle)
  double singular_distance(const Vec3& r) const;
  double height() const { return height_; }
  Wavenumber wavenumber() const { return k_; }

 private:
  Wavenumber k_;
  double height_;
  RingFieldOptions opts_;
  bool point_ = true;
  bool halfspace_ = false;
  CVec3 moment_{};
  Vec3 apex_{};
  RingAperture ring_{};
  HalfSpace hs_{};
  InterfaceSide side_ = InterfaceSide::below;
  RingSegments vac_n_, vac_2n_;
  HalfspaceRingBatches hs_n_, hs_2n_;
};

// Sum over emitters of |E|^2 with the tip apex at (tip_xy.x, tip_xy.y, h).
double detected_signal(const TipModel& tip, const Sample& sample,
                       const Environment& env, const Vec3& tip_xy);

// Constant-height scan along x at y = 0.
ScanResult scan_line(const TipModel& tip, const Sample& sample, const Environment& env,
                     double x_min, double x_max, double step, int threads = 1);

struct FieldGrid {
  double x_min, x_max, z_min, z_max;
  int nx, nz;
};

struct FieldMap {
  FieldGrid grid{};
  std::vector<double> log10_e2;  // row-major, index iz * nx + ix, iz from z_min
};

// log10 |E|^2 over the x-z plane (y = 0).  Grid points closer than 0.5 nm to
// the source singular set are rejected.
FieldMap field_map(const TipModel& tip, const Environment& env, const FieldGrid& grid,
                   int threads = 1);

enum class LineStop { singularity, domain_exit, max_steps, stagnation };

struct Polyline {
  std::vector<Vec3> points;  // backward trace reversed, seed, forward trace
  LineStop forward_stop = LineStop::max_steps;
  LineStop backward_stop = LineStop::max_steps;
};

struct Box {
  Vec3 lo{-500.0, -500.0, -300.0};
  Vec3 hi{500.0, 500.0, 500.0};
  bool contains(const Vec3& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
           p.z >= lo.z && p.z <= hi.z;
  }
};

struct LineOptions {
  double arc_step = 0.5;  // nm
  int max_steps = 10000;
  Box domain{};
};

// Streamlines of Re(E) at the t = 0 snapshot, integrated fourth-order both
// ways from each seed.  Truncated polylines carry their termination tag.
std::vector<Polyline> field_lines(const TipModel& tip, const Environment& env,
                                  const std::vector<Vec3>& seeds,
                                  const LineOptions& opts = {});

// Single-direction trace (dir = +1 or -1), exposed for verification.
std::pair<std::vector<Vec3>, LineStop> trace_field_line(const TipFieldEvaluator& eval,
                                                        const Vec3& seed, int dir,
                                                        const LineOptions& opts);

struct Peak {
  double position, value;
};

// Strict interior local maxima, plateaus resolved to their midpoint, sorted by
// value descending.
std::vector<Peak> detect_peaks(const ScanResult& sr);

// Maxima surviving a topographic-prominence floor: neighbours separated by a
// dip shallower than rel_floor * global_max merge into the taller one.  Used
// by shape checks so that sub-visible ripples of the exact fields do not count
// as lobes.
std::vector<Peak> significant_peaks(const ScanResult& sr, double rel_floor = 0.01);

struct SparrowResult {
  bool resolved = false;
  double dip_contrast = 0.0;  // (min peak - valley) / (min peak + valley)
};

// Sparrow-type criterion: resolved when a local minimum separates the highest
// peaks bracketing the midpoint of the two emitter positions.
SparrowResult sparrow_resolved(const ScanResult& sr, double emitter_x1,
                               double emitter_x2);

struct SweepRow {
  double h;
  bool resolved;
  double dip_contrast;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool contrast_monotone = true;  // non-increasing dip contrast in h
};

struct SweepScanParams {
  double x_min = -200.0, x_max = 200.0, step = 1.0;
  int threads = 1;
};

// One scan + Sparrow evaluation per height for two emitters d apart.
SweepResult resolution_sweep(const TipModel& tip, double d,
                             const std::vector<double>& h_list, const Environment& env,
                             const SweepScanParams& params = {});

}  // namespace nsom
