#include "nsom/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsom/errors.hpp"
#include "nsom/parallel.hpp"

namespace nsom {

void TipModel::validate() const {
  if (!(height > 0.0)) throw ValidationError("height must be positive");
  if (!(lambda > 0.0)) throw ValidationError("wavelength must be positive");
  if (const auto* p = std::get_if<PointDipoleTip>(&kind)) {
    if (std::abs(p->orientation.norm() - 1.0) > 1e-12)
      throw ValidationError("point-tip orientation must be a unit vector");
  } else {
    std::get<ApertureTip>(kind).ring.validate();
  }
}

void Sample::validate() const {
  for (const Vec3& e : emitters)
    if (e.z != 0.0) throw ValidationError("emitters must sit on the interface plane z = 0");
}

TipFieldEvaluator::TipFieldEvaluator(const TipModel& tip, const Environment& env,
                                     const RingFieldOptions& opts)
    : k_(Wavenumber::from_lambda(tip.lambda)), height_(tip.height), opts_(opts) {
  tip.validate();
  const auto* hs = std::get_if<DielectricHalfSpace>(&env);
  if (hs) {
    halfspace_ = true;
    hs_ = hs->hs;
    side_ = hs->side_at_zero;
  }
  if (const auto* p = std::get_if<PointDipoleTip>(&tip.kind)) {
    point_ = true;
    moment_ = CVec3(p->orientation);
    apex_ = {0.0, 0.0, tip.height};
  } else {
    point_ = false;
    ring_ = std::get<ApertureTip>(tip.kind).ring;
    ring_.position = {0.0, 0.0, tip.height};
    if (halfspace_) {
      hs_n_ = build_halfspace_ring_batches(ring_, hs_);
      if (opts_.check_convergence)
        hs_2n_ = build_halfspace_ring_batches(ring_, hs_, 2 * ring_.n_segments);
    } else {
      vac_n_ = ring_segments(ring_);
      if (opts_.check_convergence)
        vac_2n_ = ring_segments(ring_, 2 * ring_.n_segments);
    }
  }
}

namespace {

void check_convergence(const EMField& coarse, const EMField& fine, int n_segments,
                       double rel_tol) {
  const double scale = fine.E.norm();
  if (scale > 0.0 && std::abs(coarse.E.norm() - scale) > rel_tol * scale)
    throw NonConverged("ring quadrature not converged at n_segments=" +
                       std::to_string(n_segments) +
                       "; raise n_segments or keep clear of the rim");
}

}  // namespace

EMField TipFieldEvaluator::fields(const Vec3& r) const {
  if (point_) {
    if (halfspace_) return halfspace_dipole_fields(moment_, apex_, k_, r, hs_, side_);
    return kernels::dipole_fields_at(k_.k, r - apex_, moment_);
  }
  if (ring_distance(ring_, r) < kEpsR)
    throw SingularPoint("field requested on the ring rim");
  if (halfspace_) {
    const bool above = r.z > 0.0 || (r.z == 0.0 && side_ == InterfaceSide::above);
    const EMField f = halfspace_ring_eval(hs_n_, k_, r, above);
    if (opts_.check_convergence)
      check_convergence(f, halfspace_ring_eval(hs_2n_, k_, r, above),
                        ring_.n_segments, opts_.rel_tol);
    return f;
  }
  const EMField f = ring_eval(vac_n_, k_, r);
  if (opts_.check_convergence)
    check_convergence(f, ring_eval(vac_2n_, k_, r), ring_.n_segments, opts_.rel_tol);
  return f;
}

double TipFieldEvaluator::singular_distance(const Vec3& r) const {
  if (point_) return (r - apex_).norm();
  return ring_distance(ring_, r);
}

namespace {

double signal_at(const TipFieldEvaluator& ev, const Sample& sample, const Vec3& tip_xy) {
  double total = 0.0;
  for (const Vec3& e : sample.emitters) {
    // lateral translation invariance: move the emitter instead of the tip
    const Vec3 rel{e.x - tip_xy.x, e.y - tip_xy.y, e.z};
    total += ev.fields(rel).E.norm2();
  }
  return total;
}

}  // namespace

double detected_signal(const TipModel& tip, const Sample& sample,
                       const Environment& env, const Vec3& tip_xy) {
  sample.validate();
  const TipFieldEvaluator ev(tip, env, {});
  return signal_at(ev, sample, tip_xy);
}

ScanResult scan_line(const TipModel& tip, const Sample& sample, const Environment& env,
                     double x_min, double x_max, double step, int threads) {
  sample.validate();
  if (!(step > 0.0)) throw ValidationError("scan step must be positive");
  if (!(x_max > x_min)) throw ValidationError("scan range must be increasing");
  for (const Vec3& e : sample.emitters)
    if (e.x < x_min || e.x > x_max)
      throw ValidationError("scan range must cover the emitters");

  const int n = static_cast<int>(std::floor((x_max - x_min) / step + 0.5)) + 1;
  ScanResult sr;
  sr.height = tip.height;
  sr.lambda = tip.lambda;
  sr.positions.resize(n);
  sr.signal.resize(n);
  for (int i = 0; i < n; ++i) sr.positions[i] = x_min + i * step;

  const TipFieldEvaluator ev(tip, env, {});
  parallel_for(n, threads, [&](int i) {
    sr.signal[i] = signal_at(ev, sample, Vec3{sr.positions[i], 0.0, 0.0});
  });
  return sr;
}

FieldMap field_map(const TipModel& tip, const Environment& env, const FieldGrid& grid,
                   int threads) {
  if (grid.nx < 2 || grid.nz < 2) throw ValidationError("field map grid needs nx, nz >= 2");
  if (!(grid.x_max > grid.x_min) || !(grid.z_max > grid.z_min))
    throw ValidationError("field map ranges must be increasing");

  const TipFieldEvaluator ev(tip, env, {});
  const double dx = (grid.x_max - grid.x_min) / (grid.nx - 1);
  const double dz = (grid.z_max - grid.z_min) / (grid.nz - 1);

  FieldMap map;
  map.grid = grid;
  map.log10_e2.resize(static_cast<std::size_t>(grid.nx) * grid.nz);
  parallel_for(grid.nz, threads, [&](int iz) {
    const double z = grid.z_min + iz * dz;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec3 p{grid.x_min + ix * dx, 0.0, z};
      if (ev.singular_distance(p) < 0.5)
        throw SingularPoint("field map grid point within 0.5 nm of the source");
      const double e2 = ev.fields(p).E.norm2();
      map.log10_e2[static_cast<std::size_t>(iz) * grid.nx + ix] =
          std::log10(std::max(e2, 1e-300));
    }
  });
  return map;
}

std::pair<std::vector<Vec3>, LineStop> trace_field_line(const TipFieldEvaluator& eval,
                                                        const Vec3& seed, int dir,
                                                        const LineOptions& opts) {
  std::vector<Vec3> pts{seed};
  Vec3 p = seed;
  const double h = opts.arc_step * (dir >= 0 ? 1.0 : -1.0);

  auto direction = [&](const Vec3& q) -> Vec3 {
    const Vec3 re = eval.fields(q).E.real();
    const double n = re.norm();
    if (n < 1e-300) throw std::domain_error("stagnation");
    return re * (1.0 / n);
  };

  for (int step = 0; step < opts.max_steps; ++step) {
    if (eval.singular_distance(p) < 1.0) return {std::move(pts), LineStop::singularity};
    if (!opts.domain.contains(p)) return {std::move(pts), LineStop::domain_exit};
    try {
      const Vec3 k1 = direction(p);
      const Vec3 k2 = direction(p + k1 * (0.5 * h));
      const Vec3 k3 = direction(p + k2 * (0.5 * h));
      const Vec3 k4 = direction(p + k3 * h);
      p = p + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
    } catch (const SingularPoint&) {
      return {std::move(pts), LineStop::singularity};
    } catch (const std::domain_error&) {
      return {std::move(pts), LineStop::stagnation};
    }
    pts.push_back(p);
  }
  return {std::move(pts), LineStop::max_steps};
}

std::vector<Polyline> field_lines(const TipModel& tip, const Environment& env,
                                  const std::vector<Vec3>& seeds,
                                  const LineOptions& opts) {
  if (!(opts.arc_step > 0.0)) throw ValidationError("arc step must be positive");
  // qualitative tracing: skip the quadrature convergence check so lines can
  // approach the rim down to the 1 nm termination radius
  const TipFieldEvaluator eval(tip, env, {.check_convergence = false});

  std::vector<Polyline> lines;
  lines.reserve(seeds.size());
  for (const Vec3& seed : seeds) {
    auto [back, back_stop] = trace_field_line(eval, seed, -1, opts);
    auto [fwd, fwd_stop] = trace_field_line(eval, seed, +1, opts);
    Polyline pl;
    pl.backward_stop = back_stop;
    pl.forward_stop = fwd_stop;
    pl.points.reserve(back.size() + fwd.size() - 1);
    for (auto it = back.rbegin(); it != back.rend(); ++it) pl.points.push_back(*it);
    pl.points.insert(pl.points.end(), fwd.begin() + 1, fwd.end());
    lines.push_back(std::move(pl));
  }
  return lines;
}

std::vector<Peak> detect_peaks(const ScanResult& sr) {
  std::vector<Peak> peaks;
  const auto& s = sr.signal;
  const int n = static_cast<int>(s.size());
  if (n < 3) return peaks;
  int i = 1;
  while (i < n - 1) {
    if (s[i] > s[i - 1]) {
      int j = i;
      while (j + 1 < n && s[j + 1] == s[i]) ++j;  // plateau
      if (j < n - 1 && s[j + 1] < s[i]) {
        peaks.push_back({0.5 * (sr.positions[i] + sr.positions[j]), s[i]});
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return peaks;
}

std::vector<Peak> significant_peaks(const ScanResult& sr, double rel_floor) {
  // strict maxima in position order plus the valley between each pair
  std::vector<Peak> peaks = detect_peaks(sr);
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.position < b.position; });
  if (peaks.size() < 2) return peaks;

  double global = 0.0;
  for (double v : sr.signal) global = std::max(global, v);
  const double floor = rel_floor * global;

  std::vector<double> valleys(peaks.size() - 1,
                              std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i)
    for (std::size_t j = 0; j < sr.positions.size(); ++j)
      if (sr.positions[j] > peaks[i].position && sr.positions[j] < peaks[i + 1].position)
        valleys[i] = std::min(valleys[i], sr.signal[j]);

  bool merged = true;
  while (merged && peaks.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
      const double depth = std::min(peaks[i].value, peaks[i + 1].value) - valleys[i];
      if (depth >= floor) continue;
      if (peaks[i].value < peaks[i + 1].value) {
        // drop the left peak; the valley left of it deepens accordingly
        if (i > 0) valleys[i - 1] = std::min(valleys[i - 1], valleys[i]);
        valleys.erase(valleys.begin() + i);
        peaks.erase(peaks.begin() + i);
      } else {
        if (i + 2 < peaks.size()) {
          valleys[i] = std::min(valleys[i], valleys[i + 1]);
          valleys.erase(valleys.begin() + i + 1);
        } else {
          valleys.erase(valleys.begin() + i);
        }
        peaks.erase(peaks.begin() + i + 1);
      }
      merged = true;
      break;
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return peaks;
}

SparrowResult sparrow_resolved(const ScanResult& sr, double emitter_x1,
                               double emitter_x2) {
  const std::vector<Peak> peaks = detect_peaks(sr);
  if (peaks.size() < 2) return {false, 0.0};

  const double mid = 0.5 * (emitter_x1 + emitter_x2);
  const Peak* left = nullptr;
  const Peak* right = nullptr;
  for (const Peak& p : peaks) {  // sorted by value: first hit per side is highest
    if (p.position < mid && !left) left = &p;
    if (p.position > mid && !right) right = &p;
    if (left && right) break;
  }
  if (!left || !right) return {false, 0.0};

  double valley = std::numeric_limits<double>::infinity();
  const double lo = std::min(left->position, right->position);
  const double hi = std::max(left->position, right->position);
  for (std::size_t i = 0; i < sr.positions.size(); ++i)
    if (sr.positions[i] > lo && sr.positions[i] < hi)
      valley = std::min(valley, sr.signal[i]);
  if (!std::isfinite(valley)) return {false, 0.0};

  const double lower_peak = std::min(left->value, right->value);
  if (!(valley < lower_peak)) return {false, 0.0};
  return {true, (lower_peak - valley) / (lower_peak + valley)};
}

SweepResult resolution_sweep(const TipModel& tip, double d,
                             const std::vector<double>& h_list, const Environment& env,
                             const SweepScanParams& params) {
  if (!(d > 0.0)) throw ValidationError("emitter separation must be positive");
  Sample sample;
  sample.emitters = {{-0.5 * d, 0.0, 0.0}, {0.5 * d, 0.0, 0.0}};

  SweepResult out;
  double prev = std::numeric_limits<double>::infinity();
  for (double h : h_list) {
    TipModel t = tip;
    t.height = h;
    const ScanResult sr =
        scan_line(t, sample, env, params.x_min, params.x_max, params.step, params.threads);
    const SparrowResult res = sparrow_resolved(sr, -0.5 * d, 0.5 * d);
    out.rows.push_back({h, res.resolved, res.dip_contrast});
    if (res.dip_contrast > prev + 1e-15) out.contrast_monotone = false;
    prev = res.dip_contrast;
  }
  return out;
}

}  // namespace nsom
