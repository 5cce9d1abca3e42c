#include "nsom/sources.hpp"

#include <string>

#include "nsom/errors.hpp"

namespace nsom {

void RingAperture::validate() const {
  if (!(radius > 0.0)) throw InvalidGeometry("ring radius must be positive");
  if (n_segments < 16 || n_segments % 2 != 0)
    throw InvalidGeometry("n_segments must be >= 16 and even");
}

RingDensities ring_line_densities(const RingAperture& ring, Wavenumber k, double phi) {
  const double ka = k.k * ring.radius;
  const double s = std::sin(phi), c = std::cos(phi);
  RingDensities d;
  d.eta = ring.sigma0 * c;
  d.j_phi = cplx(0.0, ka * ring.sigma0 * s);
  d.gamma = 2.0 * ring.sigma0 * s;
  d.k_phi = cplx(0.0, -2.0 * ka * ring.sigma0 * c);
  return d;
}

CVec3 equivalent_electric_dipole(const RingAperture& ring) {
  ring.validate();
  const double p = ring.sigma0 * ring.radius * ring.radius * M_PI;
  return {p, 0.0, 0.0};
}

CVec3 equivalent_magnetic_dipole(const RingAperture& ring) {
  ring.validate();
  if (!ring.include_magnetic) return {};
  // M = 2 z-hat x P
  const CVec3 p = equivalent_electric_dipole(ring);
  return {-2.0 * p.y, 2.0 * p.x, 0.0};
}

RingSegments ring_segments(const RingAperture& ring, int n_override) {
  ring.validate();
  const int n = n_override > 0 ? n_override : ring.n_segments;
  const double a = ring.radius;
  const double dphi = 2.0 * M_PI / n;
  const double w_e = -a * a * ring.sigma0 * dphi;  // dP magnitude factor
  const double w_m = 2.0 * a * a * ring.sigma0 * dphi;

  RingSegments segs;
  segs.n = n;
  segs.electric.reserve(n);
  if (ring.include_magnetic) segs.magnetic.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double phi = dphi * i;
    const double c = std::cos(phi), s = std::sin(phi);
    const Vec3 pos = ring.position + Vec3{a * c, a * s, 0.0};
    const Vec3 phi_hat{-s, c, 0.0};
    segs.electric.push_back(pos, CVec3(phi_hat) * (w_e * s));
    if (ring.include_magnetic)
      segs.magnetic.push_back(pos, CVec3(phi_hat) * (w_m * c));
  }
  return segs;
}

EMField ring_eval(const RingSegments& segs, Wavenumber k, const Vec3& r) {
  EMField out = kernels::dipole_sum(k.k, r, segs.electric);
  if (!segs.magnetic.empty()) {
    const EMField m = kernels::dipole_sum(k.k, r, segs.magnetic);
    out.E -= m.B;  // duality: E of a magnetic source is -B of the electric kernel
    out.B += m.E;
  }
  return out;
}

double ring_distance(const RingAperture& ring, const Vec3& r) {
  const Vec3 d = r - ring.position;
  const double rho = std::hypot(d.x, d.y);
  return std::hypot(rho - ring.radius, d.z);
}

EMField ring_fields(const RingAperture& ring, Wavenumber k, const Vec3& r,
                    const RingFieldOptions& opts) {
  ring.validate();
  if (ring_distance(ring, r) < kEpsR)
    throw SingularPoint("field requested on the ring rim");
  const RingSegments segs = ring_segments(ring);
  const EMField f = ring_eval(segs, k, r);
  if (opts.check_convergence) {
    const RingSegments fine = ring_segments(ring, 2 * ring.n_segments);
    const EMField g = ring_eval(fine, k, r);
    const double scale = g.E.norm();
    if (scale > 0.0 && std::abs(f.E.norm() - scale) > opts.rel_tol * scale)
      throw NonConverged("ring quadrature not converged at n_segments=" +
                         std::to_string(ring.n_segments) +
                         "; raise n_segments or keep clear of the rim");
  }
  return f;
}

}  // namespace nsom
