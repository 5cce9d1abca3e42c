#include "nsom/halfspace.hpp"

#include <string>

#include "nsom/errors.hpp"

namespace nsom {

namespace {

Vec3 mirrored(const Vec3& p) { return {p.x, p.y, -p.z}; }

kernels::DipoleBatch image_batch(const kernels::DipoleBatch& src, double beta) {
  kernels::DipoleBatch img;
  img.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    // P_img = beta (2 (P.z) z-hat - P)
    img.push_back(Vec3{src.px[i], src.py[i], -src.pz[i]},
                  CVec3{cplx(-beta * src.mxr[i], -beta * src.mxi[i]),
                        cplx(-beta * src.myr[i], -beta * src.myi[i]),
                        cplx(beta * src.mzr[i], beta * src.mzi[i])});
  }
  return img;
}

}  // namespace

ImageDipole image_dipole(const CVec3& P, const Vec3& r0, const HalfSpace& hs) {
  if (!(r0.z > 0.0)) throw InvalidGeometry("source height must be positive");
  const double beta = hs.beta();
  return {{-beta * P.x, -beta * P.y, beta * P.z}, mirrored(r0)};
}

EMField field_above(const CVec3& P, const Vec3& r0, Wavenumber k, const Vec3& r,
                    const HalfSpace& hs) {
  EMField f = kernels::dipole_fields_at(k.k, r - r0, P);
  if (hs.beta() != 0.0) {
    const ImageDipole img = image_dipole(P, r0, hs);
    const EMField fi = kernels::dipole_fields_at(k.k, r - img.position, img.moment);
    f.E += fi.E;
    f.B += fi.B;
  }
  return f;
}

EMField field_below(const CVec3& P, const Vec3& r0, Wavenumber k, const Vec3& r,
                    const HalfSpace& hs) {
  if (!(r0.z > 0.0)) throw InvalidGeometry("source height must be positive");
  const double tau = hs.tau();
  EMField f = kernels::dipole_fields_at(k.k, r - r0, P);
  f.E = f.E * tau;
  f.B = f.B * tau;
  return f;
}

EMField halfspace_dipole_fields(const CVec3& P, const Vec3& r0, Wavenumber k,
                                const Vec3& r, const HalfSpace& hs,
                                InterfaceSide side) {
  if (r.z > 0.0 || (r.z == 0.0 && side == InterfaceSide::above))
    return field_above(P, r0, k, r, hs);
  return field_below(P, r0, k, r, hs);
}

CVec3 magnetic_dipole_field_halfspace(const CVec3& M, const Vec3& r0, Wavenumber k,
                                      const Vec3& r, const HalfSpace& hs,
                                      InterfaceSide side) {
  // E_m = -B of the electric-dipole decomposition carrying M
  const EMField f = halfspace_dipole_fields(M, r0, k, r, hs, side);
  return -f.B;
}

HalfspaceRingBatches build_halfspace_ring_batches(const RingAperture& ring,
                                                  const HalfSpace& hs,
                                                  int n_override) {
  ring.validate();
  if (!(ring.position.z > 0.0))
    throw InvalidGeometry("ring center must sit above the interface");
  HalfspaceRingBatches b;
  b.segs = ring_segments(ring, n_override);
  b.tau = hs.tau();
  if (hs.beta() != 0.0) b.image_electric = image_batch(b.segs.electric, hs.beta());
  return b;
}

EMField halfspace_ring_eval(const HalfspaceRingBatches& b, Wavenumber k,
                            const Vec3& r, bool above) {
  EMField out = kernels::dipole_sum(k.k, r, b.segs.electric);
  if (above) {
    if (!b.image_electric.empty()) {
      const EMField fi = kernels::dipole_sum(k.k, r, b.image_electric);
      out.E += fi.E;
      out.B += fi.B;
    }
  } else {
    out.E = out.E * b.tau;
    out.B = out.B * b.tau;
  }
  if (!b.segs.magnetic.empty()) {
    // vacuum contribution only
    const EMField m = kernels::dipole_sum(k.k, r, b.segs.magnetic);
    out.E -= m.B;
    out.B += m.E;
  }
  return out;
}

EMField ring_fields_halfspace(const RingAperture& ring, Wavenumber k, const Vec3& r,
                              const HalfSpace& hs, InterfaceSide side,
                              const RingFieldOptions& opts) {
  if (ring_distance(ring, r) < kEpsR)
    throw SingularPoint("field requested on the ring rim");
  const bool above = r.z > 0.0 || (r.z == 0.0 && side == InterfaceSide::above);

  const HalfspaceRingBatches coarse = build_halfspace_ring_batches(ring, hs);
  const EMField f = halfspace_ring_eval(coarse, k, r, above);
  if (opts.check_convergence) {
    const HalfspaceRingBatches fine =
        build_halfspace_ring_batches(ring, hs, 2 * ring.n_segments);
    const EMField g = halfspace_ring_eval(fine, k, r, above);
    const double scale = g.E.norm();
    if (scale > 0.0 && std::abs(f.E.norm() - scale) > opts.rel_tol * scale)
      throw NonConverged("ring quadrature not converged at n_segments=" +
                         std::to_string(ring.n_segments) +
                         "; raise n_segments or keep clear of the rim");
  }
  return f;
}

}  // namespace nsom
