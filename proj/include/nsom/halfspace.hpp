// Image-method fields for sources above a dielectric half-space (substrate at
// z < 0, interface at z = 0).  Valid in the near-field zone, which is the
// regime everything in this project operates in.
#pragma once

#include "nsom/sources.hpp"

namespace nsom {

struct HalfSpace {
  double epsilon = 2.25;  // relative permittivity of the substrate

  double beta() const { return (epsilon - 1.0) / (epsilon + 1.0); }
  double tau() const { return 2.0 / (epsilon + 1.0); }
};

// Which branch to use for points exactly on the interface.  Emitters sit at
// the interface and are detected through the substrate, so the transmitted
// branch is the default.
enum class InterfaceSide { below, above };

struct ImageDipole {
  CVec3 moment;
  Vec3 position;
};

// Combined image rule P_img = beta (2 (P.z) z-hat - P) at the mirrored
// position; reproduces -beta P for horizontal and +beta P_z z-hat for
// vertical dipoles.
ImageDipole image_dipole(const CVec3& P, const Vec3& r0, const HalfSpace& hs);

// Reflected-side field (z >= 0): source dipole plus its image.
EMField field_above(const CVec3& P, const Vec3& r0, Wavenumber k, const Vec3& r,
                    const HalfSpace& hs);

// Transmitted-side field (z <= 0): tau-scaled vacuum field.
EMField field_below(const CVec3& P, const Vec3& r0, Wavenumber k, const Vec3& r,
                    const HalfSpace& hs);

// Branch dispatch on sign(z) with the interface handled per `side`.
EMField halfspace_dipole_fields(const CVec3& P, const Vec3& r0, Wavenumber k,
                                const Vec3& r, const HalfSpace& hs,
                                InterfaceSide side = InterfaceSide::below);

// E of a magnetic point dipole above the substrate: (i/k) curl of the
// assembled Green dyadic acting on M, i.e. the -B kernels of the constituent
// electric-dipole terms with the image rule applied to M.
CVec3 magnetic_dipole_field_halfspace(const CVec3& M, const Vec3& r0, Wavenumber k,
                                      const Vec3& r, const HalfSpace& hs,
                                      InterfaceSide side = InterfaceSide::below);

// Ring source above the substrate: every electric quadrature segment is imaged
// individually; the fictitious magnetic distributions contribute their vacuum
// field only (a mu = 1 substrate does not respond to magnetic near-fields).
EMField ring_fields_halfspace(const RingAperture& ring, Wavenumber k, const Vec3& r,
                              const HalfSpace& hs,
                              InterfaceSide side = InterfaceSide::below,
                              const RingFieldOptions& opts = {});

// Prebuilt quadrature batches for repeated evaluation (scans, maps).
struct HalfspaceRingBatches {
  RingSegments segs;
  kernels::DipoleBatch image_electric;  // mirrored positions, imaged moments
  double tau = 1.0;
};
HalfspaceRingBatches build_halfspace_ring_batches(const RingAperture& ring,
                                                  const HalfSpace& hs,
                                                  int n_override = 0);
EMField halfspace_ring_eval(const HalfspaceRingBatches& b, Wavenumber k,
                            const Vec3& r, bool above);

}  // namespace nsom
