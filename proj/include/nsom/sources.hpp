// Ring-like aperture-tip source: charge/current line densities on the rim,
// periodic-trapezoid quadrature of the radiated field, and the equivalent
// electric/magnetic dipole moments.
#pragma once

#include "nsom/em_core.hpp"
#include "nsom/kernels.hpp"

namespace nsom {

struct RingAperture {
  double radius = 40.0;          // a, nm
  double sigma0 = 1.0;           // line charge density, arbitrary units
  bool include_magnetic = true;  // fictitious magnetic rim distributions on/off
  int n_segments = 360;          // quadrature resolution
  Vec3 position{};               // ring center; the ring lies in a z = const plane

  void validate() const;  // a > 0, n_segments >= 16 and even
};

// Line densities after delta-integration at azimuth phi:
//   eta   = sigma0 cos(phi)            (electric charge / length)
//   j_phi = i (ka) sigma0 sin(phi)     (electric current along phi-hat)
//   gamma = 2 sigma0 sin(phi)          (magnetic charge / length)
//   k_phi = -2i (ka) sigma0 cos(phi)   (magnetic current along phi-hat)
// The frequency enters only as the prefactor w = kc with c folded into units.
struct RingDensities {
  cplx eta, j_phi, gamma, k_phi;
};
RingDensities ring_line_densities(const RingAperture& ring, Wavenumber k, double phi);

// Closed forms: P = sigma0 a^2 pi x-hat; M = 2 z-hat x P when the magnetic
// distributions are enabled, zero otherwise (the electric current alone has
// no net circulation).
CVec3 equivalent_electric_dipole(const RingAperture& ring);
CVec3 equivalent_magnetic_dipole(const RingAperture& ring);

// The rim discretized into elementary dipoles: dP = -a^2 sigma0 sin(phi) phi-hat dphi,
// dM = 2 a^2 sigma0 cos(phi) phi-hat dphi (trapezoid weights, uniform nodes).
struct RingSegments {
  kernels::DipoleBatch electric;
  kernels::DipoleBatch magnetic;  // empty when include_magnetic is off
  int n = 0;
};
RingSegments ring_segments(const RingAperture& ring, int n_override = 0);

struct RingFieldOptions {
  bool check_convergence = true;  // compare against the doubled-node quadrature
  double rel_tol = 1e-8;
};

// Field of prebuilt segments (no convergence or distance checks).
EMField ring_eval(const RingSegments& segs, Wavenumber k, const Vec3& r);

// Distance from r to the rim circle.
double ring_distance(const RingAperture& ring, const Vec3& r);

// E by quadrature of the dyadic kernel over the rim; B assembled from the
// per-segment analytic dipole B kernels.  Magnetic distributions enter through
// the duality substitution.  Throws SingularPoint near the rim and
// NonConverged when node doubling still moves |E| by more than rel_tol.
EMField ring_fields(const RingAperture& ring, Wavenumber k, const Vec3& r,
                    const RingFieldOptions& opts = {});

}  // namespace nsom
